#pragma once

#include <set>
#include <stdexcept>
#include <string>

namespace crcalc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A field was evaluated outside its domain (division by zero, |phi| >= 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class PositivityError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class NormalizationError : public Error {
 public:
  using Error::Error;
};

class ZeroDenominator : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error("config field '" + field + "': " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(int line, int column, std::set<std::string> expected, const std::string& what)
      : Error(format(line, column, expected, what)),
        line_(line),
        column_(column),
        expected_(std::move(expected)) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::set<std::string>& expected() const { return expected_; }

 private:
  static std::string format(int line, int column, const std::set<std::string>& expected,
                            const std::string& what) {
    std::string s = "syntax error at " + std::to_string(line) + ":" + std::to_string(column) +
                    ": " + what;
    if (!expected.empty()) {
      s += " (expected ";
      bool first = true;
      for (const auto& e : expected) {
        if (!first) s += ", ";
        s += e;
        first = false;
      }
      s += ")";
    }
    return s;
  }

  int line_;
  int column_;
  std::set<std::string> expected_;
};

}  // namespace crcalc
