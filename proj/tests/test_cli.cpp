#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "crcalc/cli.hpp"

using crcalc::cli::run_cli;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> v;
  std::istringstream ss(text);
  for (std::string l; std::getline(ss, l);) v.push_back(l);
  return v;
}

std::vector<std::vector<double>> csv_rows(const std::string& csv) {
  std::vector<std::vector<double>> rows;
  const auto ls = lines(csv);
  for (std::size_t k = 2; k < ls.size(); ++k) {
    std::vector<double> row;
    std::istringstream ss(ls[k]);
    for (std::string cell; std::getline(ss, cell, ',');)
      row.push_back(cell == "true" ? 1.0 : cell == "false" ? 0.0 : std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST(Cli, CurvatureFlatIsZero) {
  const CliRun r = run({"curvature", "--phi", "0", "--point", "0,0,0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "0\n");
}

TEST(Cli, CurvatureConstantIsZero) {
  const CliRun r = run({"curvature", "--phi", "0.3", "--point", "1,1,0"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NEAR(std::stod(r.out), 0.0, 1e-10);
}

TEST(Cli, CurvatureOracleAgrees) {
  const CliRun r = run({"curvature", "--phi", "0.1*(x^2+y^2)", "--point", "0.2,0.1,0", "--oracle"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 3u);
  const double R = std::stod(ls[0]);
  ASSERT_EQ(ls[1].rfind("oracle ", 0), 0u);
  ASSERT_EQ(ls[2].rfind("gap ", 0), 0u);
  const double o = std::stod(ls[1].substr(7));
  EXPECT_NEAR(R, o, 1e-6);
  EXPECT_NE(R, 0.0);
}

TEST(Cli, CurvatureWithConformalFactor) {
  const CliRun flat = run({"curvature", "--phi", "0", "--point", "0.1,0.2,0.3", "--w", "1"});
  ASSERT_EQ(flat.code, 0) << flat.err;
  EXPECT_NEAR(std::stod(flat.out), 0.0, 1e-12);
  const CliRun bent = run({"curvature", "--phi", "0", "--point", "0.1,0.2,0.3", "--w", "1 + 0.1*x^2"});
  ASSERT_EQ(bent.code, 0) << bent.err;
  EXPECT_GT(std::abs(std::stod(bent.out)), 1e-6);
}

TEST(Cli, CurvatureErrors) {
  const CliRun syntax = run({"curvature", "--phi", "exp(", "--point", "0,0,0"});
  EXPECT_EQ(syntax.code, 2);
  EXPECT_NE(syntax.err.find("1:5"), std::string::npos) << syntax.err;
  EXPECT_EQ(run({"curvature", "--phi", "2", "--point", "0,0,0"}).code, 1);
  EXPECT_EQ(run({"curvature", "--phi", "0", "--point", "0,0"}).code, 2);
  EXPECT_EQ(run({"curvature", "--point", "0,0,0"}).code, 2);
  EXPECT_EQ(run({"curvature", "--phi", "0", "--point", "0,0,0", "--w", "1", "--oracle"}).code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"glue-study", "--bogus"}).code, 2);
  EXPECT_EQ(run({"glue-study", "--n", "ten"}).code, 2);
  EXPECT_EQ(run({"glue-study", "--n", "10"}).code, 2);
  EXPECT_EQ(run({"glue-study", "--deltas", "0.1,0.2"}).code, 2);
  EXPECT_EQ(run({"glue-study", "--format", "xml"}).code, 2);
  const CliRun help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("yamabe-study"), std::string::npos);
}

TEST(Cli, VerifyListNamesSuites) {
  const CliRun r = run({"verify", "--list"});
  ASSERT_EQ(r.code, 0);
  const auto names = lines(r.out);
  EXPECT_GE(names.size(), 5u);
  for (const char* want : {"structure-equation", "curvature-oracle", "duality", "cutoff-bounds", "commutator"})
    EXPECT_NE(std::find(names.begin(), names.end(), want), names.end()) << want;
}

TEST(Cli, VerifySingleSuiteJson) {
  const CliRun r = run({"verify", "--suite", "conventions", "--suite", "commutator", "--json"});
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_TRUE(j["pass"].get<bool>());
  ASSERT_EQ(j["suites"].size(), 2u);
  for (const auto& s : j["suites"]) {
    EXPECT_TRUE(s["max_residual"].is_number());
    EXPECT_LE(s["max_residual"].get<double>(), s["tolerance"].get<double>());
  }
}

TEST(Cli, VerifyUnknownSuiteFails) { EXPECT_EQ(run({"verify", "--suite", "nope"}).code, 1); }

TEST(Cli, GlueStudyFlatGivesZeroColumns) {
  const CliRun r = run({"glue-study", "--phi", "0", "--grid", "9"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 4u);
  const double deltas[] = {0.4, 0.2, 0.1, 0.05};
  for (std::size_t k = 0; k < rows.size(); ++k) {
    EXPECT_EQ(rows[k][0], deltas[k]);
    for (int c = 1; c < 4; ++c) EXPECT_EQ(rows[k][c], 0.0);
  }
  EXPECT_EQ(lines(r.out)[0], "# schema_version: 1");
  EXPECT_EQ(lines(r.out)[1], "delta,sup_phi_err,sup_v_err,sup_R_err");
}

TEST(Cli, GlueStudyDemoSlope) {
  const CliRun r = run({"glue-study", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["rows"].size(), 4u);
  EXPECT_GE(j["slope"].get<double>(), 0.8);
  EXPECT_TRUE(j["monotone"].get<bool>());
  EXPECT_NE(r.err.find("slope "), std::string::npos);
}

TEST(Cli, GlueStudyNonNormalizedPhiFails) {
  EXPECT_EQ(run({"glue-study", "--phi", "2*x", "--grid", "9"}).code, 1);
}

TEST(Cli, ConfigFileAndOverrides) {
  const std::string cfg = temp_file("crcalc_cfg_ok.json", R"({"phi": "0", "n": 9, "deltas": [0.4, 0.2]})");
  const CliRun r = run({"glue-study", "--config", cfg});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(csv_rows(r.out).size(), 2u);
  const CliRun over = run({"glue-study", "--config", cfg, "--deltas", "0.3"});
  ASSERT_EQ(over.code, 0) << over.err;
  ASSERT_EQ(csv_rows(over.out).size(), 1u);
  EXPECT_EQ(csv_rows(over.out)[0][0], 0.3);
}

TEST(Cli, MalformedConfigNamesTheField) {
  for (const auto& [text, field] : std::vector<std::pair<std::string, std::string>>{
           {R"({"n": "big"})", "'n'"}, {R"({"deltas": [0.1, 0.3]})", "'deltas'"}, {R"({"colour": 1})", "'colour'"},
           {"{ not json", "'<root>'"}}) {
    const CliRun r = run({"glue-study", "--config", temp_file("crcalc_cfg_bad.json", text)});
    EXPECT_EQ(r.code, 2) << text;
    EXPECT_NE(r.err.find(field), std::string::npos) << r.err;
  }
  EXPECT_EQ(run({"glue-study", "--config", "/nonexistent/cfg.json"}).code, 2);
}

TEST(Cli, OutputFile) {
  const auto path = (std::filesystem::temp_directory_path() / "crcalc_glue.json").string();
  std::filesystem::remove(path);
  const CliRun r = run({"glue-study", "--phi", "0", "--grid", "9", "--format", "json", "-o", path});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["report"], "glue-study");
  EXPECT_NE(r.out.find("slope"), std::string::npos);
}

TEST(Cli, YamabeStudyFlatGivesZeroGaps) {
  const CliRun r = run({"yamabe-study", "--phi", "0", "--grid", "9", "--deltas", "0.4,0.2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& row : rows) {
    ASSERT_EQ(row.size(), 12u);
    EXPECT_EQ(row[3], 0.0);
    EXPECT_EQ(row[1], row[2]);
  }
  EXPECT_NE(r.err.find("lambda_base "), std::string::npos);
}

TEST(Cli, YamabeStudyIsDeterministic) {
  const std::vector<std::string> args{"yamabe-study", "--grid", "9", "--deltas", "0.4", "--seed", "7"};
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Cli, YamabeNonConvergenceGuard) {
  const std::vector<std::string> base{"yamabe-study", "--phi", "0", "--grid", "9", "--deltas", "0.4", "--max-iter", "2"};
  const CliRun strict = run(base);
  EXPECT_EQ(strict.code, 1);
  EXPECT_NE(strict.out.find("false"), std::string::npos);
  auto lenient_args = base;
  lenient_args.push_back("--allow-nonconverged");
  EXPECT_EQ(run(lenient_args).code, 0);
}
