#pragma once

// Umbrella header for the dependency-free part of the library. The report and
// config headers additionally need nlohmann/json on the include path.

#include "crcalc/corpus.hpp"
#include "crcalc/cutoff.hpp"
#include "crcalc/errors.hpp"
#include "crcalc/fd_oracle.hpp"
#include "crcalc/field.hpp"
#include "crcalc/forms.hpp"
#include "crcalc/gluing.hpp"
#include "crcalc/grid.hpp"
#include "crcalc/hgroup.hpp"
#include "crcalc/parse.hpp"
#include "crcalc/phcalc.hpp"
#include "crcalc/printer.hpp"
#include "crcalc/series.hpp"
#include "crcalc/verify.hpp"
#include "crcalc/yamabe.hpp"
