#pragma once

// Umbrella header: exact engine for the conformal algebra generated by x,
// its bimodules, the degree-2 cochain complex, and cocycle splitting.

#include "cendalg/bimodule.hpp"
#include "cendalg/cend1x.hpp"
#include "cendalg/cochain.hpp"
#include "cendalg/dpoly.hpp"
#include "cendalg/errors.hpp"
#include "cendalg/extension.hpp"
#include "cendalg/formal_sum.hpp"
#include "cendalg/fuzz.hpp"
#include "cendalg/linalg.hpp"
#include "cendalg/rational.hpp"
#include "cendalg/serialization.hpp"
#include "cendalg/splitter.hpp"
