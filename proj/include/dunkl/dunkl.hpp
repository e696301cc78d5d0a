#pragma once

/// Umbrella header for the dunkl library: Dunkl exponential kernel,
/// two-variable Dunkl-Hermite polynomials, the positive linear operators
/// built from them, and the approximation-error analysis toolkit.

#include "dunkl/core.hpp"
#include "dunkl/hermite.hpp"
#include "dunkl/operators.hpp"
#include "dunkl/analysis.hpp"
#include "dunkl/corpus.hpp"
