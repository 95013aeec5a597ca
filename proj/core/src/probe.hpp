#pragma once

#include "canonical.hpp"
#include "zsym/symbols.hpp"

#include <random>

namespace zsym::detail {

/// One admissible random point: magnitudes in [0.5, 3.0], signs respecting
/// the table's domain assumptions. Deterministic in the rng state.
EvalPoint draw_point(const SymbolTable& symbols, std::mt19937_64& rng);

}  // namespace zsym::detail
