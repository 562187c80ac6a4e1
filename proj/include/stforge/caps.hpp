#pragma once

#include "stforge/int128.hpp"

namespace stforge {

// Size caps, all in one place. Fast paths fall back or reject with a
// validation error when exceeded; oracle callers use the oracle caps when
// materializing inputs.

// Max cells across one family's prefix grids before the richness kernel falls
// back to per-line iteration.
constexpr Int kCellBudget = Int(1) << 26;

// Max materialized integer keys for pair scans (energy, projection).
constexpr Int kPairKeyCap = Int(1) << 25;

// Max materialized points for brute-force per-point scans.
constexpr Int kOraclePointCap = Int(1) << 21;

// Max |A|*|B| for the quadruple-scan energy reference.
constexpr Int kOracleQuadrupleCap = 10000;

} // namespace stforge
