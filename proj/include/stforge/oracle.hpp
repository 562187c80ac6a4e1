#pragma once

#include <utility>
#include <vector>

#include "stforge/construction.hpp"

namespace stforge {

/**
 * Brute-force references. These share only the exact arithmetic layer with
 * the fast paths — no generation, bucketing, or dedup logic — so agreement is
 * meaningful evidence. All are single-threaded and size-capped (see caps.hpp).
 */

/** Count of listed points on the line, by per-point exact evaluation. */
Int brute_richness(const RingContext& ctx, const Line& line,
                   const std::vector<std::pair<ZkInt, ZkInt>>& points);

/**
 * The slope set by raw enumeration, deduplicated by pairwise
 * cross-multiplication (no canonical forms), sorted ascending.
 */
std::vector<QkNum> brute_slope_set(const SlopeParams& sp, const RingContext& ctx);

/** E+(A,B) by the four-loop quadruple scan; requires |A|*|B| within cap. */
Int brute_energy(const std::vector<ZkInt>& A, const std::vector<ZkInt>& B);

/** Distinct y - slope*x by sorting canonical values and counting runs. */
Int brute_projection(const RingContext& ctx, const std::vector<std::pair<ZkInt, ZkInt>>& points,
                     const QkNum& slope);

} // namespace stforge
