#pragma once

#include <utility>
#include <vector>

#include "stforge/construction.hpp"
#include "stforge/rational.hpp"

namespace stforge {

/**
 * Per-line point counts over P = A x A and their summary. `target` is the
 * nominal richness N/M. `per_line` is filled only when the line count is at
 * most the cap passed to richness_report (reports on large sets keep the
 * histogram and aggregates only).
 */
struct RichnessReport {
    Int n_lines = 0;
    Int r_min = 0;
    Int r_max = 0;
    Rat mean{0, 1};
    Rat target{0, 1};
    Int total = 0; // sum of all counts = I(P, L)
    std::vector<std::pair<Int, Int>> histogram; // (richness, line count), ascending
    std::vector<std::pair<Line, Int>> per_line;
};

struct SharpnessReport {
    Int n_points = 0;
    Int r = 0; // observed minimum richness; every line is r-rich
    Int n_rich_lines = 0;
    Rat st_bound_value{0, 1};
    Rat ratio{0, 1}; // n_rich_lines / st_bound_value
};

/** |{x in A : slope*x + intercept in A}| by direct iteration over A. */
Int line_richness(const CoordSet& A, const Line& line);

/**
 * Richness of every line in the set. Fast path: per slope family, points of A
 * are bucketed by the residue class of (u(x), v(x)) mod d and counted through
 * a 2-D prefix-sum grid, making each line an O(1) rectangle query; families
 * whose grids would exceed the internal cell budget fall back to per-line
 * iteration. per_line_cap bounds the materialized per-line list.
 */
RichnessReport richness_report(const GridParams& params, const LineSet& lines, Int m_scale,
                               Int per_line_cap = 1 << 17);

/** Serial reference: line_richness per line, no bucketing. */
RichnessReport richness_report_reference(const GridParams& params, const std::vector<Line>& lines,
                                         Int m_scale);

/** n^2/r^3 + n/r, exact. */
Rat st_bound(Int n, Int r);

/** Rich-line count vs. the bound at the observed minimum richness. */
SharpnessReport sharpness_report(const GridParams& params, const LineSet& lines);

/** Sum of line_richness over the set; equals richness_report(...).total. */
Int total_incidences(const GridParams& params, const LineSet& lines);

/**
 * Sum over v of r(v)^2 where r(v) = |{(a,b) in A^2 : a + slope*b = v}|, i.e.
 * the sum of squared point counts across the full-anchor line family of this
 * slope. Computed with integer keys over the slope's denominator; used as the
 * incidence-side half of the energy identity.
 */
Int slope_incidence_square_sum(const GridParams& params, const QkNum& slope);

} // namespace stforge
