#pragma once

#include <utility>
#include <vector>

#include "stforge/construction.hpp"

namespace stforge {

/**
 * Distinct values of y - slope*x over P = A x A. The reference magnitude
 * sqrt(p)*n (p slopes, n = |A| coordinates) is irrational in general, so it
 * is carried as the exact integer bracket
 * n*floor(sqrt(p)) <= sqrt(p)*n <= n*(floor(sqrt(p))+1); the bracket is
 * filled only when the caller supplies the slope count.
 */
struct ProjectionReport {
    QkNum slope;
    Int n_classes = 0;
    Int expected_lo = 0;
    Int expected_hi = 0;
};

/**
 * Projection class count for one slope. n_slopes > 0 fills the expected
 * bracket with that slope-set size.
 */
ProjectionReport project(const GridParams& params, const QkNum& slope, Int n_slopes = 0);

/** |{ q*y - p*x : x, y in {0,...,n-1} }| by exact enumeration. */
Int lattice_projection_size(Int n, Int p, Int q);

/**
 * Additive energy E+(A,B): number of quadruples (a1,b1,a2,b2) with
 * a1 + b1 = a2 + b2, computed as sum of squared multiplicities of the exact
 * ring sums.
 */
Int additive_energy(const std::vector<ZkInt>& A, const std::vector<ZkInt>& B);

/**
 * Per-slope energies E+(A, x*A) over canonical field keys, their total, and
 * the reference magnitude |A|^3 * sqrt(|X|) as an exact integer bracket.
 */
struct EnergyReport {
    std::vector<std::pair<QkNum, Int>> per_slope;
    Int total = 0;
    Int reference_lo = 0;
    Int reference_hi = 0;
};

EnergyReport energy_sum(const GridParams& params, const std::vector<Slope>& slopes);

} // namespace stforge
