#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "stforge/qk.hpp"
#include "stforge/rational.hpp"
#include "stforge/zk.hpp"

namespace stforge {

// ---------------------------------------------------------------------------
// Grid / coordinate set
// ---------------------------------------------------------------------------

/**
 * Scale parameters for the coordinate grid. The coordinate set is
 * A = { x1 + x2*sqrt(k) : x1, x2 integers in [-side, side) }, so |A| = 4*side^2.
 */
struct GridParams {
    RingContext ctx;
    Int n_scale = 1; // N; side = floor(sqrt(N))
    Int side = 1;    // s
};

GridParams make_grid_params(const RingContext& ctx, Int n_scale);
GridParams make_grid_params_from_side(const RingContext& ctx, Int side);

/** The coordinate set A, sorted ascending by real value. */
struct CoordSet {
    GridParams params;
    std::vector<ZkInt> elems;

    // Unique representation makes membership a component range check.
    bool contains(const ZkInt& x) const {
        Int s = params.side;
        return x.a >= -s && x.a < s && x.b >= -s && x.b < s;
    }
};

CoordSet gen_A(const GridParams& params);

/** The point set P = A x A; 16*side^4 points, iterated rather than stored. */
struct PointSet {
    CoordSet coords;
    Int size = 0;

    bool contains(const ZkInt& x, const ZkInt& y) const {
        return coords.contains(x) && coords.contains(y);
    }

    template <class F>
    void for_each(F&& f) const {
        for (const ZkInt& x : coords.elems)
            for (const ZkInt& y : coords.elems) f(x, y);
    }

    std::vector<std::pair<ZkInt, ZkInt>> materialize(Int cap) const;
};

PointSet gen_points(const GridParams& params);

// ---------------------------------------------------------------------------
// Slope set
// ---------------------------------------------------------------------------

/**
 * Parameters of the slope set: ratios (p1 + p2*sqrt(k)) / (q1 + q2*sqrt(k))
 * with |p_i|, |q_i| in {band_lo, ..., t}, t = floor(sqrt(M)),
 * band_lo = ceil(c*t), filtered by gcd(|norm p|, |norm q|) <= gcd_cap and
 * gcd(|p1|, |p2|) <= gcd_cap.
 */
struct SlopeParams {
    Int m_scale = 1;   // M
    Rat c{1, 2};       // lower cutoff, 0 < c < 1
    Int t = 1;         // floor(sqrt(M))
    Int band_lo = 1;   // ceil(c*t)
    Int gcd_cap = 5;
};

SlopeParams make_slope_params(Int m_scale, const Rat& c, Int gcd_cap = 5);

struct Slope {
    QkNum value;                     // canonical
    std::array<int64_t, 4> witness;  // (p1, p2, q1, q2), one representative
};

/** Filter predicate applied to a raw quadruple (magnitude band + both gcd caps). */
bool slope_filter_accepts(const RingContext& ctx, const SlopeParams& sp,
                          Int p1, Int p2, Int q1, Int q2);

/** All slopes passing the filters, deduplicated by canonical value, sorted ascending. */
std::vector<Slope> gen_slopes(const SlopeParams& sp, const RingContext& ctx);

// ---------------------------------------------------------------------------
// Line set
// ---------------------------------------------------------------------------

/** y = slope*x + intercept, both canonical; equal records <=> equal loci. */
struct Line {
    QkNum slope;
    QkNum intercept;

    friend bool operator==(const Line&, const Line&) = default;
};

Line make_line(const RingContext& ctx, const QkNum& slope, const ZkInt& a, const ZkInt& b);

/**
 * Compressed per-slope line family. With slope = (p + q*sqrt(k)) / d in
 * canonical form and u(x) = p*x1 + k*q*x2, v(x) = q*x1 + p*x2, the intercept
 * of the line anchored at (a, b) is ((d*b1 - u(a)) + (d*b2 - v(a))*sqrt(k)) / d.
 * Anchors are grouped by the residue class (u(a) mod d, v(a) mod d); inside a
 * class the intercept keys form a union of translated 2s' x 2s' boxes in the
 * index plane (i, j), where the key is (X, Y) = (d*i - cu, d*j - cv).
 */
struct TauClass {
    Int cu = 0, cv = 0;                       // residues in [0, d)
    std::vector<std::pair<Int, Int>> offsets; // distinct (floor(u/d), floor(v/d)), sorted
    Int line_count = 0;                       // |union of boxes|
};

struct LineFamily {
    QkNum slope;
    Int coef_p = 0, coef_q = 0, denom = 1; // slope = (coef_p + coef_q*sqrt(k)) / denom
    std::vector<TauClass> classes;         // sorted by (cu, cv)
    Int line_count = 0;
};

struct LineSet {
    GridParams grid;      // full grid (side s); anchors use side floor(s/2)
    Int anchor_side = 0;
    std::vector<LineFamily> families;
    Int raw_pair_count = 0; // |A'|^2 * |S| before dedup
    Int line_count = 0;     // deduplicated
};

/** One slope's compressed family over anchor coordinates of the given side. */
LineFamily gen_line_family(const RingContext& ctx, const QkNum& slope, Int anchor_side);

/** Deduplicated line set over anchors A_{N/4}^2 and the given slopes. */
LineSet gen_lines(const GridParams& params, const std::vector<Slope>& slopes);

/**
 * Serial reference: materializes every (slope, intercept) pair by exact field
 * arithmetic and deduplicates by canonical value. Small instances only.
 */
std::vector<Line> gen_lines_reference(const GridParams& params, const std::vector<Slope>& slopes);

Line line_from_key(const RingContext& ctx, const LineFamily& fam, Int x_key, Int y_key);

/**
 * Sweep over one class's union of boxes, cut into maximal i-segments on which
 * the union of j-intervals is constant. Each offset (du, dv) contributes the
 * box i in [-s'-du, s'-du-1], j in [-s'-dv, s'-dv-1]. Offsets are sorted
 * ascending by (du, dv), so walking them from the back yields ascending
 * segment starts i = -s'-du and, in the same stride, ascending box ends;
 * the open boxes are always a contiguous reverse range (enter..exit-1].
 *
 * Calls f(i_lo, i_hi, runs) with i_lo <= i_hi and runs the merged, disjoint,
 * ascending j-intervals (inclusive). Segments arrive in ascending i order.
 */
template <class F>
void sweep_box_union(const TauClass& tc, Int anchor_side, F&& f) {
    const Int sp = anchor_side;
    const auto& offs = tc.offsets;
    const size_t n = offs.size();
    if (n == 0 || sp <= 0) return;
    size_t enter = n, exit = n;  // reverse cursors; open boxes are [enter, exit)
    std::multiset<Int> active;   // dv values of open boxes
    std::vector<std::pair<Int, Int>> runs;
    Int i_cur = 0;
    while (enter > 0 || enter < exit) {
        if (enter == exit) i_cur = -sp - offs[enter - 1].first; // jump over a gap
        while (enter > 0 && -sp - offs[enter - 1].first == i_cur)
            active.insert(offs[--enter].second);
        // Oldest open box (largest du) closes first: end = s' - du - 1.
        Int next_close = sp - offs[exit - 1].first;
        Int seg_end = next_close - 1;
        if (enter > 0) {
            Int next_start = -sp - offs[enter - 1].first;
            if (next_start - 1 < seg_end) seg_end = next_start - 1;
        }
        // Merge j-intervals; reverse multiset order gives ascending starts.
        runs.clear();
        Int run_lo = 0, run_hi = 0;
        bool open = false;
        for (auto it = active.rbegin(); it != active.rend(); ++it) {
            Int lo = -sp - *it;
            if (!open) {
                run_lo = lo;
                run_hi = lo + 2 * sp - 1;
                open = true;
            } else if (lo <= run_hi + 1) {
                Int hi = lo + 2 * sp - 1;
                if (hi > run_hi) run_hi = hi;
            } else {
                runs.emplace_back(run_lo, run_hi);
                run_lo = lo;
                run_hi = lo + 2 * sp - 1;
            }
        }
        if (open) runs.emplace_back(run_lo, run_hi);
        f(i_cur, seg_end, runs);
        while (exit > enter && sp - offs[exit - 1].first - 1 == seg_end)
            active.erase(active.find(offs[--exit].second));
        i_cur = seg_end + 1;
    }
}

/**
 * Visits every line of the family exactly once, in canonical order: classes by
 * (cu, cv), then i ascending, then j ascending. Calls f(tc, i, j); the
 * intercept key is (X, Y) = (d*i - tc.cu, d*j - tc.cv).
 */
template <class F>
void for_each_line_key(const LineFamily& fam, Int anchor_side, F&& f) {
    for (const TauClass& tc : fam.classes)
        sweep_box_union(tc, anchor_side,
                        [&](Int i_lo, Int i_hi, const std::vector<std::pair<Int, Int>>& runs) {
                            for (Int i = i_lo; i <= i_hi; ++i)
                                for (const auto& [lo, hi] : runs)
                                    for (Int j = lo; j <= hi; ++j) f(tc, i, j);
                        });
}

/** Deterministic sample: every ceil(|L|/target)-th line in canonical order. */
std::vector<Line> sample_lines(const LineSet& lines, Int target_count);

} // namespace stforge
