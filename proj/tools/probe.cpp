// Prints the observed constants behind the bands pinned in the test suite:
// slope-count ratios, richness extremes and growth, sharpness ratios,
// per-slope projection sizes, and energy totals.
#include <iostream>
#include <vector>

#include "stforge/applications.hpp"
#include "stforge/construction.hpp"
#include "stforge/incidence.hpp"

using namespace stforge;

namespace {

std::string rs(const Rat& r) { return rat_to_string(r); }
std::string is(Int v) { return int_to_string(v); }

} // namespace

int main() {
    try {
        RingContext ctx(2);
        const Rat half{1, 2};

        std::cout << "== slope-count scaling (k=2, c=1/2) ==\n";
        for (Int m : {Int(16), Int(36), Int(64), Int(100)}) {
            SlopeParams sp = make_slope_params(m, half);
            auto slopes = gen_slopes(sp, ctx);
            Int count = static_cast<Int>(slopes.size());
            std::cout << "M=" << is(m) << " |S|=" << is(count)
                      << " |S|/M^2=" << rs(rat_make(count, checked_mul(m, m))) << "\n";
        }

        std::cout << "== richness and sharpness (k=2, M=4, c=1/2) ==\n";
        SlopeParams sp4 = make_slope_params(4, half);
        auto slopes4 = gen_slopes(sp4, ctx);
        Rat prev_mean{0, 1};
        for (Int s : {Int(16), Int(32), Int(64)}) {
            GridParams grid = make_grid_params_from_side(ctx, s);
            LineSet ls = gen_lines(grid, slopes4);
            RichnessReport rich = richness_report(grid, ls, sp4.m_scale, 0);
            SharpnessReport sharp = sharpness_report(grid, ls);
            std::cout << "s=" << is(s) << " |L|=" << is(ls.line_count) << " r_min="
                      << is(rich.r_min) << " r_max=" << is(rich.r_max)
                      << " rmax/rmin=" << rs(rat_make(rich.r_max, rich.r_min))
                      << " mean=" << rs(rich.mean) << " ratio=" << rs(sharp.ratio) << "\n";
            if (prev_mean.num != 0)
                std::cout << "  mean growth vs previous s: "
                          << rs(rat_div(rich.mean, prev_mean)) << "\n";
            prev_mean = rich.mean;
        }

        std::cout << "== projection sizes per slope (k=2, s=8, M=4, c=1/2) ==\n";
        GridParams grid8 = make_grid_params_from_side(ctx, 8);
        Int pmin = -1, pmax = -1;
        for (const Slope& sl : slopes4) {
            ProjectionReport r = project(grid8, sl.value, static_cast<Int>(slopes4.size()));
            if (pmin < 0 || r.n_classes < pmin) pmin = r.n_classes;
            if (r.n_classes > pmax) pmax = r.n_classes;
        }
        std::cout << "n_classes min=" << is(pmin) << " max=" << is(pmax)
                  << " max/min=" << rs(rat_make(pmax, pmin)) << "\n";

        std::cout << "== energy totals (k=2, M=4, c=1/2) ==\n";
        for (Int s : {Int(4), Int(8)}) {
            GridParams grid = make_grid_params_from_side(ctx, s);
            EnergyReport rep = energy_sum(grid, slopes4);
            std::cout << "s=" << is(s) << " total=" << is(rep.total) << " bracket=["
                      << is(rep.reference_lo) << ", " << is(rep.reference_hi) << "]\n";
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
