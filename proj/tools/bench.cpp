// Times the parallel richness pipeline against the serial per-line reference
// on the same instance and checks that they agree.
#include <chrono>
#include <iostream>
#include <string>

#include "stforge/construction.hpp"
#include "stforge/incidence.hpp"

using namespace stforge;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    try {
        Int side = argc > 1 ? int_from_string(argv[1]) : 8;
        Int m_scale = argc > 2 ? int_from_string(argv[2]) : 4;
        RingContext ctx(2);
        GridParams grid = make_grid_params_from_side(ctx, side);
        SlopeParams sp = make_slope_params(m_scale, Rat{1, 2});
        std::vector<Slope> slopes = gen_slopes(sp, ctx);

        auto t0 = std::chrono::steady_clock::now();
        LineSet ls = gen_lines(grid, slopes);
        RichnessReport fast = richness_report(grid, ls, sp.m_scale, 0);
        double fast_s = seconds_since(t0);

        t0 = std::chrono::steady_clock::now();
        std::vector<Line> all = gen_lines_reference(grid, slopes);
        RichnessReport ref = richness_report_reference(grid, all, sp.m_scale);
        double ref_s = seconds_since(t0);

        bool ok = fast.n_lines == ref.n_lines && fast.r_min == ref.r_min &&
                  fast.r_max == ref.r_max && fast.total == ref.total;
        std::cout << "side=" << int_to_string(side) << " M=" << int_to_string(m_scale)
                  << " lines=" << int_to_string(fast.n_lines)
                  << " total_incidences=" << int_to_string(fast.total) << "\n";
        std::cout << "kernel:    " << fast_s << " s\n";
        std::cout << "reference: " << ref_s << " s\n";
        std::cout << "speedup:   " << (fast_s > 0 ? ref_s / fast_s : 0.0) << "x\n";
        std::cout << "agreement: " << (ok ? "yes" : "NO") << "\n";
        return ok ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
