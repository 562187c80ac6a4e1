#include "stforge/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#ifdef _OPENMP
#include <omp.h>
#endif

#include "stforge/applications.hpp"
#include "stforge/caps.hpp"
#include "stforge/errors.hpp"
#include "stforge/incidence.hpp"
#include "stforge/oracle.hpp"

namespace stforge {

namespace {

using ojson = nlohmann::ordered_json;

// Largest line set materialized into generate output.
constexpr Int kLineDumpCap = Int(1) << 17;

std::string S(Int v) { return int_to_string(v); }

ojson j_zk(const ZkInt& x) { return ojson{{"a", S(x.a)}, {"b", S(x.b)}}; }

ojson j_qk(const QkNum& x) { return ojson{{"a", S(x.u.a)}, {"b", S(x.u.b)}, {"d", S(x.d)}}; }

ojson j_params(const RunConfig& cfg, const GridParams& grid, const SlopeParams& sp) {
    return ojson{{"k", S(cfg.k)},          {"N", S(grid.n_scale)}, {"side", S(grid.side)},
                 {"M", S(sp.m_scale)},     {"c", rat_to_string(cfg.c)},
                 {"gcd_cap", S(sp.gcd_cap)}, {"t", S(sp.t)},       {"band_lo", S(sp.band_lo)}};
}

void emit(std::ostream& out, const ojson& doc) { out << doc.dump(2) << "\n"; }

std::vector<Line> materialize_sorted(const LineSet& ls) {
    const RingContext ctx = ls.grid.ctx;
    std::vector<Line> lines;
    lines.reserve(static_cast<size_t>(narrow_i64(ls.line_count)));
    for (const LineFamily& fam : ls.families) {
        size_t start = lines.size();
        for_each_line_key(fam, ls.anchor_side, [&](const TauClass& tc, Int i, Int j) {
            lines.push_back(line_from_key(ctx, fam,
                                          checked_sub(checked_mul(fam.denom, i), tc.cu),
                                          checked_sub(checked_mul(fam.denom, j), tc.cv)));
        });
        std::sort(lines.begin() + static_cast<ptrdiff_t>(start), lines.end(),
                  [&](const Line& a, const Line& b) {
                      return qk_cmp(ctx, a.intercept, b.intercept) < 0;
                  });
    }
    return lines;
}

} // namespace

GridParams resolve_grid(const RunConfig& cfg) {
    if (cfg.side && cfg.n_scale)
        throw validation_error("pass exactly one of --side and --N, not both");
    RingContext ctx(cfg.k);
    if (cfg.side) return make_grid_params_from_side(ctx, *cfg.side);
    if (cfg.n_scale) return make_grid_params(ctx, *cfg.n_scale);
    throw validation_error("one of --side or --N is required");
}

SlopeParams resolve_slopes(const RunConfig& cfg, const GridParams& grid) {
    if (cfg.m_scale && cfg.r_div)
        throw validation_error("pass exactly one of --M and --r, not both");
    Int m;
    if (cfg.m_scale) {
        m = *cfg.m_scale;
    } else if (cfg.r_div) {
        if (*cfg.r_div < 1) throw validation_error("r must be >= 1");
        m = grid.n_scale / *cfg.r_div;
        if (m < 1) throw validation_error("r exceeds N; the derived M would be zero");
    } else {
        throw validation_error("one of --M or --r is required");
    }
    if (m > grid.n_scale)
        throw validation_error("M must be <= N so the richness target N/M is at least 1");
    SlopeParams sp = make_slope_params(m, cfg.c, cfg.gcd_cap);
    // Near-degenerate band: fewer than one integer between c*t and t.
    if (checked_mul(checked_sub(sp.c.den, sp.c.num), sp.t) < sp.c.den)
        std::cerr << "warning: magnitude band [" << S(sp.band_lo) << ", " << S(sp.t)
                  << "] has width < 1; consider a smaller c or larger M\n";
    return sp;
}

void cmd_generate(const RunConfig& cfg, std::ostream& out) {
    GridParams grid = resolve_grid(cfg);
    SlopeParams sp = resolve_slopes(cfg, grid);
    CoordSet A = gen_A(grid);
    std::vector<Slope> slopes = gen_slopes(sp, grid.ctx);
    LineSet ls = gen_lines(grid, slopes);
    bool dump_lines = ls.line_count <= kLineDumpCap;
    std::vector<Line> lines;
    if (dump_lines) lines = materialize_sorted(ls);

    if (cfg.format == "csv") {
        out << "# schema=st-forge-generate-v1\n";
        out << "# section=A\na,b\n";
        for (const ZkInt& e : A.elems) out << S(e.a) << "," << S(e.b) << "\n";
        out << "# section=S\nvalue_a,value_b,value_d,p1,p2,q1,q2\n";
        for (const Slope& sl : slopes) {
            out << S(sl.value.u.a) << "," << S(sl.value.u.b) << "," << S(sl.value.d);
            for (int64_t w : sl.witness) out << "," << S(w);
            out << "\n";
        }
        out << "# raw_pairs=" << S(ls.raw_pair_count) << "\n";
        out << "# card_L=" << S(ls.line_count) << "\n";
        out << "# section=L" << (dump_lines ? "" : " (omitted: over dump cap)") << "\n";
        out << "slope_a,slope_b,slope_d,tau_a,tau_b,tau_d\n";
        for (const Line& ln : lines)
            out << S(ln.slope.u.a) << "," << S(ln.slope.u.b) << "," << S(ln.slope.d) << ","
                << S(ln.intercept.u.a) << "," << S(ln.intercept.u.b) << "," << S(ln.intercept.d)
                << "\n";
        return;
    }

    ojson doc;
    doc["schema_version"] = "st-forge-generate-v1";
    doc["params"] = j_params(cfg, grid, sp);
    ojson ja = ojson::array();
    for (const ZkInt& e : A.elems) ja.push_back(j_zk(e));
    doc["A"] = ojson{{"count", S(static_cast<Int>(A.elems.size()))}, {"elems", std::move(ja)}};
    ojson js = ojson::array();
    for (const Slope& sl : slopes) {
        ojson w = ojson::array();
        for (int64_t v : sl.witness) w.push_back(S(v));
        js.push_back(ojson{{"value", j_qk(sl.value)}, {"witness", std::move(w)}});
    }
    doc["S"] = ojson{{"count", S(static_cast<Int>(slopes.size()))}, {"slopes", std::move(js)}};
    ojson jl = ojson::array();
    for (const Line& ln : lines)
        jl.push_back(ojson{{"slope", j_qk(ln.slope)}, {"tau", j_qk(ln.intercept)}});
    doc["L"] = ojson{{"count", S(ls.line_count)},
                     {"raw_pairs", S(ls.raw_pair_count)},
                     {"lines_included", dump_lines},
                     {"lines", std::move(jl)}};
    emit(out, doc);
}

void cmd_verify(const RunConfig& cfg, std::ostream& out) {
    GridParams grid = resolve_grid(cfg);
    SlopeParams sp = resolve_slopes(cfg, grid);
    std::vector<Slope> slopes = gen_slopes(sp, grid.ctx);
    LineSet ls = gen_lines(grid, slopes);
    RichnessReport rich = richness_report(grid, ls, sp.m_scale, 0);
    SharpnessReport sharp = sharpness_report(grid, ls);

    bool oracle_agreement = true;
    Int oracle_samples = 0;
    if (cfg.oracle) {
        auto points = gen_points(grid).materialize(kOraclePointCap);
        CoordSet A = gen_A(grid);
        for (const Line& ln : sample_lines(ls, 64)) {
            if (line_richness(A, ln) != brute_richness(grid.ctx, ln, points))
                oracle_agreement = false;
            ++oracle_samples;
        }
    }

    if (cfg.format == "csv") {
        out << "# schema=st-forge-verify-v1\nkey,value\n";
        out << "k," << S(cfg.k) << "\n";
        out << "N," << S(grid.n_scale) << "\n";
        out << "side," << S(grid.side) << "\n";
        out << "M," << S(sp.m_scale) << "\n";
        out << "c," << rat_to_string(cfg.c) << "\n";
        out << "card_A," << S(checked_mul(4, checked_mul(grid.side, grid.side))) << "\n";
        out << "card_P," << S(sharp.n_points) << "\n";
        out << "card_S," << S(static_cast<Int>(slopes.size())) << "\n";
        out << "pairs_raw," << S(ls.raw_pair_count) << "\n";
        out << "card_L," << S(ls.line_count) << "\n";
        out << "r_min," << S(rich.r_min) << "\n";
        out << "r_max," << S(rich.r_max) << "\n";
        out << "mean_richness," << rat_to_string(rich.mean) << "\n";
        out << "target_richness," << rat_to_string(rich.target) << "\n";
        out << "total_incidences," << S(rich.total) << "\n";
        out << "st_bound," << rat_to_string(sharp.st_bound_value) << "\n";
        out << "ratio," << rat_to_string(sharp.ratio) << "\n";
        if (cfg.oracle) {
            out << "oracle_samples," << S(oracle_samples) << "\n";
            out << "oracle_agreement," << (oracle_agreement ? "true" : "false") << "\n";
        }
        return;
    }

    ojson doc;
    doc["schema_version"] = "st-forge-verify-v1";
    doc["params"] = j_params(cfg, grid, sp);
    doc["cardinalities"] =
        ojson{{"card_A", S(checked_mul(4, checked_mul(grid.side, grid.side)))},
              {"card_P", S(sharp.n_points)},
              {"card_S", S(static_cast<Int>(slopes.size()))},
              {"pairs_raw", S(ls.raw_pair_count)},
              {"card_L", S(ls.line_count)}};
    doc["richness"] = ojson{{"r_min", S(rich.r_min)},
                            {"r_max", S(rich.r_max)},
                            {"mean", rat_to_string(rich.mean)},
                            {"target", rat_to_string(rich.target)},
                            {"total_incidences", S(rich.total)}};
    doc["sharpness"] = ojson{{"n_points", S(sharp.n_points)},
                             {"r", S(sharp.r)},
                             {"n_rich_lines", S(sharp.n_rich_lines)},
                             {"st_bound", rat_to_string(sharp.st_bound_value)},
                             {"ratio", rat_to_string(sharp.ratio)}};
    if (cfg.oracle) {
        doc["oracle_samples"] = S(oracle_samples);
        doc["oracle_agreement"] = oracle_agreement;
    }
    emit(out, doc);
}

void cmd_sweep(const RunConfig& cfg, std::ostream& out) {
    if (cfg.sweep_sides.empty()) throw validation_error("sweep needs at least one --side value");
    if (cfg.sweep_ms.empty()) throw validation_error("sweep needs at least one --M value");
    RingContext ctx(cfg.k);

    struct Row {
        Int s, n_eff, m;
        Int card_a, card_s, pairs_raw, card_l, r_min, r_max;
        Rat mean, bound, ratio;
    };
    std::vector<Row> rows;
    for (Int side : cfg.sweep_sides) {
        GridParams grid = make_grid_params_from_side(ctx, side);
        for (Int m : cfg.sweep_ms) {
            RunConfig sub = cfg;
            sub.side = side;
            sub.n_scale.reset();
            sub.m_scale = m;
            sub.r_div.reset();
            SlopeParams sp = resolve_slopes(sub, grid);
            std::vector<Slope> slopes = gen_slopes(sp, ctx);
            LineSet ls = gen_lines(grid, slopes);
            RichnessReport rich = richness_report(grid, ls, sp.m_scale, 0);
            SharpnessReport sharp = sharpness_report(grid, ls);
            rows.push_back({side, grid.n_scale, m,
                            checked_mul(4, checked_mul(side, side)),
                            static_cast<Int>(slopes.size()), ls.raw_pair_count, ls.line_count,
                            rich.r_min, rich.r_max, rich.mean, sharp.st_bound_value,
                            sharp.ratio});
        }
    }

    if (cfg.format == "csv") {
        out << "# schema=st-forge-sweep-v1\n";
        out << "k,s,N_eff,M,c,card_A,card_S,pairs_raw,card_L,r_min,r_max,"
               "mean_richness_num,mean_richness_den,st_bound_num,st_bound_den,"
               "ratio_num,ratio_den\n";
        for (const Row& r : rows)
            out << S(cfg.k) << "," << S(r.s) << "," << S(r.n_eff) << "," << S(r.m) << ","
                << rat_to_string(cfg.c) << "," << S(r.card_a) << "," << S(r.card_s) << ","
                << S(r.pairs_raw) << "," << S(r.card_l) << "," << S(r.r_min) << ","
                << S(r.r_max) << "," << S(r.mean.num) << "," << S(r.mean.den) << ","
                << S(r.bound.num) << "," << S(r.bound.den) << "," << S(r.ratio.num) << ","
                << S(r.ratio.den) << "\n";
        return;
    }

    ojson doc;
    doc["schema_version"] = "st-forge-sweep-v1";
    ojson ja = ojson::array();
    for (const Row& r : rows)
        ja.push_back(ojson{{"k", S(cfg.k)},
                           {"s", S(r.s)},
                           {"N_eff", S(r.n_eff)},
                           {"M", S(r.m)},
                           {"c", rat_to_string(cfg.c)},
                           {"card_A", S(r.card_a)},
                           {"card_S", S(r.card_s)},
                           {"pairs_raw", S(r.pairs_raw)},
                           {"card_L", S(r.card_l)},
                           {"r_min", S(r.r_min)},
                           {"r_max", S(r.r_max)},
                           {"mean_richness", rat_to_string(r.mean)},
                           {"st_bound", rat_to_string(r.bound)},
                           {"ratio", rat_to_string(r.ratio)}});
    doc["rows"] = std::move(ja);
    emit(out, doc);
}

void cmd_energy(const RunConfig& cfg, std::ostream& out) {
    GridParams grid = resolve_grid(cfg);
    SlopeParams sp = resolve_slopes(cfg, grid);
    std::vector<Slope> slopes = gen_slopes(sp, grid.ctx);
    EnergyReport rep = energy_sum(grid, slopes);

    if (cfg.format == "csv") {
        out << "# schema=st-forge-energy-v1\n";
        out << "slope_a,slope_b,slope_d,energy\n";
        for (const auto& [slope, e] : rep.per_slope)
            out << S(slope.u.a) << "," << S(slope.u.b) << "," << S(slope.d) << "," << S(e)
                << "\n";
        out << "# total=" << S(rep.total) << "\n";
        out << "# reference_lo=" << S(rep.reference_lo) << "\n";
        out << "# reference_hi=" << S(rep.reference_hi) << "\n";
        return;
    }

    ojson doc;
    doc["schema_version"] = "st-forge-energy-v1";
    doc["params"] = j_params(cfg, grid, sp);
    ojson ja = ojson::array();
    for (const auto& [slope, e] : rep.per_slope)
        ja.push_back(ojson{{"slope", j_qk(slope)}, {"energy", S(e)}});
    doc["per_slope"] = std::move(ja);
    doc["total"] = S(rep.total);
    doc["reference_lo"] = S(rep.reference_lo);
    doc["reference_hi"] = S(rep.reference_hi);
    emit(out, doc);
}

void cmd_project(const RunConfig& cfg, std::ostream& out) {
    GridParams grid = resolve_grid(cfg);
    SlopeParams sp = resolve_slopes(cfg, grid);
    std::vector<Slope> slopes = gen_slopes(sp, grid.ctx);

    std::vector<ProjectionReport> reps;
    reps.reserve(slopes.size());
    for (const Slope& sl : slopes)
        reps.push_back(project(grid, sl.value, static_cast<Int>(slopes.size())));

    if (cfg.format == "csv") {
        out << "# schema=st-forge-project-v1\n";
        out << "slope_a,slope_b,slope_d,n_classes,expected_lo,expected_hi\n";
        for (const ProjectionReport& r : reps)
            out << S(r.slope.u.a) << "," << S(r.slope.u.b) << "," << S(r.slope.d) << ","
                << S(r.n_classes) << "," << S(r.expected_lo) << "," << S(r.expected_hi) << "\n";
        return;
    }

    ojson doc;
    doc["schema_version"] = "st-forge-project-v1";
    doc["params"] = j_params(cfg, grid, sp);
    ojson ja = ojson::array();
    for (const ProjectionReport& r : reps)
        ja.push_back(ojson{{"slope", j_qk(r.slope)},
                           {"n_classes", S(r.n_classes)},
                           {"expected_lo", S(r.expected_lo)},
                           {"expected_hi", S(r.expected_hi)}});
    doc["projections"] = std::move(ja);
    emit(out, doc);
}

void cmd_lattice(const RunConfig& cfg, std::ostream& out) {
    Int size = lattice_projection_size(cfg.lat_n, cfg.lat_p, cfg.lat_q);
    if (cfg.format == "csv") {
        out << "# schema=st-forge-lattice-v1\n";
        out << "n,p,q,size\n";
        out << S(cfg.lat_n) << "," << S(cfg.lat_p) << "," << S(cfg.lat_q) << "," << S(size)
            << "\n";
        return;
    }
    ojson doc;
    doc["schema_version"] = "st-forge-lattice-v1";
    doc["n"] = S(cfg.lat_n);
    doc["p"] = S(cfg.lat_p);
    doc["q"] = S(cfg.lat_q);
    doc["size"] = S(size);
    emit(out, doc);
}

int run_command(const std::string& command, const RunConfig& cfg) {
    try {
#ifdef _OPENMP
        if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#endif
        if (cfg.format != "json" && cfg.format != "csv")
            throw validation_error("format must be json or csv");
        std::ostringstream buf;
        if (command == "generate")
            cmd_generate(cfg, buf);
        else if (command == "verify")
            cmd_verify(cfg, buf);
        else if (command == "sweep")
            cmd_sweep(cfg, buf);
        else if (command == "energy")
            cmd_energy(cfg, buf);
        else if (command == "project")
            cmd_project(cfg, buf);
        else if (command == "lattice")
            cmd_lattice(cfg, buf);
        else
            throw validation_error("unknown command: " + command);

        if (cfg.out_path.empty()) {
            std::cout << buf.str();
            std::cout.flush();
            if (!std::cout) throw io_error("failed to write to stdout");
        } else {
            std::ofstream f(cfg.out_path, std::ios::binary);
            if (!f) throw io_error("cannot open output file: " + cfg.out_path);
            f << buf.str();
            f.close();
            if (!f) throw io_error("failed to write output file: " + cfg.out_path);
        }
        return 0;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const overflow_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace stforge
