#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "stforge/cli.hpp"
#include "stforge/errors.hpp"

namespace {

using stforge::Int;

std::vector<Int> parse_int_list(const std::string& text) {
    std::vector<Int> out;
    size_t pos = 0;
    while (true) {
        size_t comma = text.find(',', pos);
        std::string tok =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!tok.empty()) out.push_back(stforge::int_from_string(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

struct RawArgs {
    int64_t k = 2;
    std::string n, side, m, r;
    std::string c = "1/2";
    std::string gcd_cap = "5";
    std::string format = "json";
    std::string out;
    bool oracle = false;
    int threads = 0;
    std::string lat_n = "1", lat_p = "1", lat_q = "1";
};

void add_output_opts(CLI::App* sub, RawArgs& a) {
    sub->add_option("--format", a.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", a.out, "Output path (default: stdout)");
}

void add_instance_opts(CLI::App* sub, RawArgs& a, bool lists) {
    sub->add_option("--k", a.k, "Ring parameter k (non-square, >= 2)");
    if (lists) {
        sub->add_option("--side", a.side, "Comma-separated grid half-sides s")->required();
        sub->add_option("--M", a.m, "Comma-separated slope scales M")->required();
    } else {
        sub->add_option("--N", a.n, "Grid scale N (uses side s = floor(sqrt(N)))");
        sub->add_option("--side", a.side, "Grid half-side s (N = s^2)");
        sub->add_option("--M", a.m, "Slope scale M");
        sub->add_option("--r", a.r, "Richness target r (uses M = floor(N/r))");
    }
    sub->add_option("--c", a.c, "Band constant c as a rational p/q in (0,1)");
    sub->add_option("--gcd-cap", a.gcd_cap, "Max gcd allowed by the slope filters");
    sub->add_option("--threads", a.threads, "Worker threads (0 = library default)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"st-forge: exact-arithmetic grid/line constructions over Z[sqrt(k)]"};
    app.require_subcommand(1);
    RawArgs a;

    CLI::App* generate =
        app.add_subcommand("generate", "Emit A, S (with witnesses), and the deduplicated L");
    add_instance_opts(generate, a, false);
    add_output_opts(generate, a);

    CLI::App* verify =
        app.add_subcommand("verify", "Run the full pipeline and report richness + sharpness");
    add_instance_opts(verify, a, false);
    add_output_opts(verify, a);
    verify->add_flag("--oracle", a.oracle,
                     "Spot-check sampled lines against the brute-force counter");

    CLI::App* sweep = app.add_subcommand("sweep", "One report row per (s, M) pair");
    add_instance_opts(sweep, a, true);
    add_output_opts(sweep, a);

    CLI::App* energy =
        app.add_subcommand("energy", "Additive-energy decomposition over the slope set");
    add_instance_opts(energy, a, false);
    add_output_opts(energy, a);

    CLI::App* project =
        app.add_subcommand("project", "Projection counts y - sigma*x, one row per slope");
    add_instance_opts(project, a, false);
    add_output_opts(project, a);

    CLI::App* lattice =
        app.add_subcommand("lattice", "Distinct values of q*y - p*x over the n x n grid");
    lattice->add_option("--n", a.lat_n, "Grid side n")->required();
    lattice->add_option("--p", a.lat_p, "Direction component p");
    lattice->add_option("--q", a.lat_q, "Direction component q");
    add_output_opts(lattice, a);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        stforge::RunConfig cfg;
        cfg.k = a.k;
        CLI::App* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        if (name == "sweep") {
            cfg.sweep_sides = parse_int_list(a.side);
            cfg.sweep_ms = parse_int_list(a.m);
        } else {
            if (!a.n.empty()) cfg.n_scale = stforge::int_from_string(a.n);
            if (!a.side.empty()) cfg.side = stforge::int_from_string(a.side);
            if (!a.m.empty()) cfg.m_scale = stforge::int_from_string(a.m);
            if (!a.r.empty()) cfg.r_div = stforge::int_from_string(a.r);
        }
        cfg.c = stforge::rat_from_string(a.c);
        cfg.gcd_cap = stforge::int_from_string(a.gcd_cap);
        cfg.format = a.format;
        cfg.out_path = a.out;
        cfg.oracle = a.oracle;
        cfg.threads = a.threads;
        cfg.lat_n = stforge::int_from_string(a.lat_n);
        cfg.lat_p = stforge::int_from_string(a.lat_p);
        cfg.lat_q = stforge::int_from_string(a.lat_q);
        return stforge::run_command(name, cfg);
    } catch (const stforge::validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
