#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "stforge/construction.hpp"
#include "stforge/rational.hpp"

namespace stforge {

/** Parsed run parameters shared by all commands. */
struct RunConfig {
    int64_t k = 2;
    std::optional<Int> n_scale; // --N
    std::optional<Int> side;    // --side (exactly one of N/side)
    std::optional<Int> m_scale; // --M
    std::optional<Int> r_div;   // --r; M = floor(N / r)
    Rat c{1, 2};
    Int gcd_cap = 5;
    std::string format = "json"; // json | csv
    std::string out_path;        // empty: stdout
    bool oracle = false;
    int threads = 0;

    std::vector<Int> sweep_sides; // sweep: side values
    std::vector<Int> sweep_ms;    // sweep: M values
    Int lat_n = 1, lat_p = 1, lat_q = 1;
};

/** Grid from --side or --N (exactly one required). */
GridParams resolve_grid(const RunConfig& cfg);
/** Slope params from --M or --r; enforces M <= N so the richness target >= 1. */
SlopeParams resolve_slopes(const RunConfig& cfg, const GridParams& grid);

// Commands write one deterministic document to `out`; errors are thrown.
void cmd_generate(const RunConfig& cfg, std::ostream& out);
void cmd_verify(const RunConfig& cfg, std::ostream& out);
void cmd_sweep(const RunConfig& cfg, std::ostream& out);
void cmd_energy(const RunConfig& cfg, std::ostream& out);
void cmd_project(const RunConfig& cfg, std::ostream& out);
void cmd_lattice(const RunConfig& cfg, std::ostream& out);

/**
 * Dispatches to the command, routing output to cfg.out_path or stdout, and
 * maps errors to exit codes: 0 success, 2 validation, 3 overflow, 4 I/O,
 * 1 anything else.
 */
int run_command(const std::string& command, const RunConfig& cfg);

} // namespace stforge
