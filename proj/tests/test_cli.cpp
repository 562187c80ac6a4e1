#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "stforge/cli.hpp"
#include "stforge/construction.hpp"
#include "stforge/errors.hpp"

using namespace stforge;
using njson = nlohmann::json;

namespace {

RunConfig base_config(Int side, Int m) {
    RunConfig cfg;
    cfg.k = 2;
    cfg.side = side;
    cfg.m_scale = m;
    return cfg;
}

std::string render(void (*cmd)(const RunConfig&, std::ostream&), const RunConfig& cfg) {
    std::ostringstream out;
    cmd(cfg, out);
    return out.str();
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("grid resolution accepts exactly one size parameter") {
    RunConfig cfg;
    cfg.side = 4;
    GridParams bySide = resolve_grid(cfg);
    CHECK(bySide.n_scale == 16);

    RunConfig byN;
    byN.n_scale = 17;
    CHECK(resolve_grid(byN).side == 4);

    RunConfig both;
    both.side = 4;
    both.n_scale = 16;
    CHECK_THROWS_AS(resolve_grid(both), validation_error);
    RunConfig neither;
    CHECK_THROWS_AS(resolve_grid(neither), validation_error);
}

TEST_CASE("slope resolution derives M from r") {
    RunConfig cfg;
    cfg.side = 8; // N = 64
    cfg.r_div = 16;
    GridParams grid = resolve_grid(cfg);
    CHECK(resolve_slopes(cfg, grid).m_scale == 4);

    cfg.r_div = 1000; // M would be 0
    CHECK_THROWS_AS(resolve_slopes(cfg, grid), validation_error);
    cfg.r_div = 0;
    CHECK_THROWS_AS(resolve_slopes(cfg, grid), validation_error);

    RunConfig overM = base_config(4, 17); // M > N = 16
    GridParams g2 = resolve_grid(overM);
    CHECK_THROWS_AS(resolve_slopes(overM, g2), validation_error);

    RunConfig bothMR = base_config(8, 4);
    bothMR.r_div = 4;
    CHECK_THROWS_AS(resolve_slopes(bothMR, resolve_grid(bothMR)), validation_error);
    RunConfig neitherMR;
    neitherMR.side = 8;
    CHECK_THROWS_AS(resolve_slopes(neitherMR, resolve_grid(neitherMR)), validation_error);
}

TEST_CASE("generate emits the three sets") {
    RunConfig cfg = base_config(1, 1);
    njson doc = njson::parse(render(cmd_generate, cfg));
    CHECK(doc["schema_version"] == "st-forge-generate-v1");
    CHECK(doc["params"]["k"] == "2");
    CHECK(doc["params"]["N"] == "1");
    CHECK(doc["A"]["count"] == "4");
    REQUIRE(doc["A"]["elems"].size() == 4);
    CHECK(doc["A"]["elems"][0]["a"] == "-1");
    CHECK(doc["A"]["elems"][0]["b"] == "-1");

    RingContext ctx(2);
    size_t n_slopes = gen_slopes(make_slope_params(1, Rat{1, 2}), ctx).size();
    CHECK(doc["S"]["count"] == int_to_string(static_cast<Int>(n_slopes)));
    CHECK(doc["S"]["slopes"].size() == n_slopes);
    CHECK(doc["S"]["slopes"][0]["witness"].size() == 4);
    CHECK(doc["L"]["lines_included"] == true);
    Int listed = int_from_string(doc["L"]["count"].get<std::string>());
    CHECK(static_cast<Int>(doc["L"]["lines"].size()) == listed);

    cfg.format = "csv";
    std::string csv = render(cmd_generate, cfg);
    CHECK(csv.find("# schema=st-forge-generate-v1") == 0);
    CHECK(csv.find("\na,b\n-1,-1\n") != std::string::npos);
    CHECK(csv.find("# section=S") != std::string::npos);
    CHECK(csv.find("# section=L") != std::string::npos);
}

TEST_CASE("generate omits oversized line listings") {
    RunConfig cfg = base_config(16, 4); // 421014 lines, over the dump cap
    njson doc = njson::parse(render(cmd_generate, cfg));
    CHECK(doc["L"]["count"] == "421014");
    CHECK(doc["L"]["lines_included"] == false);
    CHECK(doc["L"]["lines"].empty());
}

TEST_CASE("verify reports the pinned side-8 profile") {
    RunConfig cfg = base_config(8, 4);
    cfg.oracle = true;
    njson doc = njson::parse(render(cmd_verify, cfg));
    CHECK(doc["schema_version"] == "st-forge-verify-v1");
    CHECK(doc["cardinalities"]["card_A"] == "256");
    CHECK(doc["cardinalities"]["card_P"] == "65536");
    CHECK(doc["cardinalities"]["card_S"] == "78");
    CHECK(doc["cardinalities"]["pairs_raw"] == "319488");
    CHECK(doc["cardinalities"]["card_L"] == "87030");
    CHECK(doc["richness"]["r_min"] == "9");
    CHECK(doc["richness"]["r_max"] == "256");
    CHECK(doc["richness"]["mean"] == "1210472/43515");
    CHECK(doc["richness"]["target"] == "16/1");
    CHECK(doc["sharpness"]["ratio"] == "31722435/2150137856");
    CHECK(doc["oracle_agreement"] == true);

    cfg.format = "csv";
    std::string csv = render(cmd_verify, cfg);
    CHECK(csv.find("key,value\n") != std::string::npos);
    CHECK(csv.find("\nr_min,9\n") != std::string::npos);
    CHECK(csv.find("\noracle_agreement,true\n") != std::string::npos);
}

TEST_CASE("sweep emits the documented schema") {
    RunConfig cfg;
    cfg.k = 2;
    cfg.sweep_sides = {4, 8};
    cfg.sweep_ms = {4};
    cfg.format = "csv";
    std::string csv = render(cmd_sweep, cfg);
    std::string header =
        "k,s,N_eff,M,c,card_A,card_S,pairs_raw,card_L,r_min,r_max,"
        "mean_richness_num,mean_richness_den,st_bound_num,st_bound_den,"
        "ratio_num,ratio_den";
    CHECK(csv.find("# schema=st-forge-sweep-v1\n" + header + "\n") == 0);
    size_t rows = 0;
    std::istringstream is(csv);
    for (std::string line; std::getline(is, line);)
        if (!line.empty() && line[0] != '#' && line[0] != 'k') ++rows;
    CHECK(rows == 2);
    CHECK(csv.find("\n2,8,64,4,1/2,256,78,319488,87030,9,256,") != std::string::npos);

    // identical runs are byte-identical
    CHECK(render(cmd_sweep, cfg) == csv);

    cfg.format = "json";
    njson doc = njson::parse(render(cmd_sweep, cfg));
    CHECK(doc["rows"].size() == 2);
    CHECK(doc["rows"][1]["card_L"] == "87030");

    RunConfig empty;
    empty.sweep_ms = {4};
    std::ostringstream sink;
    CHECK_THROWS_AS(cmd_sweep(empty, sink), validation_error);
}

TEST_CASE("energy command matches the library totals") {
    RunConfig cfg = base_config(2, 4);
    njson doc = njson::parse(render(cmd_energy, cfg));
    CHECK(doc["per_slope"].size() == 78);
    CHECK(doc["total"] == "39440");
    cfg.format = "csv";
    std::string csv = render(cmd_energy, cfg);
    CHECK(csv.find("# total=39440\n") != std::string::npos);
}

TEST_CASE("project command lists one row per slope") {
    RunConfig cfg = base_config(2, 4);
    njson doc = njson::parse(render(cmd_project, cfg));
    CHECK(doc["projections"].size() == 78);
    cfg.format = "csv";
    std::string csv = render(cmd_project, cfg);
    CHECK(csv.find("slope_a,slope_b,slope_d,n_classes,expected_lo,expected_hi\n") !=
          std::string::npos);
}

TEST_CASE("lattice command") {
    RunConfig cfg;
    cfg.lat_n = 3;
    cfg.lat_p = 1;
    cfg.lat_q = 1;
    njson doc = njson::parse(render(cmd_lattice, cfg));
    CHECK(doc["size"] == "5");
    cfg.format = "csv";
    std::string csv = render(cmd_lattice, cfg);
    CHECK(csv.find("n,p,q,size\n3,1,1,5\n") != std::string::npos);
}

TEST_CASE("exit codes separate error classes") {
    namespace fs = std::filesystem;
    fs::path out = fs::temp_directory_path() / "stforge_cli_test_out.json";

    RunConfig ok = base_config(2, 4);
    ok.out_path = out.string();
    CHECK(run_command("generate", ok) == 0);
    CHECK(!slurp(out).empty());

    RunConfig badK = base_config(2, 4);
    badK.k = 4;
    badK.out_path = out.string();
    CHECK(run_command("generate", badK) == 2);
    try {
        RingContext bad(4);
    } catch (const validation_error& e) {
        CHECK(std::string(e.what()).find("square") != std::string::npos);
    }

    RunConfig overM = base_config(4, 17);
    overM.out_path = out.string();
    CHECK(run_command("verify", overM) == 2);

    RunConfig badPath = base_config(2, 4);
    badPath.out_path = "/nonexistent-dir/report.json";
    CHECK(run_command("generate", badPath) == 4);

    CHECK(run_command("frobnicate", ok) == 2);

    RunConfig badFormat = base_config(2, 4);
    badFormat.format = "xml";
    badFormat.out_path = out.string();
    CHECK(run_command("generate", badFormat) == 2);

    RunConfig threaded = base_config(2, 4);
    threaded.threads = 2;
    threaded.out_path = out.string();
    CHECK(run_command("verify", threaded) == 0);

    fs::remove(out);
}

TEST_CASE("deterministic output files") {
    namespace fs = std::filesystem;
    fs::path out1 = fs::temp_directory_path() / "stforge_cli_det_1.csv";
    fs::path out2 = fs::temp_directory_path() / "stforge_cli_det_2.csv";
    RunConfig cfg;
    cfg.sweep_sides = {4};
    cfg.sweep_ms = {4};
    cfg.format = "csv";
    cfg.out_path = out1.string();
    REQUIRE(run_command("sweep", cfg) == 0);
    cfg.out_path = out2.string();
    REQUIRE(run_command("sweep", cfg) == 0);
    CHECK(slurp(out1) == slurp(out2));
    CHECK(!slurp(out1).empty());
    fs::remove(out1);
    fs::remove(out2);
}
