#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "attikit/sweep.hpp"

using namespace attikit;

namespace {

SweepConfig small_config()
{
    SweepConfig cfg;
    cfg.algorithms = {AlgoId::QuatFIter, AlgoId::Classic2};
    cfg.fc_hz = {10.0, 20.0};
    cfg.sample_counts = {8};
    cfg.duration_s = 0.2;
    return cfg;
}

std::vector<SweepRow> zero_wall(std::vector<SweepRow> rows)
{
    for (auto& r : rows) r.wall_ms = 0.0;
    return rows;
}

}  // namespace

TEST_CASE("config validation names the offending field")
{
    SweepConfig cfg = small_config();
    cfg.algorithms.clear();
    try {
        run_sweep(cfg);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("algorithms") != std::string::npos);
    }

    cfg = small_config();
    cfg.fc_hz = {-3.0};
    CHECK_THROWS_AS(run_sweep(cfg), ConfigError);

    // a hot rule cannot drive the fixed-point solvers
    cfg = small_config();
    cfg.stop = StopRule::hot(1e-15);
    CHECK_THROWS_AS(run_sweep(cfg), ConfigError);
}

TEST_CASE("key=value parsing round trip and errors")
{
    const std::string text =
        "# demo sweep\n"
        "algorithm = QuatFIter\n"
        "algorithm = Classic3\n"
        "fc_hz = 10\n"
        "fc_hz = 50\n"
        "N = 8\n"
        "alpha_deg = 1\n"
        "fs_hz = 1000\n"
        "duration_s = 0.5\n"
        "m_T = N+1\n"
        "stop = dpc:1e-13\n"
        "arw_deg_per_sqrt_h = 0.001\n"
        "seed = 77\n"
        "out = /tmp/demo.csv\n";
    const SweepConfig cfg = parse_config(text);
    CHECK(cfg.algorithms.size() == 2);
    CHECK(cfg.fc_hz.size() == 2);
    CHECK(cfg.sample_counts == std::vector<int>{8});
    CHECK(cfg.duration_s == 0.5);
    REQUIRE(cfg.truncation.has_value());
    CHECK(cfg.truncation->resolve(8) == 9);
    REQUIRE(cfg.stop.has_value());
    CHECK(cfg.stop->tolerance == 1e-13);
    CHECK(cfg.noise.seed == 77);
    CHECK(cfg.noise.arw == doctest::Approx(0.001 * M_PI / 180.0 / 60.0));
    CHECK(cfg.out_path == "/tmp/demo.csv");

    CHECK_THROWS_AS(parse_config("bogus_key = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("algorithm = NoSuchThing\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("fc_hz ten\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("m_T = N-3\n"), ConfigError);
}

TEST_CASE("csv serialization round trips and an empty sweep is header-only")
{
    CHECK(format_csv({}) == std::string(kCsvHeader) + "\n");

    const auto rows = run_sweep(small_config());
    REQUIRE(!rows.empty());
    const auto again = parse_csv(format_csv(rows));
    REQUIRE(again.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) CHECK(again[i] == rows[i]);
}

TEST_CASE("row order follows the configured nesting, workers notwithstanding")
{
    SweepConfig cfg = small_config();
    cfg.algorithms = {AlgoId::QuatFIter, AlgoId::QuatFIterNp};
    cfg.sample_counts = {5, 8};
    const auto rows = run_sweep(cfg, 3);
    REQUIRE(rows.size() == 8);
    std::size_t i = 0;
    for (const char* algo : {"QuatFIter", "QuatFIter-np"}) {
        for (int n : {5, 8}) {
            for (double fc : {10.0, 20.0}) {
                CHECK(rows[i].algorithm == algo);
                CHECK(rows[i].samples == n);
                CHECK(rows[i].fc_hz == fc);
                ++i;
            }
        }
    }
}

TEST_CASE("identical seeds give identical rows apart from wall time")
{
    SweepConfig cfg = small_config();
    cfg.noise.arw = 0.001 * M_PI / 180.0 / 60.0;
    cfg.noise.seed = 99;
    const auto a = zero_wall(run_sweep(cfg, 1));
    const auto b = zero_wall(run_sweep(cfg, 3));
    CHECK(format_csv(a) == format_csv(b));
}

TEST_CASE("a single-cell sweep reproduces the direct drift computation bit for bit")
{
    SweepConfig cfg;
    cfg.algorithms = {AlgoId::RodFIter};
    cfg.fc_hz = {25.0};
    cfg.sample_counts = {8};
    cfg.duration_s = 0.5;
    cfg.noise.arw = 0.001 * M_PI / 180.0 / 60.0;
    cfg.noise.seed = 4242;
    const auto rows = run_sweep(cfg);
    REQUIRE(rows.size() == 1);

    ConingParamsd p;
    p.alpha = cfg.alpha_rad;
    p.fc = 25.0;
    p.fs = 1000.0;
    p.samples_per_update = 8;
    p.duration = 0.5;
    const auto direct = accumulate_drift(p, default_config(AlgoId::RodFIter, 8), cfg.noise);
    CHECK(rows[0].drift_rad == direct.drift_rad);
    CHECK(rows[0].iters_mean == direct.mean_iterations);
}

TEST_CASE("classic algorithms pin their own sample count")
{
    SweepConfig cfg = small_config();
    cfg.algorithms = {AlgoId::Classic2, AlgoId::Classic3};
    cfg.sample_counts = {5, 8};  // ignored by the classic pair
    const auto rows = run_sweep(cfg);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].samples == 2);
    CHECK(rows[1].samples == 2);
    CHECK(rows[2].samples == 3);
    CHECK(rows[3].samples == 3);
    for (const auto& r : rows) CHECK(r.stop == "none");
}

TEST_CASE("emit_csv writes the file it says it does")
{
    const auto rows = run_sweep(small_config());
    const std::string path = "/tmp/attikit_sweep_test.csv";
    emit_csv(rows, path);
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == format_csv(rows));
    std::filesystem::remove(path);

    CHECK_THROWS_AS(emit_csv(rows, "/no/such/dir/attikit.csv"), std::runtime_error);
}

TEST_CASE("drift rises with coning frequency once clear of the rounding floor")
{
    SweepConfig cfg;
    cfg.algorithms = {AlgoId::Classic2};
    cfg.fc_hz = {5.0, 10.0, 20.0, 30.0};
    cfg.duration_s = 1.0;
    const auto rows = run_sweep(cfg, 2);
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        CHECK(rows[i].drift_rad > 0.0);
        CHECK(rows[i].drift_rad < rows[i + 1].drift_rad);
    }
}

TEST_CASE("presets exist and expand to runnable configurations")
{
    for (const auto& name : preset_names()) {
        const auto configs = preset_configs(name);
        CHECK(!configs.empty());
        for (const auto& cfg : configs) CHECK_NOTHROW(cfg.validate());
    }
    CHECK_THROWS_AS(preset_configs("fig99"), ConfigError);

    // the frequency-sweep preset pairs the monomial group at N+9 with the
    // chebyshev group at N+1
    const auto fig9 = preset_configs("fig9");
    REQUIRE(fig9.size() == 2);
    CHECK(fig9[0].truncation->resolve(8) == 17);
    CHECK(fig9[1].truncation->resolve(8) == 9);
    CHECK(fig9[1].algorithms == std::vector<AlgoId>{AlgoId::QuatFIter});
}
