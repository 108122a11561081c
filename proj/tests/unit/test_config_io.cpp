#include "burgerslab/config.hpp"
#include "burgerslab/io.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>

using namespace burgerslab;
namespace fs = std::filesystem;

namespace {

nlohmann::json base_config() {
    return nlohmann::json{
        {"run_id", "unit-run"},
        {"flux", {{"kind", "monomial"}, {"exponents", {2}}}},
        {"profile", {{"kind", "n_wave"}, {"L", 1.0}}},
        {"grid", {{"auto", {{"target_h", 0.05}}}}},
        {"solver",
         {{"t_end", 0.5},
          {"output_times", {0.0, 0.5}},
          {"accumulate_estfond", true},
          {"accumulate_delta", true},
          {"track_phi_mass", true}}},
        {"checks", nlohmann::json::array({{{"estimate", "estfond"}}})},
    };
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("burgerslab-test-" + std::to_string(std::rand()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("config parsing is strict about keys and values") {
    CHECK_NOTHROW(ExperimentConfig::from_json(base_config()));

    auto j = base_config();
    j["typo"] = 1;
    CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);

    j = base_config();
    j["solver"]["cfl"] = 0.5;  // misspelled key must not be ignored
    CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);

    j = base_config();
    j["grid"]["auto"]["pad"] = 1;
    CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);

    j = base_config();
    j["run_id"] = "bad id";
    CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);

    j = base_config();
    j["checks"][0] = {{"estimate", "decay"}};  // decay needs a window
    CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);

    j = base_config();
    j["checks"][0] = {{"estimate", "xtau"}, {"taus", {1.0}}};  // needs record_xseries
    CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);

    j = base_config();
    j["checks"][0] = {{"estimate", "gendec"}, {"q", 5.0}, {"window", {1.0, 100.0}}};
    CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);  // q over d^2/(d-1)

    j = base_config();
    j["profile"] = {{"kind", "box"}, {"height", 1.0}, {"corner", {0.0, 0.0}},
                    {"widths", {1.0, 1.0}}};
    CHECK_THROWS_AS(ExperimentConfig::from_json(j), ConfigError);  // dim != flux n
}

TEST_CASE("config json round trip materialises defaults") {
    const auto cfg = ExperimentConfig::from_json(base_config());
    const auto echoed = cfg.to_json();
    CHECK(echoed["solver"]["cfl_fraction"] == 0.9);
    CHECK(echoed["solver"]["max_steps"] == 50000000);
    const auto cfg2 = ExperimentConfig::from_json(echoed);
    CHECK(cfg2.run_id == cfg.run_id);
    CHECK(cfg2.to_json() == echoed);
}

TEST_CASE("auto grid covers the travelled support") {
    const auto cfg = ExperimentConfig::from_json(base_config());
    const auto g = cfg.resolve_grid();
    REQUIRE(g.dim() == 1);
    // Support [0, 1], speeds in [0, 1] up to t = 0.5, 10% margin + 2h pad.
    CHECK(g.origin[0] < 0.0);
    CHECK(g.origin[0] + g.h[0] * static_cast<double>(g.counts[0]) > 1.5);
    CHECK(g.h[0] == 0.05);

    // Unclipped unbounded data cannot be auto-sized.
    auto j = base_config();
    j["profile"] = {{"kind", "inv_sqrt"}};
    CHECK_THROWS_AS(ExperimentConfig::from_json(j).resolve_grid(), ConfigError);
}

TEST_CASE("snapshot round trip is exact") {
    TempDir tmp;
    CellField f;
    f.grid.origin = {-1.0, 0.5};
    f.grid.h = {0.125, 0.25};
    f.grid.counts = {4, 3};
    f.time = 0.625;
    for (int i = 0; i < 12; ++i) f.values.push_back(std::sqrt(2.0) * i - 3.7);

    const auto path = tmp.path / "snap.dat";
    write_snapshot(path, f);
    const auto g = read_snapshot(path);
    CHECK(g.time == f.time);
    CHECK(g.grid.origin == f.grid.origin);
    CHECK(g.grid.h == f.grid.h);
    CHECK(g.grid.counts == f.grid.counts);
    CHECK(g.values == f.values);
}

TEST_CASE("run artifacts round trip through disk") {
    TempDir tmp;
    auto cfg = ExperimentConfig::from_json(base_config());
    cfg.solver.record_xseries = true;
    cfg.solver.snapshot_times = {0.5};
    cfg.solver.extra_norm_ps = {3.0};
    cfg.solver.entropies = {EntropyId::quadratic(), EntropyId::kruzhkov(0.25)};

    const auto grid = cfg.resolve_grid();
    const auto diag = run(grid, cfg.profile, cfg.flux, cfg.solver);
    write_run_artifacts(tmp.path, cfg, diag, 0.0);

    CHECK(fs::exists(tmp.path / "manifest.json"));
    CHECK(fs::exists(tmp.path / "diagnostics.csv"));
    CHECK(fs::exists(tmp.path / "xseries.csv"));
    CHECK(fs::exists(tmp.path / "initial_cdf.csv"));
    CHECK(fs::exists(tmp.path / "snapshots" / "snap_000.dat"));

    const auto [cfg2, diag2] = load_run_artifacts(tmp.path);
    CHECK(cfg2.run_id == cfg.run_id);
    REQUIRE(diag2.rows.size() == diag.rows.size());
    for (size_t i = 0; i < diag.rows.size(); ++i) {
        CHECK(diag2.rows[i].t == diag.rows[i].t);
        CHECK(diag2.rows[i].mass == diag.rows[i].mass);
        CHECK(diag2.rows[i].l1 == diag.rows[i].l1);
        CHECK(diag2.rows[i].lp_main == diag.rows[i].lp_main);
        CHECK(diag2.rows[i].tv_sq == diag.rows[i].tv_sq);
        CHECK(diag2.rows[i].acc_estfond == diag.rows[i].acc_estfond);
        REQUIRE(diag2.rows[i].lp_all.size() == diag.rows[i].lp_all.size());
        for (size_t p = 0; p < diag.rows.front().lp_all.size(); ++p)
            CHECK(diag2.rows[i].lp_all[p] == diag.rows[i].lp_all[p]);
        REQUIRE(diag2.rows[i].entropy_diss.size() == diag.rows[i].entropy_diss.size());
        for (size_t e = 0; e < diag.rows.front().entropy_diss.size(); ++e)
            CHECK(diag2.rows[i].entropy_diss[e] == diag.rows[i].entropy_diss[e]);
    }
    CHECK(diag2.norm_ps == diag.norm_ps);
    CHECK(diag2.initial_l1 == diag.initial_l1);
    CHECK(diag2.initial_moments == diag.initial_moments);
    CHECK(diag2.phi_mass0 == diag.phi_mass0);
    CHECK(diag2.acc_estfond_final == diag.acc_estfond_final);
    CHECK(diag2.acc_delta_final == diag.acc_delta_final);
    CHECK(diag2.xseries.size() == diag.xseries.size());
    CHECK(diag2.xseries.back()[1] == diag.xseries.back()[1]);
    CHECK(diag2.initial_cdf.total_sum == diag.initial_cdf.total_sum);
    CHECK(diag2.initial_cdf.values == diag.initial_cdf.values);
    CHECK(diag2.steps == diag.steps);

    // The reconstructed diagnostics must drive the checks identically.
    const auto rep = check_estfond(diag2);
    CHECK(rep.status == CheckStatus::pass);
}

TEST_CASE("abort manifests are refused by the loader") {
    TempDir tmp;
    const auto cfg = ExperimentConfig::from_json(base_config());
    write_abort_manifest(tmp.path, cfg, "boundary contact");
    CHECK_THROWS(load_run_artifacts(tmp.path));
}

TEST_CASE("reports land on disk with the expected schema") {
    TempDir tmp;
    EstimateReport r;
    r.estimate = "estfond";
    r.status = CheckStatus::pass;
    r.lhs = 1.0;
    r.rhs = 2.0;
    r.ratio = 0.5;
    EstimateReport r2 = r;
    r2.estimate = "decay";
    r2.status = CheckStatus::fail;
    r2.slope = -0.25;
    r2.expected_slope = -0.375;
    write_reports(tmp.path, "unit-run", {r, r2});

    CHECK(fs::exists(tmp.path / "reports" / "report_estfond.json"));
    CHECK(fs::exists(tmp.path / "reports" / "report_decay.json"));
    CHECK(fs::exists(tmp.path / "reports" / "reports.csv"));

    std::ifstream in(tmp.path / "reports" / "report_decay.json");
    nlohmann::json j;
    in >> j;
    CHECK(j["run_id"] == "unit-run");
    CHECK(j["estimate"] == "decay");
    CHECK(j["pass"] == false);
    CHECK(j["slope"] == -0.25);
    CHECK(j["detail"]["status"] == "fail");
    CHECK(j["detail"]["expected_slope"] == -0.375);

    // NaN-bearing reports serialise as null and survive a reread.
    EstimateReport rn;
    rn.estimate = "cigen";
    rn.status = CheckStatus::inconclusive;
    rn.lhs = std::numeric_limits<double>::quiet_NaN();
    write_reports(tmp.path, "unit-run", {rn});
    std::ifstream in2(tmp.path / "reports" / "report_cigen.json");
    nlohmann::json j2;
    in2 >> j2;
    CHECK(j2["lhs"].is_null());
}
