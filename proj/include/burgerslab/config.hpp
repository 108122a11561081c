#pragma once

#include "burgerslab/estimates.hpp"
#include "burgerslab/flux.hpp"
#include "burgerslab/grid.hpp"
#include "burgerslab/profiles.hpp"
#include "burgerslab/solver.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace burgerslab {

// Requested estimate check, as configured.
struct CheckSpec {
    std::string estimate;  // estfond | nonhom | decay | gendec | daf_tv |
                           // heat_linf | xtau | cigen | grongen_diagonal
    std::optional<double> q;                   // gendec
    std::optional<std::pair<double, double>> window;
    std::optional<double> slope_tol;           // decay / gendec
    std::optional<double> tol;                 // daf_tv / heat_linf
    std::optional<double> growth_cap;          // estfond / nonhom
    std::vector<double> taus;                  // xtau
    std::optional<int> per_decade;             // grongen_diagonal
    std::optional<double> decades;             // grongen_diagonal
};

// Grid request: explicit, or sized automatically from the initial support
// and the signed wave-speed range over [0, t_end].
struct AutoGrid {
    std::vector<double> target_h;  // one value broadcast, or one per axis
    double margin = 0.10;          // extra fraction of the travelled extent per side
};

struct ExperimentConfig {
    std::string run_id;
    FluxSpec flux = FluxSpec::burgers(2);
    DataProfile profile = DataProfile::n_wave(1.0);
    std::variant<GridSpec, AutoGrid> grid = AutoGrid{};
    RunConfig solver;
    std::vector<CheckSpec> checks;
    std::optional<std::string> out_dir;

    static ExperimentConfig from_json(const nlohmann::json& j);
    static ExperimentConfig from_file(const std::string& path);
    nlohmann::json to_json() const;  // defaults materialised

    // Explicit grid, either as given or auto-sized for this config.
    GridSpec resolve_grid() const;
};

// Run one configured check against finished diagnostics.
EstimateReport evaluate_check(const CheckSpec& c, const RunDiagnostics& diag,
                              const FluxSpec& spec);

nlohmann::json report_to_json(const std::string& run_id, const EstimateReport& r);

}  // namespace burgerslab
