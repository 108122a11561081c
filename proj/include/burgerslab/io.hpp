#pragma once

#include "burgerslab/config.hpp"
#include "burgerslab/solver.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace burgerslab {

// Every numeric CSV field is written with %.17g so reruns are
// byte-comparable and values round-trip exactly.

void write_diagnostics_csv(const std::filesystem::path& path, const RunDiagnostics& diag);
void write_xseries_csv(const std::filesystem::path& path,
                       const std::vector<std::array<double, 2>>& xs);
void write_cdf_csv(const std::filesystem::path& path, const ValueCdf& cdf);

void write_snapshot(const std::filesystem::path& path, const CellField& f);
CellField read_snapshot(const std::filesystem::path& path);

// manifest.json: config echo with defaults materialised, tool version, wall
// time, a summary block with everything the estimate checks need, and the
// zero-extension boundary policy flag.
void write_manifest(const std::filesystem::path& dir, const ExperimentConfig& config,
                    const RunDiagnostics& diag, double wall_seconds);
void write_abort_manifest(const std::filesystem::path& dir, const ExperimentConfig& config,
                          const std::string& message);

// Full run directory: manifest + CSV series + snapshots.
void write_run_artifacts(const std::filesystem::path& dir, const ExperimentConfig& config,
                         const RunDiagnostics& diag, double wall_seconds);

// Rebuilds the diagnostics (and the config echo) from a run directory.
std::pair<ExperimentConfig, RunDiagnostics> load_run_artifacts(
    const std::filesystem::path& dir);

// report_<estimate>.json per check plus an aggregated reports.csv.
void write_reports(const std::filesystem::path& dir, const std::string& run_id,
                   const std::vector<EstimateReport>& reports);

}  // namespace burgerslab
