#pragma once

#include "burgerslab/flux.hpp"
#include "burgerslab/grid.hpp"
#include "burgerslab/moment.hpp"
#include "burgerslab/profiles.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace burgerslab {

// ----------------------------------------------------------- field set-up

// Cell averages of the profile by a tensor 3-point Gauss-Legendre rule per
// cell.  Requires the profile's support to sit strictly inside the grid
// with at least a one-cell zero margin on every side; otherwise throws
// ConfigError with a per-axis enlargement hint.
CellField initialize(const GridSpec& grid, const DataProfile& profile);

// ---------------------------------------------------------------- stepping

// Largest dt with sum_j (dt / h_j) * speed_j <= cfl_fraction, where speed_j
// is the max wave speed over the field's value range.  Infinity for a field
// at rest (zero speeds).
double cfl_timestep(const CellField& f, const FluxSpec& spec, double cfl_fraction = 0.9);

// One unsplit conservative Godunov update with zero-constant halo.  Throws
// CflViolation when dt exceeds the admissible step, BoundaryContact when the
// update makes the outermost cell ring nonzero (the zero-extension would be
// violated on the next step).
CellField step(const CellField& f, const FluxSpec& spec, double dt,
               double cfl_fraction = 0.9);

// --------------------------------------------------------------- measures

double lp_norm(const CellField& f, double p);
double linf_norm(const CellField& f);
// Total variation of u^2/2 along the single axis (n = 1 only).
double tv_of_square(const CellField& f);
// int u^j dy (signed moment), j >= 1.
double moment_integral(const CellField& f, int j);
double mass(const CellField& f);

// Pointwise entropy residual of one accepted step (before -> after, both on
// the same grid, dt = after.time - before.time):
//   r_i = -(eta(after_i) - eta(before_i)) / dt
//         - sum_j (Q_j(i+e_j) - Q_j(i)) / h_j   >= 0 for convex entropies.
// Also returns the dissipated mass  sum_i r_i vol dt.
struct EntropyResidual {
    CellField residual;
    double mass;
};
EntropyResidual entropy_residual(const CellField& before, const CellField& after,
                                 const FluxSpec& spec, const PreparedEntropy& e);

// Value-distribution summary of a nonnegative field: ascending distinct
// positive values v_k with, for each, the total volume and volume-weighted
// sum of cells strictly above v.  Lets any mass of the form
// sum_i vol * psi(u_i) with convex psi, psi(0) = psi'(0) = 0 be evaluated
// after the fact as int_0^{max} psi''(z) G(z) dz where
// G(z) = sum_i vol * (u_i - z)_+ is piecewise linear between the v_k.
struct ValueCdf {
    std::vector<double> values;     // ascending, > 0
    std::vector<double> vol_above;  // volume of { u > v_k }
    std::vector<double> sum_above;  // sum of vol * u over { u > v_k }
    double total_vol = 0.0;         // volume of { u > 0 }
    double total_sum = 0.0;         // sum of vol * u over { u > 0 }
    double excess_mass(double z) const;  // G(z)
    double max_value() const { return values.empty() ? 0.0 : values.back(); }
    bool empty() const { return values.empty(); }
};
ValueCdf value_cdf(const CellField& f);

// sum_i vol * psi(u_i) for psi'' = weight, psi(0) = psi'(0) = 0, via the
// G-representation above (one 1-D quadrature instead of one per cell).
double convex_mass(const ValueCdf& cdf, const std::function<double(double)>& weight,
                   double rel_tol = 1e-10);

// ------------------------------------------------------------------- runs

struct RunConfig {
    double t_end = 1.0;
    double cfl_fraction = 0.9;
    std::vector<double> output_times;   // ascending, within [0, t_end]
    std::vector<EntropyId> entropies;   // dissipation ledgers to track
    std::vector<double> extra_norm_ps;  // resolved list always holds {1, 2, p_main}
    bool record_xseries = false;        // dense (t, int u^{p*}) at every step
    bool acc_estfond = false;           // int_0^t int u^{p*}  (left endpoint)
    bool acc_delta = false;             // int_0^t int Delta(u) (left endpoint)
    bool track_phi_mass = false;        // record int phi(u0)
    std::vector<double> snapshot_times; // keep full fields at these times
    // L1 distance to the exact 1-D N-wave at output times (requires the
    // matching profile and flux; validated by the caller).
    std::optional<double> oracle_n_wave_L;
    int64_t max_steps = 50'000'000;
};

struct DiagRow {
    double t = 0.0;
    double mass = 0.0;
    double l1 = 0.0, l2 = 0.0, lp_main = 0.0, linf = 0.0;
    double tv_sq = 0.0;                // n = 1 only, else NaN
    std::vector<double> lp_all;        // aligned with RunDiagnostics::norm_ps
    std::vector<double> entropy_diss;  // cumulative, aligned with entropies
    double acc_estfond = 0.0, acc_delta = 0.0;  // accumulator snapshots
    double oracle_l1_error = 0.0;      // NaN unless requested
};

struct RunDiagnostics {
    int n = 0, d = 0;
    double p_main = 0.0;                       // N/n for monomial, d^2/(d-1) otherwise
    double p_star = 0.0;                       // d^2/(d-1), accumulator exponent
    std::vector<double> norm_ps;               // resolved, ascending
    std::vector<EntropyId> entropies;
    GridSpec grid;
    // initial-data summary
    double initial_mass = 0.0, initial_l1 = 0.0, initial_min = 0.0, initial_max = 0.0;
    std::vector<double> initial_moments;       // int u0^j, j = 1..d
    std::vector<double> initial_entropy_mass;  // int eta(u0), aligned with entropies
    double phi_mass0 = 0.0;                    // int phi(u0); NaN unless tracked
    ValueCdf initial_cdf;                      // captured when acc_delta or phi tracking is on
    // trajectory
    std::vector<DiagRow> rows;
    std::vector<std::array<double, 2>> xseries;  // (t, int u^{p*})
    std::vector<CellField> snapshots;
    double acc_estfond_final = 0.0, acc_delta_final = 0.0;
    int64_t steps = 0;
    double t_final = 0.0;
};

RunDiagnostics run(const GridSpec& grid, const DataProfile& profile,
                   const FluxSpec& spec, const RunConfig& cfg);
RunDiagnostics run(CellField field, const FluxSpec& spec, const RunConfig& cfg);

}  // namespace burgerslab
