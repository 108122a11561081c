#pragma once

#include "burgerslab/flux.hpp"
#include "burgerslab/profiles.hpp"
#include "burgerslab/rational.hpp"
#include "burgerslab/solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace burgerslab {

// ----------------------------------------------------------- exponent sets

// Scaling exponents of the d-dimensional Burgers family, exact rationals:
//   gamma = (d^2+1) / (d (d^2-d+2))          delta = 2(d-1)(d^2-d+1) / (d^2 (d^2-d+2))
//   kappa = 2(d-1) / (d^2-d+2)               nu    = d(d-1) / (d^2-d+2)
//   theta = d(d-1) / (d^2-d+1)               beta  = theta / 2
//   alpha = d(d^2+1) / (2(d-1)(d^2-d+1))     p_star = d^2 / (d-1)
struct ExponentSet {
    int d = 0;
    Rational gamma, delta, kappa, nu, theta, beta, alpha, p_star;
};
ExponentSet burgers_exponents(int d);

// Decay/dispersion constants of a monomial family k_1 < ... < k_n:
//   K = sum k_j,  N = 1 + 2K - n,  admissible iff n k_n < N,
//   theta = (K-n) / ((n+1)(k_n-1)),
//   gamma = n/N + (N-n)/(N(N-K)),  delta = n(N-n)/(N(N-K)),
//   norm exponent N/n.
// The decay pair needs N > K; for valid inputs this always holds, but the
// flag is reported rather than assumed.
struct MonomialConstants {
    std::vector<int> k;
    long long K = 0, N = 0;
    bool admissible = false;
    bool decay_defined = false;
    Rational theta, gamma, delta, norm_exponent;
};
MonomialConstants monomial_constants(const std::vector<int>& k);

// ------------------------------------------------------------------ scaling

// v0(y) = lambda^{-1} u0(lambda^2 y_1, ..., lambda^d y_n).
DataProfile scaling_transform(const DataProfile& p, double lambda);
// The matching grid map: h_j -> h_j / lambda^{j+2} (zero-based j), origin
// likewise; values / lambda, time / lambda.
GridSpec scaled_grid(const GridSpec& g, double lambda);
CellField scaling_transform(const CellField& f, double lambda);
// Moment identity factor:  int v0^j = factor * int u0^j,
// factor = lambda^{-j - (d-1)(d+2)/2}.
double scaling_moment_factor(double lambda, int j, int d);

// ------------------------------------------------------------- power fits

// Least squares of log(value) against log(t).  Requires >= 8 samples with
// t > 0, value > 0; residual is the max |log deviation|.
struct PowerFit {
    double exponent = 0.0;
    double amplitude = 0.0;  // value ~ amplitude * t^exponent
    double max_log_residual = 0.0;
    int samples = 0;
};
PowerFit fit_power_law(const std::vector<double>& t, const std::vector<double>& value);

// ------------------------------------------------------------------ checks

enum class CheckStatus { pass, fail, inconclusive, vacuous };

std::string to_string(CheckStatus s);

struct EstimateReport {
    std::string estimate;
    CheckStatus status = CheckStatus::inconclusive;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;                 // lhs / rhs (or the measured constant)
    std::optional<double> slope;        // fitted exponent where applicable
    std::optional<double> expected_slope;
    std::string note;
    bool pass() const { return status == CheckStatus::pass || status == CheckStatus::vacuous; }
};

// Dispersion estimate with homogeneous right side:
//   (int_0^T int u^{p*})^{(d-1)/d} <= c_d (int u0^d)^{1/2} (int u0)^{1/2}.
// Passes when the ratio is finite and its trailing-half growth stays under
// growth_cap (default: no more than 10% over the trailing half window).
EstimateReport check_estfond(const RunDiagnostics& diag, double growth_cap = 0.10);

// Nonhomogeneous variant:
//   int_0^T int u^{p*} <= c_d (sum_{j=1..d} int u0^j)^{d/(d-1)}.
EstimateReport check_nonhom(const RunDiagnostics& diag, double growth_cap = 0.10);

// Lp decay:  s(t) = ||u(t)||_{p*} t^delta / ||u0||_1^gamma  should stay
// bounded with log-log slope ~ -delta over the window.
EstimateReport check_decay(const RunDiagnostics& diag, double t0, double t1,
                           double slope_tol = 0.02);

// Intermediate exponents 1 < q < d^2/(d-1):
//   s(t) = ||u(t)||_q t^{kappa/q'} / ||u0||_1^{1 - nu/q'}, q' = q/(q-1);
// q >= d^2/(d+1) is outside the stated range of validity and is labelled.
EstimateReport check_gendec(const RunDiagnostics& diag, double q, double t0, double t1,
                            double slope_tol = 0.02);

// One space variable only:  TV(u^2/2)(t) * t <= 2 ||u0||_1 (1 + tol).
EstimateReport check_daf_tv(const RunDiagnostics& diag, double t0, double t1,
                            double tol = 0.05);

// One space variable only:  ||u(t)||_inf <= 2 sqrt(2 ||u0||_1 / t) (1 + tol).
EstimateReport check_heat_linf(const RunDiagnostics& diag, double t0, double t1,
                               double tol = 0.05);

// Integrated dispersion function:  Y(tau) = int_tau^inf X(t) dt with
// X = int u^{p*}, compared against ||u0||_1^alpha X(tau)^beta.  The integral
// is a trapezoid over the dense series plus a fitted power-law tail
// (reported separately); a tail exponent >= -1 is inconclusive.
struct XtauPoint {
    double tau = 0.0;
    double measured = 0.0;  // trapezoid part
    double tail = 0.0;      // fitted extrapolation beyond t_end
    double rhs = 0.0;
    double ratio = 0.0;
};
struct XtauOptions {
    std::vector<double> taus;
    double tail_fit_decade = 10.0;  // fit window [t_end/decade, t_end]
};
EstimateReport check_xtau(const RunDiagnostics& diag, const XtauOptions& opt,
                          std::vector<XtauPoint>* points = nullptr);

// Determinant-weighted dispersion:
//   int_0^T int Delta(u) <= c_d (||u0||_1 + ||phi(u0)||_1)^{1 + 1/n}.
EstimateReport check_cigen(const RunDiagnostics& diag);

// Sharper right side through diagonal scalings P:
//   rhs = (int u0)^{1/n} * min_P (det P)^{1/n} int psi_P(u0),
// psi_P'' = |P^{-1} f''|, P diagonal positive, minimised over a log grid
// (per_decade points per axis per decade, `decades` decades each way,
// widened automatically when the minimiser lands on the grid boundary).
struct GrongenOptions {
    int per_decade = 5;
    double decades = 2.0;
    int max_widenings = 3;
};
EstimateReport check_grongen_diagonal(const RunDiagnostics& diag, const FluxSpec& spec,
                                      const GrongenOptions& opt = {});

}  // namespace burgerslab
