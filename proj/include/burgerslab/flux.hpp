#pragma once

#include "burgerslab/polynomial.hpp"
#include "burgerslab/util.hpp"

#include <json.hpp>

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace burgerslab {

// Flux family f = (f_1, ..., f_n) of a scalar conservation law in
// d = 1 + n variables (one time-like direction plus n flux directions).
//
//   monomial:   f_j(s) = s^{k_j} / k_j, integer exponents 2 <= k_1 < ... < k_n
//   polynomial: arbitrary coefficients with zero constant and linear terms
//
// The multi-dimensional Burgers family is monomial with k = (2, 3, ..., n+1).
class FluxSpec {
public:
    static FluxSpec monomial(std::vector<int> exponents);
    static FluxSpec polynomial(std::vector<std::vector<double>> coefficients);
    static FluxSpec burgers(int d);  // k = (2, ..., d)

    int n() const { return n_; }
    int d() const { return n_ + 1; }
    bool is_monomial() const { return monomial_; }
    // True iff this is exactly the Burgers family in its dimension.
    bool is_burgers() const;
    const std::vector<int>& exponents() const { return exponents_; }

    // j is zero-based: flux(0, .) is the component along the first space axis.
    double flux(int j, double s) const;
    double flux_deriv(int j, double s) const;
    double flux_second_deriv(int j, double s) const;

    // Euclidean norm of the curvature vector (f_1'', ..., f_n'')(s).
    double curvature_norm(double s) const;

    // Polynomial views (monomial components are materialised as polynomials
    // for root finding and moment-matrix entries; evaluation stays on the
    // exact ipow path).
    const Polynomial& poly(int j) const { return polys_[static_cast<size_t>(j)]; }
    const Polynomial& dpoly(int j) const { return dpolys_[static_cast<size_t>(j)]; }
    const Polynomial& ddpoly(int j) const { return ddpolys_[static_cast<size_t>(j)]; }

    nlohmann::json to_json() const;
    static FluxSpec from_json(const nlohmann::json& j);

private:
    FluxSpec() = default;
    void build_polys();

    int n_ = 0;
    bool monomial_ = true;
    std::vector<int> exponents_;                     // monomial only
    std::vector<std::vector<double>> coefficients_;  // polynomial only
    std::vector<Polynomial> polys_, dpolys_, ddpolys_;
};

// ----------------------------------------------------------------- entropy

// Selector for an entropy / entropy-flux pair.
//   kruzhkov    eta_a(s) = |s - a|,           q_j = sgn(s - a)(f_j(s) - f_j(a))
//   quadratic   eta(s)   = s^2 / 2,           q_j = int_0^s z f_j'(z) dz
//   power(j)    eta(s)   = s^j / j  (s >= 0), q_i = int_0^s z^{j-1} f_i'(z) dz
//   phi         eta = phi (see ConvexProfile), q_j = int_0^s phi'(z) f_j'(z) dz
struct EntropyId {
    enum class Kind { kruzhkov, quadratic, power, phi } kind = Kind::quadratic;
    double a = 0.0;  // kruzhkov reference state
    int j = 2;       // power exponent, integer >= 1

    static EntropyId kruzhkov(double a);
    static EntropyId quadratic();
    static EntropyId power(int j);
    static EntropyId phi();
    std::string label() const;  // column-name-safe tag, e.g. "kruzhkov_a0.5"
};

// Convex function with prescribed curvature: value(0) = deriv(0) = 0 and
// value'' = weight (weight >= 0).  Evaluated as the single integrals
//   value(s) = int_0^s (s - z) w(z) dz,   deriv(s) = int_0^s w(z) dz,
// by adaptive Gauss-Kronrod with relative tolerance tol.
class ConvexProfile {
public:
    ConvexProfile(std::function<double(double)> weight, double rel_tol = 1e-10);
    double value(double s) const;
    double deriv(double s) const;
    double rel_tol() const { return tol_; }

private:
    std::function<double(double)> w_;
    double tol_;
};

// phi of the flux family: phi'' = |f''| (Euclidean norm of the curvature
// vector), phi(0) = phi'(0) = 0.
ConvexProfile phi_profile(const FluxSpec& spec, double rel_tol = 1e-10);

// Entropy pair prepared against a fixed flux family: closed forms for the
// kruzhkov / quadratic / power kinds, quadrature only for phi.
class PreparedEntropy {
public:
    PreparedEntropy(const FluxSpec& spec, const EntropyId& id);

    const EntropyId& id() const { return id_; }
    double eta(double s) const;
    double q(int j, double s) const;

private:
    EntropyId id_;
    FluxSpec spec_;
    std::vector<double> f_at_a_;            // kruzhkov: f_j(a)
    std::vector<Polynomial> q_closed_;      // quadratic / power: exact antiderivatives
    std::shared_ptr<ConvexProfile> phi_;    // phi only
};

// ----------------------------------------------------------------- godunov

// Godunov interface flux along axis j together with the state omega that
// realises it:  uL <= uR -> min of f_j on [uL, uR],  uL > uR -> max on
// [uR, uL].  The numerical entropy flux of ANY entropy pair at this
// interface is q(omega), which is what makes the discrete cell entropy
// inequality hold without tuning.
struct InterfaceFlux {
    double flux;
    double omega;
};

InterfaceFlux godunov_interface(const FluxSpec& spec, int j, double uL, double uR);

double numerical_entropy_flux(const FluxSpec& spec, const PreparedEntropy& e,
                              int j, double uL, double uR);

// max over j and s in [lo, hi] of |f_j'(s)| per axis (vector of length n).
std::vector<double> max_wave_speeds(const FluxSpec& spec, double lo, double hi);

// [min, max] of f_j'(s) over s in [lo, hi], one pair per axis.  Signed
// speeds drive the automatic domain sizing.
std::vector<std::pair<double, double>> wave_speed_range(const FluxSpec& spec,
                                                        double lo, double hi);

}  // namespace burgerslab
