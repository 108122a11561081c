#include "burgerslab/flux.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace burgerslab {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

double adaptive_integral(const std::function<double(double)>& g, double a, double b,
                         double rel_tol) {
    if (a == b) return 0.0;
    return GK::integrate(g, a, b, 15, rel_tol);
}

}  // namespace

// --------------------------------------------------------------- Polynomial

std::vector<double> real_roots_in(const Polynomial& p, double lo, double hi) {
    std::vector<double> roots;
    if (lo > hi) std::swap(lo, hi);
    const int deg = p.degree();
    if (deg <= 0) return roots;  // constant: no isolated roots worth reporting
    // Sample densely enough that adjacent roots of a degree-deg polynomial
    // separate; deg alternations need > deg intervals, use a safe multiple.
    const int cells = std::max(64, deg * 16);
    const double step = (hi - lo) / cells;
    double xa = lo, fa = p.eval(xa);
    for (int i = 1; i <= cells; ++i) {
        const double xb = (i == cells) ? hi : lo + i * step;
        const double fb = p.eval(xb);
        if (fa == 0.0) roots.push_back(xa);
        if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0)) {
            double a = xa, b = xb, va = fa;
            for (int it = 0; it < 200 && (b - a) > 1e-14 * std::max(1.0, std::abs(a)); ++it) {
                const double m = 0.5 * (a + b);
                const double vm = p.eval(m);
                if (vm == 0.0) {
                    a = b = m;
                    break;
                }
                if ((va < 0.0) == (vm < 0.0)) {
                    a = m;
                    va = vm;
                } else {
                    b = m;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        xa = xb;
        fa = fb;
    }
    if (fa == 0.0) roots.push_back(xa);
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-13; }),
                roots.end());
    return roots;
}

// ----------------------------------------------------------------- FluxSpec

FluxSpec FluxSpec::monomial(std::vector<int> exponents) {
    if (exponents.empty())
        throw ConfigError("flux: monomial family needs at least one exponent");
    int prev = 1;
    for (int k : exponents) {
        if (k < 2) throw ConfigError("flux: monomial exponents must be >= 2");
        if (k <= prev) throw ConfigError("flux: monomial exponents must be strictly increasing");
        if (k > 64) throw ConfigError("flux: monomial exponent too large (max 64)");
        prev = k;
    }
    FluxSpec s;
    s.monomial_ = true;
    s.exponents_ = std::move(exponents);
    s.n_ = static_cast<int>(s.exponents_.size());
    s.build_polys();
    return s;
}

FluxSpec FluxSpec::polynomial(std::vector<std::vector<double>> coefficients) {
    if (coefficients.empty())
        throw ConfigError("flux: polynomial family needs at least one component");
    for (const auto& c : coefficients) {
        if (c.size() >= 1 && c[0] != 0.0)
            throw ConfigError("flux: polynomial constant term must be zero");
        if (c.size() >= 2 && c[1] != 0.0)
            throw ConfigError("flux: polynomial linear term must be zero");
        if (c.size() > 65)
            throw ConfigError("flux: polynomial degree too large (max 64)");
        bool any = false;
        for (double v : c) {
            if (!std::isfinite(v)) throw ConfigError("flux: non-finite coefficient");
            if (v != 0.0) any = true;
        }
        if (!any) throw ConfigError("flux: zero polynomial component");
    }
    FluxSpec s;
    s.monomial_ = false;
    s.coefficients_ = std::move(coefficients);
    s.n_ = static_cast<int>(s.coefficients_.size());
    s.build_polys();
    return s;
}

FluxSpec FluxSpec::burgers(int d) {
    if (d < 2) throw ConfigError("flux: burgers family needs d >= 2");
    std::vector<int> k;
    for (int j = 2; j <= d; ++j) k.push_back(j);
    return monomial(std::move(k));
}

bool FluxSpec::is_burgers() const {
    if (!monomial_) return false;
    for (int j = 0; j < n_; ++j)
        if (exponents_[static_cast<size_t>(j)] != j + 2) return false;
    return true;
}

void FluxSpec::build_polys() {
    polys_.clear();
    dpolys_.clear();
    ddpolys_.clear();
    for (int j = 0; j < n_; ++j) {
        Polynomial p;
        if (monomial_) {
            const int k = exponents_[static_cast<size_t>(j)];
            p.c.assign(static_cast<size_t>(k) + 1, 0.0);
            p.c[static_cast<size_t>(k)] = 1.0 / k;
        } else {
            p.c = coefficients_[static_cast<size_t>(j)];
        }
        dpolys_.push_back(p.derivative());
        ddpolys_.push_back(dpolys_.back().derivative());
        polys_.push_back(std::move(p));
    }
}

double FluxSpec::flux(int j, double s) const {
    if (monomial_) {
        const int k = exponents_[static_cast<size_t>(j)];
        return ipow(s, k) / k;
    }
    return polys_[static_cast<size_t>(j)].eval(s);
}

double FluxSpec::flux_deriv(int j, double s) const {
    if (monomial_) return ipow(s, exponents_[static_cast<size_t>(j)] - 1);
    return dpolys_[static_cast<size_t>(j)].eval(s);
}

double FluxSpec::flux_second_deriv(int j, double s) const {
    if (monomial_) {
        const int k = exponents_[static_cast<size_t>(j)];
        return (k - 1) * ipow(s, k - 2);
    }
    return ddpolys_[static_cast<size_t>(j)].eval(s);
}

double FluxSpec::curvature_norm(double s) const {
    if (n_ == 1) return std::abs(flux_second_deriv(0, s));
    double acc = 0.0;
    for (int j = 0; j < n_; ++j) {
        const double c = flux_second_deriv(j, s);
        acc += c * c;
    }
    return std::sqrt(acc);
}

nlohmann::json FluxSpec::to_json() const {
    nlohmann::json j;
    j["n"] = n_;
    j["kind"] = monomial_ ? "monomial" : "polynomial";
    if (monomial_)
        j["exponents"] = exponents_;
    else
        j["coefficients"] = coefficients_;
    return j;
}

FluxSpec FluxSpec::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("flux: expected an object");
    if (!j.contains("kind") || !j["kind"].is_string())
        throw ConfigError("flux: missing kind");
    const std::string kind = j["kind"].get<std::string>();
    FluxSpec s = [&] {
        if (kind == "monomial") {
            if (!j.contains("exponents")) throw ConfigError("flux: monomial needs exponents");
            return monomial(j["exponents"].get<std::vector<int>>());
        }
        if (kind == "polynomial") {
            if (!j.contains("coefficients"))
                throw ConfigError("flux: polynomial needs coefficients");
            return polynomial(j["coefficients"].get<std::vector<std::vector<double>>>());
        }
        throw ConfigError("flux: unknown kind '" + kind + "'");
    }();
    if (j.contains("n") && j["n"].get<int>() != s.n())
        throw ConfigError("flux: declared n does not match component count");
    return s;
}

// ---------------------------------------------------------------- EntropyId

EntropyId EntropyId::kruzhkov(double a) {
    EntropyId e;
    e.kind = Kind::kruzhkov;
    e.a = a;
    return e;
}
EntropyId EntropyId::quadratic() {
    EntropyId e;
    e.kind = Kind::quadratic;
    return e;
}
EntropyId EntropyId::power(int j) {
    if (j < 1) throw ConfigError("entropy: power exponent must be >= 1");
    EntropyId e;
    e.kind = Kind::power;
    e.j = j;
    return e;
}
EntropyId EntropyId::phi() {
    EntropyId e;
    e.kind = Kind::phi;
    return e;
}

std::string EntropyId::label() const {
    switch (kind) {
        case Kind::kruzhkov: {
            std::ostringstream os;
            os << "kruzhkov_a" << a;
            return os.str();
        }
        case Kind::quadratic:
            return "quadratic";
        case Kind::power:
            return "power_" + std::to_string(j);
        case Kind::phi:
            return "phi";
    }
    return "?";
}

// ------------------------------------------------------------ ConvexProfile

ConvexProfile::ConvexProfile(std::function<double(double)> weight, double rel_tol)
    : w_(std::move(weight)), tol_(rel_tol) {}

double ConvexProfile::value(double s) const {
    if (s == 0.0) return 0.0;
    // Oriented int_0^s (s - z) w(z) dz is >= 0 on both sides of 0: for s < 0
    // the measure and the factor (s - z) flip sign together.
    const auto g = [&](double z) { return (s - z) * w_(z); };
    return adaptive_integral(g, 0.0, s, tol_);
}

double ConvexProfile::deriv(double s) const {
    if (s == 0.0) return 0.0;
    return adaptive_integral(w_, 0.0, s, tol_);
}

ConvexProfile phi_profile(const FluxSpec& spec, double rel_tol) {
    return ConvexProfile([spec](double z) { return spec.curvature_norm(z); }, rel_tol);
}

// ---------------------------------------------------------- PreparedEntropy

PreparedEntropy::PreparedEntropy(const FluxSpec& spec, const EntropyId& id)
    : id_(id), spec_(spec) {
    switch (id_.kind) {
        case EntropyId::Kind::kruzhkov:
            for (int j = 0; j < spec_.n(); ++j) f_at_a_.push_back(spec_.flux(j, id_.a));
            break;
        case EntropyId::Kind::quadratic:
        case EntropyId::Kind::power: {
            // q_i(s) = int_0^s z^{j-1} f_i'(z) dz with j = 2 for quadratic.
            const int jexp = (id_.kind == EntropyId::Kind::quadratic) ? 2 : id_.j;
            Polynomial zpow;
            zpow.c.assign(static_cast<size_t>(jexp), 0.0);
            zpow.c[static_cast<size_t>(jexp - 1)] = 1.0;
            for (int i = 0; i < spec_.n(); ++i)
                q_closed_.push_back((zpow * spec_.dpoly(i)).antiderivative());
            break;
        }
        case EntropyId::Kind::phi:
            phi_ = std::make_shared<ConvexProfile>(phi_profile(spec_));
            break;
    }
}

double PreparedEntropy::eta(double s) const {
    switch (id_.kind) {
        case EntropyId::Kind::kruzhkov:
            return std::abs(s - id_.a);
        case EntropyId::Kind::quadratic:
            return 0.5 * s * s;
        case EntropyId::Kind::power:
            if (s < 0.0)
                throw std::domain_error("power entropy evaluated at a negative state");
            return ipow(s, id_.j) / id_.j;
        case EntropyId::Kind::phi:
            return phi_->value(s);
    }
    return 0.0;
}

double PreparedEntropy::q(int j, double s) const {
    switch (id_.kind) {
        case EntropyId::Kind::kruzhkov: {
            const double sg = (s > id_.a) ? 1.0 : (s < id_.a ? -1.0 : 0.0);
            return sg * (spec_.flux(j, s) - f_at_a_[static_cast<size_t>(j)]);
        }
        case EntropyId::Kind::quadratic:
        case EntropyId::Kind::power:
            if (id_.kind == EntropyId::Kind::power && s < 0.0)
                throw std::domain_error("power entropy flux evaluated at a negative state");
            return q_closed_[static_cast<size_t>(j)].eval(s);
        case EntropyId::Kind::phi: {
            const auto g = [&](double z) { return phi_->deriv(z) * spec_.flux_deriv(j, z); };
            return adaptive_integral(g, 0.0, s, phi_->rel_tol());
        }
    }
    return 0.0;
}

// ------------------------------------------------------------------ godunov

InterfaceFlux godunov_interface(const FluxSpec& spec, int j, double uL, double uR) {
    const bool want_min = (uL <= uR);
    const double lo = std::min(uL, uR), hi = std::max(uL, uR);

    // Candidate minimisers/maximisers: both endpoints plus the interior
    // critical points of f_j.  Scan order is fixed (uL, uR, then critical
    // points ascending) with strict improvement, so ties resolve
    // deterministically.
    double best_v, best_s;
    auto consider = [&](double s, bool first) {
        const double v = spec.flux(j, s);
        if (first || (want_min ? v < best_v : v > best_v)) {
            best_v = v;
            best_s = s;
        }
    };
    consider(uL, true);
    consider(uR, false);
    if (spec.is_monomial()) {
        // f_j' = s^{k-1}: the only stationary point is s = 0.
        if (lo < 0.0 && 0.0 < hi) consider(0.0, false);
    } else {
        for (double r : real_roots_in(spec.dpoly(j), lo, hi)) consider(r, false);
    }
    return {best_v, best_s};
}

double numerical_entropy_flux(const FluxSpec& spec, const PreparedEntropy& e,
                              int j, double uL, double uR) {
    return e.q(j, godunov_interface(spec, j, uL, uR).omega);
}

// --------------------------------------------------------------- wave speed

namespace {

// Candidate extrema of f_j' on [lo, hi]: endpoints plus roots of f_j''.
std::vector<double> deriv_extremum_candidates(const FluxSpec& spec, int j,
                                              double lo, double hi) {
    std::vector<double> cand{lo, hi};
    if (spec.is_monomial()) {
        if (lo < 0.0 && 0.0 < hi) cand.push_back(0.0);
    } else {
        for (double r : real_roots_in(spec.ddpoly(j), lo, hi)) cand.push_back(r);
    }
    return cand;
}

}  // namespace

std::vector<double> max_wave_speeds(const FluxSpec& spec, double lo, double hi) {
    if (lo > hi) std::swap(lo, hi);
    std::vector<double> speeds(static_cast<size_t>(spec.n()), 0.0);
    for (int j = 0; j < spec.n(); ++j) {
        double m = 0.0;
        for (double s : deriv_extremum_candidates(spec, j, lo, hi))
            m = std::max(m, std::abs(spec.flux_deriv(j, s)));
        speeds[static_cast<size_t>(j)] = m;
    }
    return speeds;
}

std::vector<std::pair<double, double>> wave_speed_range(const FluxSpec& spec,
                                                        double lo, double hi) {
    if (lo > hi) std::swap(lo, hi);
    std::vector<std::pair<double, double>> out;
    for (int j = 0; j < spec.n(); ++j) {
        double mn = 0.0, mx = 0.0;
        bool first = true;
        for (double s : deriv_extremum_candidates(spec, j, lo, hi)) {
            const double v = spec.flux_deriv(j, s);
            if (first) {
                mn = mx = v;
                first = false;
            } else {
                mn = std::min(mn, v);
                mx = std::max(mx, v);
            }
        }
        out.emplace_back(mn, mx);
    }
    return out;
}

}  // namespace burgerslab
