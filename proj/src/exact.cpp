#include "burgerslab/exact.hpp"

#include <cmath>
#include <stdexcept>

namespace burgerslab {

double n_wave(double L, double t, double y1) {
    if (!(L > 0.0)) throw std::invalid_argument("n_wave: L must be > 0");
    if (t < 0.0) throw std::invalid_argument("n_wave: t must be >= 0");
    const double edge = L * std::sqrt(1.0 + t);
    return (y1 > 0.0 && y1 < edge) ? y1 / (1.0 + t) : 0.0;
}

double n_wave_lp_norm(double L, double t, double p) {
    if (!(L > 0.0)) throw std::invalid_argument("n_wave_lp_norm: L must be > 0");
    if (t < 0.0) throw std::invalid_argument("n_wave_lp_norm: t must be >= 0");
    if (!(p >= 1.0)) throw std::invalid_argument("n_wave_lp_norm: p must be >= 1");
    // int_0^{L sqrt(1+t)} (y/(1+t))^p dy = L^{p+1} (1+t)^{(1-p)/2} / (p+1)
    return std::pow(std::pow(L, p + 1.0) / (p + 1.0), 1.0 / p) *
           std::pow(1.0 + t, (1.0 - p) / (2.0 * p));
}

double riemann_burgers_1d(double uL, double uR, double t, double y) {
    if (t < 0.0) throw std::invalid_argument("riemann: t must be >= 0");
    if (t == 0.0) return y < 0.0 ? uL : uR;
    if (uL > uR) {
        const double sigma = 0.5 * (uL + uR);
        return y < sigma * t ? uL : uR;
    }
    if (uL < uR) {
        const double xi = y / t;
        if (xi <= uL) return uL;
        if (xi >= uR) return uR;
        return xi;
    }
    return uL;
}

}  // namespace burgerslab
