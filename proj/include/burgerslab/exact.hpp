#pragma once

#include <vector>

namespace burgerslab {

// Self-similar N-wave of the d-dimensional Burgers family, evaluated along
// the first axis (the solution is one-dimensional in y_1 and constant in the
// remaining variables within its slab):
//   N_L(t, y1) = y1 / (1 + t) on 0 < y1 < L * sqrt(1 + t), else 0.
double n_wave(double L, double t, double y1);

// || N_L(t, .) ||_{L^p(R)} in the first variable, closed form:
//   ( L^{p+1} / (p+1) )^{1/p} * (1 + t)^{(1-p)/(2p)},  p >= 1 finite.
double n_wave_lp_norm(double L, double t, double p);

// Entropy solution of the 1-D Riemann problem for f(s) = s^2/2 at y/t:
// shock for uL > uR (speed (uL+uR)/2), rarefaction fan for uL < uR.
double riemann_burgers_1d(double uL, double uR, double t, double y);

}  // namespace burgerslab
