#pragma once

#include <functional>
#include <vector>

#include "lcq/function.hpp"

namespace lcq {

// Controls the adaptive radial quadrature. `truncation` = 0 derives the
// cut-off radius from the decay certificate so that the analytic tail bound
// stays below abs_tol.
struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  double truncation = 0.0;
  int max_panels = 256;
};

// log of integral_0^rmax exp(lg(r)) dr by adaptive 15-point Gauss-Kronrod,
// evaluated in the log domain so large moment exponents cannot overflow.
// Returns -inf for an identically vanishing integrand.
double log_adaptive_integral(const std::function<double(double)>& lg, double rmax,
                             const QuadratureSpec& spec);

// Truncation radius T with A * int_T^inf p r^{p-1} env(r) dr < abs_tol, from
// the decay certificate. Throws if the moment diverges (power envelope with
// p >= alpha).
double moment_tail_radius(const DecayCert& decay, double p, double abs_tol);

// Analytic bound on the tail A * int_T^inf p r^{p-1} env(r) dr.
double moment_tail_bound(const DecayCert& decay, double p, double T);

// Nodes/weights of an N-point Gauss-Legendre rule on [a, b].
struct GaussLegendre {
  std::vector<double> x, w;
};
GaussLegendre gauss_legendre(int n, double a, double b);

// Quadrature grid for level integrals int_0^sup H(t) dt with the log
// substitution t = sup * e^{-s}: nodes t_i and weights w_i such that
// int H(t) dt ~= sum w_i H(t_i). Panels refine geometrically near s = 0 and
// extend to s_max, beyond which the integrand is negligible for functions
// with an integrable decay certificate.
struct LevelGrid {
  std::vector<double> t, w;
  bool two_level = false;  // indicator shortcut: single representative level
};
LevelGrid make_level_grid(double sup, int points_per_panel = 8, double s_max = 46.0);
LevelGrid make_indicator_grid();

}  // namespace lcq
