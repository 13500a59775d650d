#pragma once

#include "lcq/function.hpp"
#include "lcq/mc.hpp"
#include "lcq/quadrature.hpp"
#include "lcq/report.hpp"
#include "lcq/starbody.hpp"
#include "lcq/subspace.hpp"

namespace lcq {

// Radial function of the Ball body K_p(f):
//   rho(xi) = ( (1/f(0)) int_0^inf p r^{p-1} f(r xi) dr )^{1/p}.
// Adaptive quadrature runs in the log domain; the tail beyond the truncation
// radius is bounded through the decay certificate. For s-concave f the moment
// must satisfy p < alpha = n - 1/s.
double radial(const FunctionDescriptor& f, double p, const Vec& xi, const QuadratureSpec& quad = {});

// K_p(f) as a star body; convex for log-concave f (checked statistically by
// the test suite, never assumed by downstream code).
StarBody ball_body(const FunctionDescriptor& f, double p, const QuadratureSpec& quad = {});

// f(0) |K_n(f)| by spherical Monte Carlo of rho^n; equals ||f||_1.
McEstimate mass_via_body(const FunctionDescriptor& f, const McSpec& mc,
                         const QuadratureSpec& quad = {});

// f(0) |K_{n-k}(f) cap E| vs the direct mass of f|_E, E of dimension n-k.
VerificationReport section_volume_identity(const FunctionDescriptor& f, const Subspace& E,
                                           const McSpec& mc, const QuadratureSpec& quad = {});

// K_p(f) subset (||f||_inf/f(0))^{1/p-1/q} K_q(f) for bounded f, p <= q,
// checked radially on sampled directions.
VerificationReport inclusion_any_g(const FunctionDescriptor& f, double p, double q,
                                   int directions, uint64_t seed, const QuadratureSpec& quad = {});

// Gamma(p+1)^{1/p}/Gamma(q+1)^{1/q} K_q(f) subset K_p(f) for log-concave f.
VerificationReport inclusion_log_concave(const FunctionDescriptor& f, double p, double q,
                                         int directions, uint64_t seed,
                                         const QuadratureSpec& quad = {});

// K_q(f) subset [(qB(q,a-q))^{1/q}/(pB(p,a-p))^{1/p}] K_p(f) for the density
// of an s-concave measure, s < 0, p <= q < a = n - 1/s.
VerificationReport inclusion_s_concave(const FunctionDescriptor& f, double p, double q,
                                       int directions, uint64_t seed,
                                       const QuadratureSpec& quad = {});

}  // namespace lcq
