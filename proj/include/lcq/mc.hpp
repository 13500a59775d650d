#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "lcq/function.hpp"
#include "lcq/parallel.hpp"
#include "lcq/rng.hpp"
#include "lcq/subspace.hpp"

namespace lcq {

struct LevelSetOracle;      // projection.hpp
struct VerificationReport;  // report.hpp

// Budgets for Monte Carlo estimators. Results are pure functions of
// (inputs, seed): counter-based streams keyed by (seed, purpose, index) make
// every estimate independent of the worker count and of suite composition.
struct McSpec {
  int64_t samples = 1'000'000;      // function-mass integrals
  uint64_t seed = 42;
  int64_t inner_samples = 8192;     // nested per-subspace estimates
  int64_t subspaces = 4096;         // Grassmannian integrals
  int64_t volume_samples = 100'000; // hit-or-miss set volumes
  int64_t directions = 64;          // spherical averages per subspace
  int profile_points = 96;          // radial profile resolution
  int level_points = 8;             // Gauss-Legendre points per level panel
  par::Exec exec = par::Exec::Parallel;

  McSpec with_seed(uint64_t s) const {
    McSpec c = *this;
    c.seed = s;
    return c;
  }
};

struct McEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
  int64_t samples = 0;
  uint64_t seed = 0;
  std::string scheme;
};

// ||f||_1 by importance sampling with the decay envelope as radial proposal.
McEstimate mass(const FunctionDescriptor& f, const McSpec& mc);

// Hit-or-miss volume of a membership set inside the centered ball of radius
// `enclosing_radius`; stderr from the binomial model.
McEstimate set_volume_membership(int dim, const std::function<bool(const Vec&)>& contains,
                                 double enclosing_radius, const McSpec& mc,
                                 const std::string& tag = "set-volume");
McEstimate set_volume(const LevelSetOracle& level_set, const McSpec& mc);

// Sample mean over Haar subspace draws of `statistic`; the subspace index is
// passed so nested estimators can derive their own deterministic streams.
McEstimate grassmann_integrate(const std::function<double(const Subspace&, uint64_t)>& statistic,
                               int n, int m, const McSpec& mc,
                               const std::string& tag = "grassmann");

// Barycenter estimate (importance sampling), with per-coordinate stderr.
struct BarycenterEstimate {
  Vec bar;
  Vec stderr_;
  McEstimate total_mass;
};
BarycenterEstimate barycenter(const FunctionDescriptor& f, const McSpec& mc);

// Functional Grinberg inequality:
//   int_{G_{n,m}} ||f|_H||_1^n / ||f|_H||_inf^{n-m} dnu <= (omega_m^n/omega_n^m) ||f||_1^m.
// The restricted sup-norm comes from family metadata (geometric families: 1).
VerificationReport grinberg_functional_check(const FunctionDescriptor& f, int m, const McSpec& mc);

// Mass of a section f|_H (helper shared by Psi_k and the Grinberg check).
McEstimate section_mass(const FunctionDescriptor& f, const Subspace& H, int64_t samples,
                        rng::Stream stream);
double section_mass_value(const FunctionDescriptor& f, const Subspace& H, int64_t samples,
                          rng::Stream stream);

// ||P_E f||_1: importance sampling on E with fiber maximization per sample.
McEstimate projection_mass(const FunctionDescriptor& f, const Subspace& E, int64_t samples,
                           rng::Stream stream);

class StarBody;  // starbody.hpp

// |K| = omega_n * E[rho^n] by spherical Monte Carlo of the radial oracle.
McEstimate body_volume_radial(const StarBody& K, const McSpec& mc,
                              const std::string& tag = "body-volume");
// |K cap H| = omega_m * E[rho^m] over S^{n-1} cap H, H of dimension m.
double body_section_volume_value(const StarBody& K, const Subspace& H, int64_t directions,
                                 rng::Stream stream);

}  // namespace lcq
