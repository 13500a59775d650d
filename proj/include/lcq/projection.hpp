#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "lcq/function.hpp"
#include "lcq/optimize.hpp"
#include "lcq/starbody.hpp"
#include "lcq/subspace.hpp"

namespace lcq {

struct McSpec;            // mc.hpp
struct VerificationReport;  // report.hpp

// The restriction f|_E of f onto E, as a function on R^m in frame coordinates.
FunctionDescriptor section(const FunctionDescriptor& f, const Subspace& E);

struct ProjectOpts {
  double tol = 1e-8;
  CoordSearchOpts search;
  double fiber_radius = 0.0;  // 0 = derive from the decay certificate
};

struct FiberResult {
  double value = 0.0;  // sup of f over the fiber z + E^perp
  Vec w;               // argmax in complement coordinates
  bool converged = true;
  bool feasible = true;  // fiber meets the support of f
};

// Maximizes f over fibers z + E^perp. Constructed once per (f, E); reusable
// across base points, optionally warm-started. For indicators the problem is
// pure fiber feasibility, solved in closed form for ellipsoids and by linear
// interval arithmetic for boxes; smooth families minimize the convex
// objective chi by golden-section coordinate descent.
class FiberSolver {
 public:
  FiberSolver(const FunctionDescriptor& f, const Subspace& E, const ProjectOpts& opts = {});

  FiberResult maximize(const Vec& z, const Vec* hint = nullptr) const;
  bool fallback_search() const { return fallback_; }  // no convex structure (caveat)
  const Subspace& subspace() const { return E_; }
  const FunctionDescriptor& function() const { return *f_; }
  int fiber_dim() const { return d_; }

 private:
  struct LineInterval {
    double lo, hi;
    bool empty;
  };
  bool feasibility_stage(const Vec& x0, Vec& w, double scale) const;
  LineInterval feasible_interval(const Vec& xc, const Vec& dir, double radius) const;

  std::shared_ptr<const FunctionDescriptor> f_;
  Subspace E_;
  ProjectOpts opts_;
  int d_ = 0;         // fiber dimension
  double radius_ = 0; // fiber search box
  bool fallback_ = false;
  rng::Stream restarts_;
  // precomputed least-squares data for ellipsoid restrictions
  std::optional<Eigen::ColPivHouseholderQR<Mat>> ls_;
  Mat ud_;  // inv_map * comp
};

// The shadow P_E f on E (frame coordinates), evaluated through FiberSolver.
FunctionDescriptor project(const FunctionDescriptor& f, const Subspace& E,
                           const ProjectOpts& opts = {});

// Level set R_t(f) = {x : f(x) >= t} with an enclosing radius from the decay
// certificate (analytic radius preferred when present).
struct LevelSetOracle {
  FunctionDescriptor source;
  double level = 0.0;
  bool empty = false;       // t > ||f||_inf (flagged, volume 0)
  bool degenerate = false;  // t == ||f||_inf: possibly a single point
  double enclosing_radius = 0.0;

  bool contains(const Vec& x) const { return !empty && source(x) >= level; }
};
LevelSetOracle level_set(const FunctionDescriptor& f, double t);

// Monotone radial profile of a nonincreasing ray function r -> g(r) (either
// P_E f(r xi) or f(r xi) for a function with its maximum at the origin).
// Supports the level inversion rho(t) = sup{r : g(r) >= t}, i.e. the radial
// function of the level set, via monotone cubic interpolation of log g.
class RayProfile {
 public:
  double rho(double t) const;
  double value(double r) const;
  double support_end() const { return jump_ >= 0.0 ? jump_ : r_max_; }
  double r_max() const { return r_max_; }

  // Builds the profile of `eval` on [0, r_end], where r_end is located by
  // bisection of the threshold g < t_floor*sup inside [0, r_cap]; an exact
  // support jump (indicator boundary) is bisected separately.
  static RayProfile build(const std::function<double(double)>& eval, double sup, double r_cap,
                          int points, double t_floor, bool pure_indicator);

 private:
  void finalize_slopes();
  std::vector<double> r_, logv_, slope_;
  double r_max_ = 0.0;
  double jump_ = -1.0;  // exact support end when the profile hits zero
  double log_floor_ = 0.0;
};

// Profile of P_E f along a unit direction xi of E (frame coordinates);
// geometric f (maximum at the origin) makes it nonincreasing.
RayProfile projected_ray_profile(const FiberSolver& solver, const Vec& xi, int points = 96,
                                 double t_floor = 1e-20);

// Profile of f itself along a full-space unit direction; radial function of
// R_t(f) in that direction.
RayProfile function_ray_profile(const FunctionDescriptor& f, const Vec& xi, int points = 96,
                                double t_floor = 1e-20);

struct FradeliziOpts {
  bool auto_center = true;  // re-center at the Monte Carlo barycenter
  double tol = 1e-9;
};

// Fradelizi's inequality ||f||_inf <= e^n f(0) for centered log-concave
// probability densities (scale-invariant, so no explicit normalization).
VerificationReport fradelizi_check(const FunctionDescriptor& f, const McSpec& mc,
                                   const FradeliziOpts& opts = {});

}  // namespace lcq
