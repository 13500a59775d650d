#pragma once

#include <Eigen/Dense>
#include <functional>

#include "lcq/rng.hpp"

namespace lcq {

using Vec = Eigen::VectorXd;

// Golden-section minimization on [a,b]; assumes h is unimodal there
// (+infinity plateaus at the ends are fine). Returns the abscissa.
double golden_min(const std::function<double(double)>& h, double a, double b, double tol,
                  int max_iter = 200);

struct CoordSearchOpts {
  int restarts = 5;        // scaled Gaussian starts in addition to the origin
  int max_sweeps = 200;    // coordinate sweeps per start
  double step_tol = 1e-9;  // stop when no coordinate moved more than this
  double line_tol = 1e-10; // golden-section tolerance per line search
  // Starts whose minima already agree this closely end the restart loop early;
  // for a convex objective every start converges to the same value.
  double agree_tol = 1e-12;
};

struct CoordResult {
  Vec arg;
  double value = 0.0;
  bool converged = false;
  int sweeps = 0;
};

// Multi-start coordinate descent with golden-section line searches over the
// box |w_i| <= radius. Sound for convex objectives (any local minimum is
// global); the restarts guard the flat regions of indicator-type objectives.
CoordResult coordinate_min(const std::function<double(const Vec&)>& obj, int dim, double radius,
                           rng::Stream stream, const CoordSearchOpts& opts = {},
                           const Vec* hint = nullptr);

}  // namespace lcq
