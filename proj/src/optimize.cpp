#include "lcq/optimize.hpp"

#include <cmath>
#include <limits>

namespace lcq {

double golden_min(const std::function<double(double)>& h, double a, double b, double tol,
                  int max_iter) {
  static const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double hc = h(c), hd = h(d);
  for (int i = 0; i < max_iter && (b - a) > tol; ++i) {
    if (hc <= hd) {
      b = d;
      d = c;
      hd = hc;
      c = b - invphi * (b - a);
      hc = h(c);
    } else {
      a = c;
      c = d;
      hc = hd;
      d = a + invphi * (b - a);
      hd = h(d);
    }
  }
  return 0.5 * (a + b);
}

CoordResult coordinate_min(const std::function<double(const Vec&)>& obj, int dim, double radius,
                           rng::Stream stream, const CoordSearchOpts& opts, const Vec* hint) {
  CoordResult best;
  best.value = std::numeric_limits<double>::infinity();
  best.arg = Vec::Zero(dim);

  const int total_starts = 1 + (hint ? 1 : 0) + opts.restarts;
  int agreeing = 0;
  for (int s = 0; s < total_starts; ++s) {
    Vec w;
    if (s == 0 && hint) {
      w = *hint;
    } else if ((s == 0 && !hint) || (s == 1 && hint)) {
      w = Vec::Zero(dim);
    } else {
      w = Vec(dim);
      const rng::Stream st = stream.sub(static_cast<uint64_t>(s));
      for (int i = 0; i < dim; ++i) w[i] = (radius / 3.0) * st.normal(static_cast<uint64_t>(i));
      for (int i = 0; i < dim; ++i) w[i] = std::clamp(w[i], -radius, radius);
    }

    double value = obj(w);
    bool converged = false;
    int sweeps = 0;
    Vec probe = w;
    for (; sweeps < opts.max_sweeps; ++sweeps) {
      double max_step = 0.0;
      for (int i = 0; i < dim; ++i) {
        probe = w;
        auto line = [&](double t) {
          probe[i] = t;
          return obj(probe);
        };
        const double wi = golden_min(line, -radius, radius, opts.line_tol);
        max_step = std::max(max_step, std::fabs(wi - w[i]));
        w[i] = wi;
      }
      value = obj(w);
      if (max_step < opts.step_tol) {
        converged = true;
        break;
      }
    }

    const bool agrees = std::fabs(value - best.value) <=
                        opts.agree_tol * std::max({1.0, std::fabs(value), std::fabs(best.value)});
    if (value < best.value) {
      best.arg = w;
      best.value = value;
      best.converged = converged;
      best.sweeps = sweeps;
    }
    if (agrees && std::isfinite(value)) {
      if (++agreeing >= 1 && s >= 1) break;
    }
  }
  return best;
}

}  // namespace lcq
