#include "lcq/projection.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "lcq/constants.hpp"
#include "lcq/mc.hpp"
#include "lcq/report.hpp"

namespace lcq {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

FunctionDescriptor section(const FunctionDescriptor& f, const Subspace& E) {
  if (E.ambient_dim != f.dim) throw std::invalid_argument("section: dimension mismatch");
  FunctionDescriptor g;
  g.dim = E.dim;
  g.family = "section:" + f.family;
  auto base = std::make_shared<FunctionDescriptor>(f);
  auto sub = std::make_shared<Subspace>(E);
  g.evaluate = [base, sub](const Vec& z) { return base->evaluate(sub->lift(z)); };
  g.value_at_origin = f.value_at_origin;
  g.sup_norm = f.sup_norm;  // upper bound; exact for rotation-invariant families
  g.decay = f.decay;        // |frame z| = |z|
  g.concavity = f.concavity;
  g.s_param = f.s_param;
  if (f.analytic.level_radius) {
    // Rotation-invariant level balls restrict to level balls.
    g.analytic.level_radius = f.analytic.level_radius;
  }
  if (f.family == "gaussian" || f.family == "exp-norm" || f.family == "power-law") {
    const int m = E.dim;
    if (f.family == "gaussian") {
      // section of e^{-|x|^2/(2 s^2)} is the same profile in dimension m
      const double mass_n = *f.analytic.mass;
      const double sigma = std::pow(mass_n / std::pow(2.0 * constants::kPi, 0.5 * f.dim),
                                    1.0 / f.dim);
      g.analytic.mass = std::pow(2.0 * constants::kPi, 0.5 * m) * std::pow(sigma, m);
    } else if (f.family == "exp-norm") {
      g.analytic.mass = std::exp(std::lgamma(m + 1.0) + constants::log_omega(m));
    } else {
      const double alpha = f.alpha_exponent();
      if (alpha > m)
        g.analytic.mass = m * constants::omega(m) * constants::beta(static_cast<double>(m), alpha - m);
    }
  }
  if (f.ray_support) {
    auto rs = f.ray_support;
    g.ray_support = [rs, sub](const Vec& xi) { return rs(sub->lift(xi)); };
  }
  g.normalized = f.normalized;
  g.sup_attained = f.sup_attained;
  if (f.obj_kind != ObjectiveKind::None && !f.restriction) {
    g.obj_kind = f.obj_kind;
    g.obj_alpha = f.obj_alpha;
    auto chi = f.convex_objective;
    g.convex_objective = [chi, sub](const Vec& z) { return chi(sub->lift(z)); };
  }
  return g;
}

FiberSolver::FiberSolver(const FunctionDescriptor& f, const Subspace& E, const ProjectOpts& opts)
    : f_(std::make_shared<const FunctionDescriptor>(f)), E_(E), opts_(opts) {
  if (E.ambient_dim != f.dim) throw std::invalid_argument("FiberSolver: dimension mismatch");
  d_ = E.ambient_dim - E.dim;
  if (opts.fiber_radius > 0.0) {
    radius_ = opts.fiber_radius;
  } else {
    // Points with f below 1e-18 ||f||_inf never carry the fiber supremum of a
    // quasi-concave function whose value at w=0 competes; the certificate
    // bounds the search box.
    radius_ = f.decay.radius_for(1e-18 * f.sup_norm);
    if (f.restriction)
      radius_ = std::min(radius_, f.restriction->enclosing_radius() * 1.0001 + 1e-9);
  }
  fallback_ = f.obj_kind == ObjectiveKind::None;
  restarts_ = rng::Stream(0x5eedf1be, "fiber-restarts");
  if (f.restriction) {
    const BodyStructure& st = f.restriction->structure();
    if (st.kind != BodyStructure::Kind::None) {
      ud_ = st.inv_map * E.comp;
      if (st.kind == BodyStructure::Kind::Ellipsoid)
        ls_.emplace(ud_);
    }
  }
}

bool FiberSolver::feasibility_stage(const Vec& x0, Vec& w, double scale) const {
  const StarBody& K = *f_->restriction;
  const BodyStructure& st = K.structure();
  if (st.kind == BodyStructure::Kind::Ellipsoid) {
    const Vec ux0 = st.inv_map * x0;
    w = ls_->solve(-ux0);
    const double resid = (ux0 + ud_ * w).norm();
    return resid <= 1.0 + opts_.tol;
  }
  if (st.kind == BodyStructure::Kind::MappedBox) {
    // Minimize the smooth convex penalty sum_j hinge(|(Ux)_j| - h_j)^2.
    const Vec ux0 = st.inv_map * x0;
    auto psi = [&](const Vec& ww) {
      const Vec u = ux0 + ud_ * ww;
      double s = 0.0;
      for (int j = 0; j < u.size(); ++j) {
        const double over = std::fabs(u[j]) - st.half_widths[j];
        if (over > 0.0) s += over * over;
      }
      return s;
    };
    const double floor2 = scale * scale;
    if (psi(w) <= floor2) return true;
    const CoordResult res = coordinate_min(psi, d_, radius_, restarts_, opts_.search, &w);
    w = res.arg;
    return res.value <= floor2;
  }
  // Generic convex gauge descent.
  auto gauge = [&](const Vec& ww) { return K.gauge(x0 + E_.comp * ww); };
  if (gauge(w) <= 1.0 + opts_.tol) return true;
  const CoordResult res = coordinate_min(gauge, d_, radius_, restarts_, opts_.search, &w);
  w = res.arg;
  return res.value <= 1.0 + opts_.tol;
}

FiberSolver::LineInterval FiberSolver::feasible_interval(const Vec& xc, const Vec& dir,
                                                         double radius) const {
  LineInterval iv{-radius, radius, false};
  if (!f_->restriction) return iv;
  const StarBody& K = *f_->restriction;
  const BodyStructure& st = K.structure();
  if (st.kind == BodyStructure::Kind::Ellipsoid) {
    const Vec uc = st.inv_map * xc;
    const Vec udir = st.inv_map * dir;
    const double a = udir.squaredNorm();
    const double b = udir.dot(uc);
    const double c = uc.squaredNorm() - 1.0;
    if (a < 1e-300) {
      iv.empty = c > 0.0;
      return iv;
    }
    const double disc = b * b - a * c;
    if (disc < 0.0) {
      iv.empty = true;
      return iv;
    }
    const double sq = std::sqrt(disc);
    iv.lo = std::max(iv.lo, (-b - sq) / a);
    iv.hi = std::min(iv.hi, (-b + sq) / a);
    iv.empty = iv.lo > iv.hi;
    return iv;
  }
  if (st.kind == BodyStructure::Kind::MappedBox) {
    const Vec uc = st.inv_map * xc;
    const Vec udir = st.inv_map * dir;
    for (int j = 0; j < uc.size(); ++j) {
      const double h = st.half_widths[j];
      if (std::fabs(udir[j]) < 1e-300) {
        if (std::fabs(uc[j]) > h) {
          iv.empty = true;
          return iv;
        }
        continue;
      }
      double t0 = (-h - uc[j]) / udir[j];
      double t1 = (h - uc[j]) / udir[j];
      if (t0 > t1) std::swap(t0, t1);
      iv.lo = std::max(iv.lo, t0);
      iv.hi = std::min(iv.hi, t1);
      if (iv.lo > iv.hi) {
        iv.empty = true;
        return iv;
      }
    }
    return iv;
  }
  // Generic: expand from the (feasible) point at t = 0, then bisect.
  auto inside = [&](double t) { return K.gauge(xc + t * dir) <= 1.0 + opts_.tol; };
  if (!inside(0.0)) {
    iv.empty = true;
    return iv;
  }
  auto edge = [&](double sgn) {
    double good = 0.0, step = 1.0 / 16.0;
    while (good + step <= radius && inside(sgn * (good + step))) {
      good += step;
      step *= 2.0;
    }
    double bad = std::min(radius, good + step);
    if (inside(sgn * bad)) return sgn * bad;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (good + bad);
      (inside(sgn * mid) ? good : bad) = mid;
    }
    return sgn * good;
  };
  iv.hi = std::min(iv.hi, edge(+1.0));
  iv.lo = std::max(iv.lo, edge(-1.0));
  iv.empty = iv.lo > iv.hi;
  return iv;
}

FiberResult FiberSolver::maximize(const Vec& z, const Vec* hint) const {
  if (z.size() != E_.dim) throw std::invalid_argument("FiberSolver: base point dimension mismatch");
  const Vec x0 = E_.frame * z;
  FiberResult out;
  out.w = Vec::Zero(d_);

  if (fallback_) {
    // No convex structure: quasi-concave search on -ln f (caveat).
    auto obj = [&](const Vec& ww) {
      const double v = f_->evaluate(x0 + E_.comp * ww);
      return v > 0.0 ? -std::log(v) : kInf;
    };
    const CoordResult res = coordinate_min(obj, d_, radius_, restarts_, opts_.search,
                                           hint && hint->size() == d_ ? hint : nullptr);
    out.w = res.arg;
    out.converged = res.converged;
    out.feasible = std::isfinite(res.value);
    out.value = out.feasible ? std::exp(-res.value) : 0.0;
    return out;
  }

  const auto recover = [&](double chi) {
    switch (f_->obj_kind) {
      case ObjectiveKind::NegLog:
        return std::exp(-chi);
      case ObjectiveKind::PowerGauge:
        return std::pow(chi, -f_->obj_alpha);
      default:
        return 1.0;
    }
  };

  if (!f_->restriction) {
    auto obj = [&](const Vec& ww) { return f_->convex_objective(x0 + E_.comp * ww); };
    const CoordResult res = coordinate_min(obj, d_, radius_, restarts_, opts_.search,
                                           hint && hint->size() == d_ ? hint : nullptr);
    out.w = res.arg;
    out.converged = res.converged;
    out.value = recover(res.value);
    return out;
  }

  // Restricted: feasibility first, then convex descent over exact feasible
  // line segments.
  Vec w = hint && hint->size() == d_ ? *hint : Vec::Zero(d_);
  const double hscale = opts_.tol * std::max(1.0, f_->restriction->enclosing_radius());
  if (!feasibility_stage(x0, w, hscale)) {
    out.w = w;
    out.feasible = false;
    out.value = 0.0;
    return out;
  }
  out.feasible = true;
  if (f_->obj_kind == ObjectiveKind::Zero) {
    out.w = w;
    out.value = 1.0;
    return out;
  }

  auto chi_at = [&](const Vec& ww) { return f_->convex_objective(x0 + E_.comp * ww); };
  double cur = chi_at(w);
  const int rotated_rounds = 2;
  bool converged = false;
  for (int round = 0; round <= rotated_rounds; ++round) {
    // round 0: canonical axes; later rounds: random orthogonal axes, which
    // free coordinate descent from polytope edges.
    Mat axes = Mat::Identity(d_, d_);
    if (round > 0 && d_ > 1) {
      Mat g(d_, d_);
      const rng::Stream st = restarts_.sub(1000 + static_cast<uint64_t>(round));
      uint64_t c = 0;
      for (int j = 0; j < d_; ++j)
        for (int i = 0; i < d_; ++i) g(i, j) = st.normal(c++);
      axes = Eigen::HouseholderQR<Mat>(g).householderQ();
    }
    int sweeps = 0;
    for (; sweeps < opts_.search.max_sweeps; ++sweeps) {
      double max_step = 0.0;
      for (int i = 0; i < d_; ++i) {
        const Vec dir = E_.comp * axes.col(i);
        const Vec xc = x0 + E_.comp * w;
        const LineInterval iv = feasible_interval(xc, dir, 2.0 * radius_);
        if (iv.empty) continue;
        auto line = [&](double t) { return f_->convex_objective(xc + t * dir); };
        const double t = golden_min(line, iv.lo, iv.hi, opts_.search.line_tol);
        if (std::fabs(t) > 0.0) {
          w += t * axes.col(i);
          max_step = std::max(max_step, std::fabs(t));
        }
      }
      if (max_step < opts_.search.step_tol) {
        converged = true;
        break;
      }
    }
    cur = chi_at(w);
    if (round > 0 && d_ == 1) break;
  }
  out.w = w;
  out.converged = converged;
  out.value = recover(cur);
  return out;
}

FunctionDescriptor project(const FunctionDescriptor& f, const Subspace& E,
                           const ProjectOpts& opts) {
  if (E.ambient_dim != f.dim) throw std::invalid_argument("project: dimension mismatch");
  if (f.concavity == Concavity::None && f.obj_kind == ObjectiveKind::None)
    throw std::invalid_argument("project: fiber maximization needs a quasi-concave function");
  auto solver = std::make_shared<FiberSolver>(f, E, opts);
  FunctionDescriptor g;
  g.dim = E.dim;
  g.family = "projection:" + f.family;
  g.evaluate = [solver](const Vec& z) { return solver->maximize(z).value; };
  g.value_at_origin = g.evaluate(Vec::Zero(E.dim));
  g.sup_norm = f.normalized ? 1.0 : f.sup_norm;
  g.decay = f.decay;  // the fiber through z stays at distance >= |z|
  g.concavity = f.concavity;
  g.s_param = f.s_param;
  const int m = E.dim;
  if (f.family == "gaussian" && f.analytic.mass) {
    const double sigma =
        std::pow(*f.analytic.mass / std::pow(2.0 * constants::kPi, 0.5 * f.dim), 1.0 / f.dim);
    g.analytic.mass = std::pow(2.0 * constants::kPi, 0.5 * m) * std::pow(sigma, m);
    g.analytic.level_radius = f.analytic.level_radius;
  } else if (f.family == "exp-norm") {
    g.analytic.mass = std::exp(std::lgamma(m + 1.0) + constants::log_omega(m));
    g.analytic.level_radius = f.analytic.level_radius;
  }
  g.normalized = f.normalized;
  g.sup_attained = f.sup_attained && !solver->fallback_search();
  return g;
}

LevelSetOracle level_set(const FunctionDescriptor& f, double t) {
  if (t <= 0.0) throw std::invalid_argument("level_set: level must be positive");
  LevelSetOracle ls;
  ls.source = f;
  ls.level = t;
  if (t > f.sup_norm * (1.0 + 1e-12)) {
    ls.empty = true;
    return ls;
  }
  if (t >= f.sup_norm * (1.0 - 1e-12)) ls.degenerate = true;
  if (f.analytic.level_radius)
    ls.enclosing_radius = f.analytic.level_radius(t);
  else
    ls.enclosing_radius = f.decay.radius_for(t);
  return ls;
}

RayProfile RayProfile::build(const std::function<double(double)>& eval, double sup, double r_cap,
                             int points, double t_floor, bool pure_indicator) {
  RayProfile prof;
  const double t_min = t_floor * sup;
  prof.log_floor_ = std::log(t_min);

  auto positive = [&](double r) { return eval(r) > (pure_indicator ? 0.5 : 0.0); };
  if (pure_indicator) {
    prof.r_max_ = r_cap;
    if (!positive(0.0)) {
      prof.jump_ = 0.0;
      prof.r_ = {0.0};
      prof.logv_ = {-kInf};
      return prof;
    }
    double good = 0.0, bad = r_cap;
    if (positive(bad)) {
      prof.jump_ = bad;
    } else {
      for (int it = 0; it < 64; ++it) {
        const double mid = 0.5 * (good + bad);
        (positive(mid) ? good : bad) = mid;
      }
      prof.jump_ = good;
    }
    prof.r_ = {0.0, prof.jump_};
    prof.logv_ = {0.0, 0.0};
    prof.slope_ = {0.0, 0.0};
    return prof;
  }

  // Locate the effective end of the profile: smallest radius where the value
  // falls below t_min (or the support ends), bisected inside [0, r_cap].
  double r_end = r_cap;
  if (eval(r_cap) < t_min) {
    double lo = 0.0, hi = r_cap;
    for (int it = 0; it < 48; ++it) {
      const double mid = 0.5 * (lo + hi);
      (eval(mid) >= t_min ? lo : hi) = mid;
    }
    r_end = hi;
  }
  prof.r_max_ = r_end;

  prof.r_.resize(static_cast<size_t>(points));
  prof.logv_.resize(static_cast<size_t>(points));
  int last_pos = -1;
  for (int i = 0; i < points; ++i) {
    const double r = r_end * i / (points - 1);
    prof.r_[static_cast<size_t>(i)] = r;
    const double v = eval(r);
    if (v > 0.0) {
      last_pos = i;
      double lv = std::log(v);
      if (i > 0 && prof.logv_[static_cast<size_t>(i - 1)] < lv)
        lv = prof.logv_[static_cast<size_t>(i - 1)];
      prof.logv_[static_cast<size_t>(i)] = lv;
    } else {
      prof.logv_[static_cast<size_t>(i)] = -kInf;
    }
  }
  if (last_pos >= 0 && last_pos < points - 1) {
    // Support ends inside the grid: refine the boundary by bisection.
    double good = prof.r_[static_cast<size_t>(last_pos)];
    double bad = prof.r_[static_cast<size_t>(last_pos + 1)];
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (good + bad);
      (positive(mid) ? good : bad) = mid;
    }
    prof.jump_ = good;
    prof.r_.resize(static_cast<size_t>(last_pos + 1));
    prof.logv_.resize(static_cast<size_t>(last_pos + 1));
  }
  prof.finalize_slopes();
  return prof;
}

void RayProfile::finalize_slopes() {
  // Fritsch-Carlson monotone cubic slopes for (r, log v).
  const size_t n = r_.size();
  slope_.assign(n, 0.0);
  if (n < 2) return;
  std::vector<double> d(n - 1, 0.0);
  for (size_t i = 0; i + 1 < n; ++i) {
    const double dr = r_[i + 1] - r_[i];
    d[i] = dr > 0.0 ? (logv_[i + 1] - logv_[i]) / dr : 0.0;
  }
  slope_[0] = d[0];
  slope_[n - 1] = d[n - 2];
  for (size_t i = 1; i + 1 < n; ++i) {
    if (d[i - 1] * d[i] <= 0.0)
      slope_[i] = 0.0;
    else
      slope_[i] = 2.0 * d[i - 1] * d[i] / (d[i - 1] + d[i]);  // harmonic mean
  }
  // Limit to preserve monotonicity.
  for (size_t i = 0; i + 1 < n; ++i) {
    if (d[i] == 0.0) {
      slope_[i] = slope_[i + 1] = 0.0;
    } else {
      const double a = slope_[i] / d[i], b = slope_[i + 1] / d[i];
      const double s = a * a + b * b;
      if (s > 9.0) {
        const double tau = 3.0 / std::sqrt(s);
        slope_[i] = tau * a * d[i];
        slope_[i + 1] = tau * b * d[i];
      }
    }
  }
}

namespace {
// Cubic Hermite on [r0, r1].
double hermite(double r0, double r1, double v0, double v1, double m0, double m1, double r) {
  const double h = r1 - r0;
  const double t = (r - r0) / h;
  const double t2 = t * t, t3 = t2 * t;
  return v0 * (2 * t3 - 3 * t2 + 1) + h * m0 * (t3 - 2 * t2 + t) + v1 * (-2 * t3 + 3 * t2) +
         h * m1 * (t3 - t2);
}
}  // namespace

double RayProfile::rho(double t) const {
  if (r_.empty() || logv_.empty() || logv_[0] == -kInf) return 0.0;
  const double lt = std::log(t);
  if (lt >= logv_[0]) return lt == logv_[0] ? r_[0] : 0.0;
  const size_t last = logv_.size() - 1;
  if (lt <= logv_[last]) return jump_ >= 0.0 ? jump_ : r_max_;
  size_t lo = 0, hi = last;
  while (hi - lo > 1) {
    const size_t mid = (lo + hi) / 2;
    if (logv_[mid] >= lt)
      lo = mid;
    else
      hi = mid;
  }
  // Invert the monotone cubic on [r_lo, r_hi] by bisection.
  double a = r_[lo], b = r_[hi];
  if (logv_[lo] == logv_[hi]) return b;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (a + b);
    const double v = hermite(r_[lo], r_[hi], logv_[lo], logv_[hi], slope_[lo], slope_[hi], mid);
    (v >= lt ? a : b) = mid;
  }
  return 0.5 * (a + b);
}

double RayProfile::value(double r) const {
  if (r_.empty() || logv_[0] == -kInf) return 0.0;
  if (r <= r_[0]) return std::exp(logv_[0]);
  if (jump_ >= 0.0 && r > jump_) return 0.0;
  if (r >= r_.back()) return std::exp(logv_.back());
  size_t lo = 0, hi = r_.size() - 1;
  while (hi - lo > 1) {
    const size_t mid = (lo + hi) / 2;
    if (r_[mid] <= r)
      lo = mid;
    else
      hi = mid;
  }
  return std::exp(hermite(r_[lo], r_[hi], logv_[lo], logv_[hi], slope_[lo], slope_[hi], r));
}

RayProfile projected_ray_profile(const FiberSolver& solver, const Vec& xi, int points,
                                 double t_floor) {
  const FunctionDescriptor& f = solver.function();
  const Subspace& E = solver.subspace();
  if (xi.size() != E.dim) throw std::invalid_argument("projected_ray_profile: direction dim");
  const bool pure_indicator = f.obj_kind == ObjectiveKind::Zero && f.restriction != nullptr;
  const double r_cap = pure_indicator ? f.restriction->enclosing_radius() * 1.0001 + 1e-12
                                      : f.decay.radius_for(t_floor * f.sup_norm);
  auto hint = std::make_shared<Vec>();
  auto eval = [&solver, &xi, hint](double r) {
    const FiberResult res = solver.maximize(r * xi, hint->size() ? hint.get() : nullptr);
    if (res.feasible && res.value > 0.0) *hint = res.w;
    return res.feasible ? res.value : 0.0;
  };
  return RayProfile::build(eval, f.sup_norm, r_cap, points, t_floor, pure_indicator);
}

RayProfile function_ray_profile(const FunctionDescriptor& f, const Vec& xi, int points,
                                double t_floor) {
  if (xi.size() != f.dim) throw std::invalid_argument("function_ray_profile: direction dim");
  const bool pure_indicator = f.obj_kind == ObjectiveKind::Zero && f.restriction != nullptr;
  double r_cap = f.decay.radius_for(t_floor * f.sup_norm);
  if (f.ray_support) r_cap = std::min(r_cap, f.ray_support(xi) * 1.0001 + 1e-12);
  auto eval = [&f, &xi](double r) { return f.evaluate(r * xi); };
  return RayProfile::build(eval, f.sup_norm, r_cap, points, t_floor, pure_indicator);
}

VerificationReport fradelizi_check(const FunctionDescriptor& f, const McSpec& mc,
                                   const FradeliziOpts& opts) {
  if (f.concavity != Concavity::LogConcave)
    throw std::invalid_argument("fradelizi_check: requires a log-concave density");
  VerificationReport rep;
  rep.statement_id = "frad-2";
  rep.seed = mc.seed;
  const BarycenterEstimate bc = barycenter(f, mc);
  bool centered = true;
  for (int j = 0; j < f.dim; ++j)
    if (std::fabs(bc.bar[j]) > 3.0 * bc.stderr_[j] + 1e-6) centered = false;

  double v0 = f.value_at_origin;
  if (!centered) {
    if (!opts.auto_center) {
      rep.hypothesis_status = VerificationReport::Hypo::Violated;
      rep.verdict = VerificationReport::Verdict::NotApplicable;
      rep.details["barycenter_norm"] = bc.bar.norm();
      return rep;
    }
    // Hypothesis repaired by translation; the inequality is evaluated at the
    // Monte Carlo barycenter.
    v0 = f.evaluate(bc.bar);
    rep.caveats.push_back("recentered-at-mc-barycenter");
  }
  const double en = std::exp(static_cast<double>(f.dim));
  rep.explicit_constant = en;
  rep.assert_le(f.sup_norm, en * v0, 0.0, 0.0, opts.tol);
  if (f.value_at_origin > 0.0) rep.empirical_constant = f.sup_norm / f.value_at_origin;
  rep.details["barycenter_norm"] = bc.bar.norm();
  return rep;
}

}  // namespace lcq
