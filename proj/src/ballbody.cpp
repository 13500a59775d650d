#include "lcq/ballbody.hpp"

#include <cmath>
#include <stdexcept>

#include "lcq/constants.hpp"
#include "lcq/optimize.hpp"

namespace lcq {

namespace {

void require_defined(const FunctionDescriptor& f, double p) {
  if (f.value_at_origin <= 0.0)
    throw std::domain_error("ball body undefined: f(0) must be positive");
  if (p <= 0.0) throw std::invalid_argument("ball body: p must be positive");
  if (f.concavity == Concavity::SConcave && p >= f.alpha_exponent())
    throw std::domain_error("ball body: K_p undefined for p >= alpha = n - 1/s");
  if (f.decay.kind == DecayCert::Kind::Power && p >= f.decay.alpha)
    throw std::domain_error("ball body: moment diverges against the decay envelope");
}

// Sup of f along the ray {r xi : r >= 0}; diagnostics for the per-ray tight
// factor of the inclusion lemma.
double ray_sup(const FunctionDescriptor& f, const Vec& xi, double rmax) {
  auto neg = [&](double r) { return -f.evaluate(r * xi); };
  const double r_star = golden_min(neg, 0.0, rmax, 1e-9 * std::max(1.0, rmax));
  double best = std::max(f.evaluate(Vec::Zero(f.dim)), f.evaluate(r_star * xi));
  for (double r : {0.25 * rmax, 0.5 * rmax, 0.75 * rmax})
    best = std::max(best, f.evaluate(r * xi));
  return best;
}

Vec sample_direction(int dim, rng::Stream stream) {
  rng::Cursor cur(stream);
  Vec v(dim);
  for (;;) {
    for (int i = 0; i < dim; ++i) v[i] = cur.normal();
    const double n = v.norm();
    if (n > 1e-12) return v / n;
  }
}

struct InclusionScan {
  int violations = 0;
  double worst_lhs = 0.0, worst_rhs = 0.0;
  double max_deficit = -1.0;
  double min_tight_factor = 0.0, max_tight_factor = 0.0;
};

}  // namespace

double radial(const FunctionDescriptor& f, double p, const Vec& xi, const QuadratureSpec& quad) {
  require_defined(f, p);
  if (xi.size() != f.dim) throw std::invalid_argument("radial: direction dimension mismatch");
  if (std::fabs(xi.norm() - 1.0) > 1e-9) throw std::invalid_argument("radial: direction not unit");

  double rmax;
  if (f.ray_support) {
    rmax = f.ray_support(xi);
  } else {
    rmax = quad.truncation > 0.0 ? quad.truncation
                                 : moment_tail_radius(f.decay, p, quad.abs_tol);
  }
  const double logp = std::log(p);
  auto lg = [&](double r) {
    const double v = f.evaluate(r * xi);
    if (v <= 0.0 || r <= 0.0) return -std::numeric_limits<double>::infinity();
    return logp + (p - 1.0) * std::log(r) + std::log(v);
  };
  const double log_integral = log_adaptive_integral(lg, rmax, quad);
  if (log_integral == -std::numeric_limits<double>::infinity()) return 0.0;
  return std::exp((log_integral - std::log(f.value_at_origin)) / p);
}

StarBody ball_body(const FunctionDescriptor& f, double p, const QuadratureSpec& quad) {
  require_defined(f, p);
  auto fp = std::make_shared<FunctionDescriptor>(f);
  auto q = std::make_shared<QuadratureSpec>(quad);
  auto radial_fn = [fp, p, q](const Vec& xi) { return radial(*fp, p, xi, *q); };
  // Moment bound from the decay certificate gives an enclosing radius.
  double log_moment;
  if (f.decay.kind == DecayCert::Kind::Exponential)
    log_moment = std::log(f.decay.A) + std::lgamma(p + 1.0) - p * std::log(f.decay.B);
  else
    log_moment = std::log(f.decay.A) + std::log(p) + constants::log_beta(p, f.decay.alpha - p);
  const double enclosing = std::exp((log_moment - std::log(f.value_at_origin)) / p);
  return StarBody(f.dim, radial_fn, enclosing, f.concavity == Concavity::LogConcave,
                  "ball-body");
}

McEstimate mass_via_body(const FunctionDescriptor& f, const McSpec& mc,
                         const QuadratureSpec& quad) {
  const StarBody K = ball_body(f, static_cast<double>(f.dim), quad);
  McEstimate est = body_volume_radial(K, mc, "mass-via-body");
  est.value *= f.value_at_origin;
  est.stderr_ *= f.value_at_origin;
  est.scheme = "ball-body-radial";
  return est;
}

VerificationReport section_volume_identity(const FunctionDescriptor& f, const Subspace& E,
                                           const McSpec& mc, const QuadratureSpec& quad) {
  if (E.ambient_dim != f.dim) throw std::invalid_argument("section_volume_identity: dimensions");
  const int m = E.dim;  // n - k
  VerificationReport rep;
  rep.statement_id = "ball-section-identity";
  rep.seed = mc.seed;

  // lhs: f(0) |K_{n-k}(f) cap E| by spherical MC over S^{n-1} cap E.
  const StarBody K = ball_body(f, static_cast<double>(m), quad);
  const rng::Stream dirs(mc.seed, "section-identity-dirs");
  std::vector<double> vals(static_cast<size_t>(mc.directions));
  par::block_fill(vals, [&](int64_t j) {
    const Vec u = sample_direction(m, dirs.sub(static_cast<uint64_t>(j)));
    const Vec xi = E.lift(u);
    return std::pow(K.radial(xi), m);
  }, mc.exec);
  double s = 0.0, s2 = 0.0;
  for (double v : vals) {
    s += v;
    s2 += v * v;
  }
  const double mean = s / static_cast<double>(vals.size());
  const double var = std::max(0.0, s2 / static_cast<double>(vals.size()) - mean * mean);
  const double om = constants::omega(m);
  const double lhs = f.value_at_origin * om * mean;
  const double lhs_se =
      f.value_at_origin * om * std::sqrt(var / static_cast<double>(vals.size()));

  const McEstimate rhs = section_mass(f, E, mc.inner_samples * 8,
                                      rng::Stream(mc.seed, "section-identity-mass"));

  // Two-sided identity: assert both directions with the 3-stderr rule.
  VerificationReport upper;
  upper.assert_le(lhs, rhs.value, lhs_se, rhs.stderr_, 1e-6);
  VerificationReport lower;
  lower.assert_le(rhs.value, lhs, rhs.stderr_, lhs_se, 1e-6);
  rep.lhs = lhs;
  rep.rhs = rhs.value;
  rep.lhs_stderr = lhs_se;
  rep.rhs_stderr = rhs.stderr_;
  rep.verdict = (upper.verdict == VerificationReport::Verdict::Pass &&
                 lower.verdict == VerificationReport::Verdict::Pass)
                    ? VerificationReport::Verdict::Pass
                    : VerificationReport::Verdict::Fail;
  if (rhs.value != 0.0) rep.empirical_constant = lhs / rhs.value;
  return rep;
}

namespace {

VerificationReport inclusion_scan(const std::string& id, const FunctionDescriptor& f, double p,
                                  double q, const QuadratureSpec& quad, int directions,
                                  uint64_t seed,
                                  const std::function<double(double, double)>& deficit,
                                  const std::function<double(const Vec&)>& tight_factor) {
  VerificationReport rep;
  rep.statement_id = id;
  rep.seed = seed;
  const rng::Stream stream(seed, id + "-dirs");
  std::vector<double> defs(static_cast<size_t>(directions));
  std::vector<double> lhss(static_cast<size_t>(directions)), rhss(static_cast<size_t>(directions));
  std::vector<double> tights(static_cast<size_t>(directions), 0.0);
  par::block_fill(defs, [&](int64_t j) {
    const Vec xi = sample_direction(f.dim, stream.sub(static_cast<uint64_t>(j)));
    const double rp = radial(f, p, xi, quad);
    const double rq = radial(f, q, xi, quad);
    const double d = deficit(rp, rq);
    lhss[static_cast<size_t>(j)] = rp;
    rhss[static_cast<size_t>(j)] = rq;
    if (tight_factor) tights[static_cast<size_t>(j)] = tight_factor(xi);
    return d;
  });
  const double tol = 1e-6 + 10.0 * quad.rel_tol;
  InclusionScan scan;
  scan.min_tight_factor = tights.empty() ? 0.0 : tights[0];
  for (size_t j = 0; j < defs.size(); ++j) {
    const double scale = std::max({1.0, lhss[j], rhss[j]});
    if (defs[j] > tol * scale) {
      ++scan.violations;
    }
    if (defs[j] > scan.max_deficit) {
      scan.max_deficit = defs[j];
      scan.worst_lhs = lhss[j];
      scan.worst_rhs = rhss[j];
    }
    scan.min_tight_factor = std::min(scan.min_tight_factor, tights[j]);
    scan.max_tight_factor = std::max(scan.max_tight_factor, tights[j]);
  }
  rep.lhs = scan.worst_lhs;
  rep.rhs = scan.worst_rhs;
  rep.verdict = scan.violations == 0 ? VerificationReport::Verdict::Pass
                                     : VerificationReport::Verdict::Fail;
  rep.details["directions"] = directions;
  rep.details["violations"] = scan.violations;
  rep.details["max_deficit"] = scan.max_deficit;
  if (tight_factor) {
    rep.details["tight_factor_min"] = scan.min_tight_factor;
    rep.details["tight_factor_max"] = scan.max_tight_factor;
  }
  return rep;
}

}  // namespace

VerificationReport inclusion_any_g(const FunctionDescriptor& f, double p, double q, int directions,
                                   uint64_t seed, const QuadratureSpec& quad) {
  if (p > q) throw std::invalid_argument("inclusion_any_g: need p <= q");
  require_defined(f, q);
  const double factor = std::pow(f.sup_norm / f.value_at_origin, 1.0 / p - 1.0 / q);
  // rho_{K_p} <= factor * rho_{K_q}
  auto deficit = [factor](double rp, double rq) { return rp - factor * rq; };
  const double rmax_diag = f.decay.radius_for(1e-12 * f.sup_norm);
  auto tight = [&](const Vec& xi) {
    // Per-ray factor via ||f_xi||_inf (diagnostic; the lemma uses ||f||_inf).
    const double sup_ray = ray_sup(f, xi, rmax_diag);
    return std::pow(sup_ray / f.value_at_origin, 1.0 / p - 1.0 / q);
  };
  VerificationReport rep = inclusion_scan("lem-2.1", f, p, q, quad, directions, seed, deficit, tight);
  rep.explicit_constant = factor;
  return rep;
}

VerificationReport inclusion_log_concave(const FunctionDescriptor& f, double p, double q,
                                         int directions, uint64_t seed,
                                         const QuadratureSpec& quad) {
  if (p > q) throw std::invalid_argument("inclusion_log_concave: need p <= q");
  if (f.concavity != Concavity::LogConcave)
    throw std::invalid_argument("inclusion_log_concave: f must be log-concave");
  require_defined(f, q);
  const double ratio = std::exp(std::lgamma(p + 1.0) / p - std::lgamma(q + 1.0) / q);
  // ratio * rho_{K_q} <= rho_{K_p}
  auto deficit = [ratio](double rp, double rq) { return ratio * rq - rp; };
  VerificationReport rep = inclusion_scan("lem-2.2", f, p, q, quad, directions, seed, deficit, nullptr);
  rep.explicit_constant = ratio;
  return rep;
}

VerificationReport inclusion_s_concave(const FunctionDescriptor& f, double p, double q,
                                       int directions, uint64_t seed, const QuadratureSpec& quad) {
  if (p > q) throw std::invalid_argument("inclusion_s_concave: need p <= q");
  const double alpha = f.alpha_exponent();
  if (q >= alpha) throw std::domain_error("inclusion_s_concave: need q < alpha = n - 1/s");
  require_defined(f, q);
  const double c = std::exp((std::log(q) + constants::log_beta(q, alpha - q)) / q -
                            (std::log(p) + constants::log_beta(p, alpha - p)) / p);
  // rho_{K_q} <= c * rho_{K_p}
  auto deficit = [c](double rp, double rq) { return rq - c * rp; };
  VerificationReport rep = inclusion_scan("s-concave-inclusion", f, p, q, quad, directions, seed, deficit,
                                          nullptr);
  rep.explicit_constant = c;
  return rep;
}

}  // namespace lcq
