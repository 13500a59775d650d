#include "lcq/mc.hpp"

#include <cmath>
#include <stdexcept>

#include "lcq/constants.hpp"
#include "lcq/projection.hpp"
#include "lcq/report.hpp"
#include "lcq/starbody.hpp"

namespace lcq {

namespace {

// Gamma(shape, 1) variate from a per-sample cursor. Integer shapes sum
// exponentials; fractional shapes use Marsaglia-Tsang (rejection is safe
// here because each sample owns its own stream).
double gamma_variate(rng::Cursor& cur, double shape) {
  if (shape <= 0.0) throw std::invalid_argument("gamma_variate: shape must be positive");
  double extra = 0.0;
  const int whole = static_cast<int>(std::floor(shape));
  const double frac = shape - whole;
  for (int i = 0; i < whole; ++i) extra += cur.exponential();
  if (frac == 0.0) return extra;
  // Marsaglia-Tsang for shape < 1 via the boost: G(a) = G(a+1) * U^{1/a}.
  const double a = frac + 1.0;
  const double d = a - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  double g = 0.0;
  for (;;) {
    const double x = cur.normal();
    const double v = std::pow(1.0 + c * x, 3);
    if (v <= 0.0) continue;
    const double u = cur.u01();
    if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) {
      g = d * v;
      break;
    }
  }
  return extra + g * std::pow(cur.u01(), 1.0 / frac);
}

Vec sphere_direction(rng::Cursor& cur, int dim) {
  Vec v(dim);
  for (;;) {
    for (int i = 0; i < dim; ++i) v[i] = cur.normal();
    const double n = v.norm();
    if (n > 1e-12) return v / n;
  }
}

struct Proposal {
  // Radial importance proposal matched to the decay envelope; log-density of
  // the resulting point in R^m is log_density(|x|).
  DecayCert env;
  int m;
  double log_norm;  // log of the angular-radial normalizing constant

  explicit Proposal(const DecayCert& decay, int dim) : env(decay), m(dim) {
    if (env.kind == DecayCert::Kind::Exponential) {
      // q(x) = B^m e^{-B|x|} / (Gamma(m) m omega_m)
      log_norm = m * std::log(env.B) - std::lgamma(m) - std::log(static_cast<double>(m)) -
                 constants::log_omega(m);
    } else {
      if (env.alpha <= m)
        throw std::invalid_argument("mass: decay envelope not integrable in this dimension");
      // q(x) = (1+|x|)^{-alpha} / (B(m, alpha-m) m omega_m)
      log_norm = -constants::log_beta(m, env.alpha - m) - std::log(static_cast<double>(m)) -
                 constants::log_omega(m);
    }
  }

  double sample_radius(rng::Cursor& cur) const {
    if (env.kind == DecayCert::Kind::Exponential) return gamma_variate(cur, m) / env.B;
    const double ga = gamma_variate(cur, m);
    const double gb = gamma_variate(cur, env.alpha - m);
    const double x = ga / (ga + gb);  // Beta(m, alpha-m)
    return x / (1.0 - x);
  }

  double log_density(double r) const {
    if (env.kind == DecayCert::Kind::Exponential) return log_norm - env.B * r;
    return log_norm - env.alpha * std::log1p(r);
  }
};

McEstimate finish(double sum, double sumsq, int64_t n, uint64_t seed, const std::string& scheme) {
  McEstimate e;
  e.samples = n;
  e.seed = seed;
  e.scheme = scheme;
  e.value = sum / n;
  const double var = std::max(0.0, sumsq / n - e.value * e.value);
  e.stderr_ = std::sqrt(var / n);
  return e;
}

}  // namespace

McEstimate mass(const FunctionDescriptor& f, const McSpec& mc) {
  const Proposal prop(f.decay, f.dim);
  const rng::Stream stream(mc.seed, "mass");
  auto one = [&](int64_t i) {
    rng::Cursor cur(stream.sub(static_cast<uint64_t>(i)));
    const double r = prop.sample_radius(cur);
    const Vec x = r * sphere_direction(cur, f.dim);
    const double fx = f.evaluate(x);
    return fx > 0.0 ? fx * std::exp(-prop.log_density(r)) : 0.0;
  };
  auto [s, s2] = par::block_sum2(mc.samples, one, mc.exec);
  return finish(s, s2, mc.samples, mc.seed, "mass-importance");
}

McEstimate set_volume_membership(int dim, const std::function<bool(const Vec&)>& contains,
                                 double enclosing_radius, const McSpec& mc,
                                 const std::string& tag) {
  McEstimate e;
  e.samples = mc.volume_samples;
  e.seed = mc.seed;
  e.scheme = "hit-or-miss";
  if (enclosing_radius <= 0.0) return e;
  const double ball = constants::omega(dim) * std::pow(enclosing_radius, dim);
  const rng::Stream stream(mc.seed, tag);
  auto one = [&](int64_t i) {
    rng::Cursor cur(stream.sub(static_cast<uint64_t>(i)));
    const double r = enclosing_radius * std::pow(cur.u01(), 1.0 / dim);
    const Vec x = r * sphere_direction(cur, dim);
    return contains(x) ? 1.0 : 0.0;
  };
  const double hits = par::block_sum(mc.volume_samples, one, mc.exec);
  const double p = hits / mc.volume_samples;
  e.value = ball * p;
  e.stderr_ = ball * std::sqrt(std::max(0.0, p * (1.0 - p)) / mc.volume_samples);
  return e;
}

McEstimate set_volume(const LevelSetOracle& ls, const McSpec& mc) {
  if (ls.empty || ls.degenerate) {
    McEstimate e;
    e.seed = mc.seed;
    e.scheme = "hit-or-miss";
    return e;
  }
  return set_volume_membership(
      ls.source.dim, [&](const Vec& x) { return ls.contains(x); }, ls.enclosing_radius, mc,
      "set-volume");
}

McEstimate grassmann_integrate(const std::function<double(const Subspace&, uint64_t)>& statistic,
                               int n, int m, const McSpec& mc, const std::string& tag) {
  std::vector<double> vals(static_cast<size_t>(mc.subspaces));
  par::block_fill(vals, [&](int64_t i) {
    const Subspace E = haar_subspace(n, m, rng::Stream(mc.seed, tag, static_cast<uint64_t>(i)));
    return statistic(E, static_cast<uint64_t>(i));
  }, mc.exec);
  double s = 0.0, s2 = 0.0;
  for (double v : vals) {
    s += v;
    s2 += v * v;
  }
  return finish(s, s2, mc.subspaces, mc.seed, "grassmann-haar");
}

BarycenterEstimate barycenter(const FunctionDescriptor& f, const McSpec& mc) {
  const int m = f.dim;
  const Proposal prop(f.decay, m);
  const rng::Stream stream(mc.seed, "barycenter");
  const int64_t count = mc.samples;
  const int64_t block = par::kBlock;
  const int64_t nblocks = (count + block - 1) / block;
  // Partial sums per block: w, w^2, and per-coordinate wx, (wx)^2, w*wx.
  const int cols = 2 + 3 * m;
  std::vector<double> partial(static_cast<size_t>(nblocks * cols), 0.0);
  auto body = [&](int64_t b) {
    const int64_t lo = b * block, hi = std::min(count, lo + block);
    std::vector<double> acc(static_cast<size_t>(cols), 0.0);
    for (int64_t i = lo; i < hi; ++i) {
      rng::Cursor cur(stream.sub(static_cast<uint64_t>(i)));
      const double r = prop.sample_radius(cur);
      const Vec x = r * sphere_direction(cur, m);
      const double fx = f.evaluate(x);
      if (fx <= 0.0) continue;
      const double w = fx * std::exp(-prop.log_density(r));
      acc[0] += w;
      acc[1] += w * w;
      for (int j = 0; j < m; ++j) {
        const double a = w * x[j];
        acc[static_cast<size_t>(2 + 3 * j)] += a;
        acc[static_cast<size_t>(3 + 3 * j)] += a * a;
        acc[static_cast<size_t>(4 + 3 * j)] += w * a;
      }
    }
    for (int c = 0; c < cols; ++c) partial[static_cast<size_t>(b * cols + c)] = acc[static_cast<size_t>(c)];
  };
  if (mc.exec == par::Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
    for (int64_t b = 0; b < nblocks; ++b) body(b);
  } else {
    for (int64_t b = 0; b < nblocks; ++b) body(b);
  }
  std::vector<double> tot(static_cast<size_t>(cols), 0.0);
  for (int64_t b = 0; b < nblocks; ++b)
    for (int c = 0; c < cols; ++c) tot[static_cast<size_t>(c)] += partial[static_cast<size_t>(b * cols + c)];

  BarycenterEstimate out;
  out.bar = Vec::Zero(m);
  out.stderr_ = Vec::Zero(m);
  const double sw = tot[0];
  out.total_mass = finish(tot[0], tot[1], count, mc.seed, "mass-importance");
  for (int j = 0; j < m; ++j) {
    const double sa = tot[static_cast<size_t>(2 + 3 * j)];
    const double saa = tot[static_cast<size_t>(3 + 3 * j)];
    const double sab = tot[static_cast<size_t>(4 + 3 * j)];
    const double ratio = sa / sw;
    // Delta-method stderr of the ratio estimator sum(wx)/sum(w).
    const double va = saa / count - (sa / count) * (sa / count);
    const double vb = tot[1] / count - (sw / count) * (sw / count);
    const double cab = sab / count - (sa / count) * (sw / count);
    const double var =
        (va - 2.0 * ratio * cab + ratio * ratio * vb) / (count * (sw / count) * (sw / count));
    out.bar[j] = ratio;
    out.stderr_[j] = std::sqrt(std::max(0.0, var));
  }
  return out;
}

McEstimate section_mass(const FunctionDescriptor& f, const Subspace& H, int64_t samples,
                        rng::Stream stream) {
  const int m = H.dim;
  const Proposal prop(f.decay, m);
  double sum = 0.0, sumsq = 0.0;
  for (int64_t i = 0; i < samples; ++i) {
    rng::Cursor cur(stream.sub(static_cast<uint64_t>(i)));
    const double r = prop.sample_radius(cur);
    const Vec z = r * sphere_direction(cur, m);
    const double fx = f.evaluate(H.lift(z));
    const double w = fx > 0.0 ? fx * std::exp(-prop.log_density(r)) : 0.0;
    sum += w;
    sumsq += w * w;
  }
  return finish(sum, sumsq, samples, stream.key(), "section-mass");
}

double section_mass_value(const FunctionDescriptor& f, const Subspace& H, int64_t samples,
                          rng::Stream stream) {
  return section_mass(f, H, samples, stream).value;
}

McEstimate projection_mass(const FunctionDescriptor& f, const Subspace& E, int64_t samples,
                           rng::Stream stream) {
  const int m = E.dim;
  const FiberSolver solver(f, E);
  const Proposal prop(f.decay, m);  // valid envelope: the fiber through z stays at distance >= |z|
  double sum = 0.0, sumsq = 0.0;
  for (int64_t i = 0; i < samples; ++i) {
    rng::Cursor cur(stream.sub(static_cast<uint64_t>(i)));
    const double r = prop.sample_radius(cur);
    const Vec z = r * sphere_direction(cur, m);
    const double v = solver.maximize(z).value;
    const double w = v > 0.0 ? v * std::exp(-prop.log_density(r)) : 0.0;
    sum += w;
    sumsq += w * w;
  }
  return finish(sum, sumsq, samples, stream.key(), "projection-mass");
}

McEstimate body_volume_radial(const StarBody& K, const McSpec& mc, const std::string& tag) {
  const int n = K.dim();
  const rng::Stream stream(mc.seed, tag);
  std::vector<double> vals(static_cast<size_t>(mc.directions));
  par::block_fill(vals, [&](int64_t j) {
    rng::Cursor cur(stream.sub(static_cast<uint64_t>(j)));
    const Vec xi = sphere_direction(cur, n);
    return std::pow(K.radial(xi), n);
  }, mc.exec);
  double s = 0.0, s2 = 0.0;
  for (double v : vals) {
    s += v;
    s2 += v * v;
  }
  McEstimate e = finish(s, s2, static_cast<int64_t>(vals.size()), mc.seed, "radial-sphere");
  const double om = constants::omega(n);
  e.value *= om;
  e.stderr_ *= om;
  return e;
}

double body_section_volume_value(const StarBody& K, const Subspace& H, int64_t directions,
                                 rng::Stream stream) {
  const int m = H.dim;
  double s = 0.0;
  for (int64_t j = 0; j < directions; ++j) {
    rng::Cursor cur(stream.sub(static_cast<uint64_t>(j)));
    const Vec xi = H.lift(sphere_direction(cur, m));
    s += std::pow(K.radial(xi), m);
  }
  return constants::omega(m) * s / static_cast<double>(directions);
}

VerificationReport grinberg_functional_check(const FunctionDescriptor& f, int m, const McSpec& mc) {
  const int n = f.dim;
  if (m < 1 || m > n - 1) throw std::invalid_argument("grinberg_functional_check: bad m");
  VerificationReport rep;
  rep.statement_id = "grin-functional";
  rep.seed = mc.seed;

  const McEstimate lhs = grassmann_integrate(
      [&](const Subspace& H, uint64_t idx) {
        const double mh = section_mass_value(f, H, mc.inner_samples,
                                             rng::Stream(mc.seed, "grin-inner", idx));
        double sup_h = 1.0;
        if (!f.normalized) {
          const FiberSolver solver(f, H);
          sup_h = solver.maximize(Vec::Zero(m)).value;  // sup over H = P_H f(0)
        }
        return std::pow(mh, n) / std::pow(sup_h, n - m);
      },
      n, m, mc, "grin-subspace");

  double mass_val, mass_se = 0.0;
  if (f.analytic.mass) {
    mass_val = *f.analytic.mass;
  } else {
    const McEstimate me = mass(f, mc);
    mass_val = me.value;
    mass_se = me.stderr_;
  }
  const double cnst =
      std::exp(n * constants::log_omega(m) - m * constants::log_omega(n));
  const double rhs = cnst * std::pow(mass_val, m);
  const double rhs_se = cnst * m * std::pow(mass_val, m - 1) * mass_se;
  rep.explicit_constant = cnst;
  rep.assert_le(lhs.value, rhs, lhs.stderr_, rhs_se);
  if (rhs != 0.0) rep.empirical_constant = lhs.value / rhs;
  return rep;
}

}  // namespace lcq
