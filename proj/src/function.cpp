#include "lcq/function.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "lcq/constants.hpp"
#include "lcq/starbody.hpp"

namespace lcq {

double DecayCert::bound(double r) const {
  if (kind == Kind::Exponential) return A * std::exp(-B * r);
  return A * std::pow(1.0 + r, -alpha);
}

double DecayCert::radius_for(double value) const {
  if (value <= 0.0) throw std::invalid_argument("DecayCert::radius_for: value must be positive");
  if (value >= A) return 0.0;
  if (kind == Kind::Exponential) return std::log(A / value) / B;
  return std::pow(A / value, 1.0 / alpha) - 1.0;
}

double FunctionDescriptor::alpha_exponent() const {
  if (concavity != Concavity::SConcave || s_param >= 0.0)
    throw std::domain_error("alpha_exponent: function is not s-concave with s < 0");
  return dim - 1.0 / s_param;
}

FunctionDescriptor make_gaussian(int dim, double sigma) {
  if (dim < 1 || sigma <= 0.0) throw std::invalid_argument("make_gaussian: bad arguments");
  FunctionDescriptor f;
  f.dim = dim;
  f.family = "gaussian";
  const double inv2s2 = 0.5 / (sigma * sigma);
  f.evaluate = [inv2s2](const Vec& x) { return std::exp(-x.squaredNorm() * inv2s2); };
  f.value_at_origin = 1.0;
  f.sup_norm = 1.0;
  // exp(-r^2/(2 sigma^2)) <= e^{1/2} e^{-r/sigma}
  f.decay = DecayCert::exponential(std::exp(0.5), 1.0 / sigma);
  f.concavity = Concavity::LogConcave;
  f.analytic.mass = std::pow(2.0 * constants::kPi, 0.5 * dim) * std::pow(sigma, dim);
  f.analytic.level_radius = [sigma](double t) {
    return t >= 1.0 ? 0.0 : sigma * std::sqrt(2.0 * std::log(1.0 / t));
  };
  f.normalized = true;
  f.obj_kind = ObjectiveKind::NegLog;
  f.convex_objective = [inv2s2](const Vec& x) { return x.squaredNorm() * inv2s2; };
  return f;
}

FunctionDescriptor make_exp_norm(int dim) {
  if (dim < 1) throw std::invalid_argument("make_exp_norm: bad dimension");
  FunctionDescriptor f;
  f.dim = dim;
  f.family = "exp-norm";
  f.evaluate = [](const Vec& x) { return std::exp(-x.norm()); };
  f.value_at_origin = 1.0;
  f.sup_norm = 1.0;
  f.decay = DecayCert::exponential(1.0, 1.0);
  f.concavity = Concavity::LogConcave;
  f.analytic.mass = std::exp(std::lgamma(dim + 1.0) + constants::log_omega(dim));
  f.analytic.level_radius = [](double t) { return t >= 1.0 ? 0.0 : std::log(1.0 / t); };
  f.normalized = true;
  f.obj_kind = ObjectiveKind::NegLog;
  f.convex_objective = [](const Vec& x) { return x.norm(); };
  return f;
}

FunctionDescriptor make_indicator(const StarBody& body) {
  FunctionDescriptor f;
  f.dim = body.dim();
  f.family = "indicator";
  auto K = std::make_shared<const StarBody>(body);
  f.evaluate = [K](const Vec& x) { return K->gauge(x) <= 1.0 ? 1.0 : 0.0; };
  f.value_at_origin = 1.0;
  f.sup_norm = 1.0;
  const double R = body.enclosing_radius();
  f.decay = DecayCert::exponential(std::exp(R), 1.0);
  f.concavity = body.known_convex() ? Concavity::LogConcave : Concavity::None;
  if (body.provenance() == "euclidean-ball") {
    const double r = R;
    f.analytic.level_radius = [r](double t) { return t > 1.0 ? 0.0 : r; };
  }
  try {
    f.analytic.mass = analytic_volume(body);
  } catch (const std::invalid_argument&) {
  }
  f.ray_support = [K](const Vec& xi) { return K->radial(xi); };
  f.normalized = true;
  f.obj_kind = ObjectiveKind::Zero;
  f.convex_objective = [](const Vec&) { return 0.0; };
  f.restriction = K;
  return f;
}

FunctionDescriptor make_power_law(int dim, double alpha) {
  if (dim < 1 || alpha <= dim)
    throw std::invalid_argument("make_power_law: need alpha > dim for integrability");
  FunctionDescriptor f;
  f.dim = dim;
  f.family = "power-law";
  f.evaluate = [alpha](const Vec& x) { return std::pow(1.0 + x.norm(), -alpha); };
  f.value_at_origin = 1.0;
  f.sup_norm = 1.0;
  f.decay = DecayCert::power(1.0, alpha);
  f.concavity = Concavity::SConcave;
  f.s_param = -1.0 / (alpha - dim);  // alpha = n - 1/s
  f.analytic.mass =
      dim * constants::omega(dim) * constants::beta(static_cast<double>(dim), alpha - dim);
  f.analytic.level_radius = [alpha](double t) {
    return t >= 1.0 ? 0.0 : std::pow(1.0 / t, 1.0 / alpha) - 1.0;
  };
  f.normalized = true;
  f.obj_kind = ObjectiveKind::PowerGauge;
  f.convex_objective = [](const Vec& x) { return 1.0 + x.norm(); };
  f.obj_alpha = alpha;
  return f;
}

FunctionDescriptor make_shifted(const FunctionDescriptor& base, const Vec& offset) {
  if (offset.size() != base.dim) throw std::invalid_argument("make_shifted: dimension mismatch");
  FunctionDescriptor f;
  f.dim = base.dim;
  f.family = "shifted:" + base.family;
  auto b = std::make_shared<FunctionDescriptor>(base);
  auto off = std::make_shared<Vec>(offset);
  f.evaluate = [b, off](const Vec& x) { return b->evaluate(x - *off); };
  f.value_at_origin = f.evaluate(Vec::Zero(base.dim));
  f.sup_norm = base.sup_norm;
  const double d = offset.norm();
  if (base.decay.kind == DecayCert::Kind::Exponential)
    f.decay = DecayCert::exponential(base.decay.A * std::exp(base.decay.B * d), base.decay.B);
  else
    f.decay = DecayCert::power(base.decay.A * std::pow(1.0 + d, base.decay.alpha), base.decay.alpha);
  f.concavity = base.concavity;
  f.s_param = base.s_param;
  f.analytic.mass = base.analytic.mass;
  f.normalized = false;
  f.sup_attained = base.sup_attained;
  // A shifted restriction body is no longer star-shaped about the origin, so
  // the optimizer structure survives a shift only for unrestricted bases.
  if (base.obj_kind != ObjectiveKind::None && !base.restriction) {
    f.obj_kind = base.obj_kind;
    f.obj_alpha = base.obj_alpha;
    auto chi = base.convex_objective;
    f.convex_objective = [chi, off](const Vec& x) { return chi(x - *off); };
  }
  return f;
}

FunctionDescriptor make_linear_image(const FunctionDescriptor& base, const Mat& map) {
  const int n = base.dim;
  if (map.rows() != n || map.cols() != n)
    throw std::invalid_argument("make_linear_image: map must be n x n");
  Eigen::FullPivLU<Mat> lu(map);
  if (!lu.isInvertible()) throw std::invalid_argument("make_linear_image: singular map");
  FunctionDescriptor f;
  f.dim = n;
  f.family = "linear-image:" + base.family;
  auto b = std::make_shared<FunctionDescriptor>(base);
  auto inv = std::make_shared<Mat>(lu.inverse());
  f.evaluate = [b, inv](const Vec& x) { return b->evaluate((*inv) * x); };
  f.value_at_origin = base.value_at_origin;
  f.sup_norm = base.sup_norm;
  const double opnorm = map.jacobiSvd().singularValues()(0);
  // |T^{-1} x| >= |x| / ||T||.
  if (base.decay.kind == DecayCert::Kind::Exponential)
    f.decay = DecayCert::exponential(base.decay.A, base.decay.B / opnorm);
  else
    f.decay = DecayCert::power(base.decay.A * std::pow(std::max(opnorm, 1.0), base.decay.alpha),
                               base.decay.alpha);
  f.concavity = base.concavity;
  f.s_param = base.s_param;
  if (base.analytic.mass) f.analytic.mass = *base.analytic.mass * std::fabs(lu.determinant());
  if (base.ray_support) {
    auto rs = base.ray_support;
    f.ray_support = [rs, inv](const Vec& xi) {
      const Vec y = (*inv) * xi;
      const double ny = y.norm();
      return ny == 0.0 ? std::numeric_limits<double>::infinity() : rs(y / ny) / ny;
    };
  }
  f.normalized = base.normalized;
  f.sup_attained = base.sup_attained;
  if (base.obj_kind != ObjectiveKind::None) {
    f.obj_kind = base.obj_kind;
    f.obj_alpha = base.obj_alpha;
    auto chi = base.convex_objective;
    f.convex_objective = [chi, inv](const Vec& x) { return chi((*inv) * x); };
    if (base.restriction)
      f.restriction =
          std::make_shared<const StarBody>(make_linear_image_body(*base.restriction, map));
  }
  return f;
}

FunctionDescriptor make_custom_potential(int dim, std::function<double(const Vec&)> potential,
                                         double value_at_origin, double sup_norm, DecayCert decay,
                                         Concavity concavity, double s_param) {
  if (dim < 1) throw std::invalid_argument("make_custom_potential: bad dimension");
  FunctionDescriptor f;
  f.dim = dim;
  f.family = "custom-potential";
  f.evaluate = [potential](const Vec& x) { return std::exp(-potential(x)); };
  f.value_at_origin = value_at_origin;
  f.sup_norm = sup_norm;
  f.decay = decay;
  f.concavity = concavity;
  f.s_param = s_param;
  f.normalized = false;
  f.sup_attained = false;  // nothing guarantees fiber suprema are attained
  if (concavity == Concavity::LogConcave) {
    f.obj_kind = ObjectiveKind::NegLog;
    f.convex_objective = potential;
  }
  return f;
}

FunctionDescriptor restrict_to_body(const FunctionDescriptor& f, const StarBody& body) {
  if (f.dim != body.dim()) throw std::invalid_argument("restrict_to_body: dimension mismatch");
  if (f.value_at_origin <= 0.0)
    throw std::invalid_argument("restrict_to_body: f(0) must be positive");
  FunctionDescriptor g;
  g.dim = f.dim;
  g.family = "restricted:" + f.family;
  auto base = std::make_shared<FunctionDescriptor>(f);
  auto K = std::make_shared<const StarBody>(body);
  g.evaluate = [base, K](const Vec& x) {
    return K->gauge(x) <= 1.0 ? base->evaluate(x) : 0.0;
  };
  g.value_at_origin = f.value_at_origin;
  g.sup_norm = f.sup_norm;
  g.decay = f.decay;
  const bool convex_body = body.known_convex();
  g.concavity = (f.concavity == Concavity::None || !convex_body) ? Concavity::None : f.concavity;
  g.s_param = f.s_param;
  auto frs = f.ray_support;
  g.ray_support = [K, frs](const Vec& xi) {
    const double r = K->radial(xi);
    return frs ? std::min(r, frs(xi)) : r;
  };
  g.normalized = false;
  g.sup_attained = f.sup_attained;
  if (f.obj_kind != ObjectiveKind::None) {
    g.obj_kind = f.obj_kind;
    g.obj_alpha = f.obj_alpha;
    g.convex_objective = f.convex_objective;
    if (f.restriction)
      g.restriction = std::make_shared<const StarBody>(intersect_bodies(*f.restriction, body));
    else
      g.restriction = K;
  }
  return g;
}

FunctionDescriptor dilate(const FunctionDescriptor& f, double r) {
  if (r <= 0.0) throw std::invalid_argument("dilate: scale must be positive");
  FunctionDescriptor g;
  g.dim = f.dim;
  g.family = "dilated:" + f.family;
  auto base = std::make_shared<FunctionDescriptor>(f);
  g.evaluate = [base, r](const Vec& x) { return base->evaluate(x / r); };
  g.value_at_origin = f.value_at_origin;
  g.sup_norm = f.sup_norm;
  if (f.decay.kind == DecayCert::Kind::Exponential)
    g.decay = DecayCert::exponential(f.decay.A, f.decay.B / r);
  else
    g.decay = DecayCert::power(f.decay.A * std::pow(std::max(r, 1.0), f.decay.alpha), f.decay.alpha);
  g.concavity = f.concavity;
  g.s_param = f.s_param;
  if (f.analytic.mass) g.analytic.mass = *f.analytic.mass * std::pow(r, f.dim);
  if (f.analytic.level_radius) {
    auto lr = f.analytic.level_radius;
    g.analytic.level_radius = [lr, r](double t) { return r * lr(t); };
  }
  if (f.ray_support) {
    auto rs = f.ray_support;
    g.ray_support = [rs, r](const Vec& xi) { return r * rs(xi); };
  }
  g.normalized = f.normalized;
  g.sup_attained = f.sup_attained;
  if (f.obj_kind != ObjectiveKind::None) {
    g.obj_kind = f.obj_kind;
    g.obj_alpha = f.obj_alpha;
    auto chi = f.convex_objective;
    g.convex_objective = [chi, r](const Vec& x) { return chi(x / r); };
    if (f.restriction)
      g.restriction = std::make_shared<const StarBody>(
          make_linear_image_body(*f.restriction, Mat::Identity(f.dim, f.dim) * r));
  }
  return g;
}

}  // namespace lcq
