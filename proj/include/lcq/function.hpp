#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

namespace lcq {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class Concavity { LogConcave, SConcave, None };

// Integrable-tail certificate: a pointwise envelope f(x) <= env(|x|).
// Exponential: A e^{-B r} (every integrable log-concave function admits one).
// Power: A (1+r)^{-alpha}, alpha > dim — required for s-concave power-law
// densities, which admit no exponential bound.
struct DecayCert {
  enum class Kind { Exponential, Power } kind = Kind::Exponential;
  double A = 1.0;
  double B = 1.0;      // rate for Exponential
  double alpha = 0.0;  // exponent for Power

  double bound(double r) const;
  // Radius beyond which the envelope falls below `value`.
  double radius_for(double value) const;
  static DecayCert exponential(double A, double B) { return {Kind::Exponential, A, B, 0.0}; }
  static DecayCert power(double A, double alpha) { return {Kind::Power, A, 1.0, alpha}; }
};

// Closed-form metadata used by tests and fast paths; never required.
struct Analytic {
  std::optional<double> mass;  // ||f||_1
  // Level sets are centered Euclidean balls of radius level_radius(t), t <= sup.
  std::function<double(double)> level_radius;
};

class StarBody;  // starbody.hpp

// Optimizer-facing structure: f(x) = recover(chi(x)) * 1[x in restriction],
// where chi is convex. Fiber maximization of f reduces to sound convex
// minimization of chi over the fiber intersected with the restriction body.
//   NegLog:     f = exp(-chi)        (log-concave families)
//   PowerGauge: f = chi^{-alpha}     (s-concave power-law families)
//   Zero:       f = 1 on restriction (indicators)
//   None:       no structure; fiber search falls back to -ln f (caveat)
enum class ObjectiveKind { None, NegLog, PowerGauge, Zero };

// A non-negative integrable function on R^n given by an evaluation oracle
// plus the metadata every numerical routine needs: decay certificate,
// concavity class, sup-norm and value at the origin.
struct FunctionDescriptor {
  int dim = 0;
  std::string family;  // "gaussian", "exp-norm", "indicator", "power-law", ...
  std::function<double(const Vec&)> evaluate;
  double value_at_origin = 1.0;
  double sup_norm = 1.0;  // exact for builtin families, upper bound otherwise
  DecayCert decay;
  Concavity concavity = Concavity::LogConcave;
  double s_param = 0.0;  // s < 0 when concavity == SConcave
  Analytic analytic;
  // sup{r : f(r xi) > 0} along a unit direction; empty means +infinity.
  std::function<double(const Vec&)> ray_support;
  bool normalized = false;   // f(0) = ||f||_inf = 1
  bool sup_attained = true;  // false only for custom potentials (caveat flag)
  ObjectiveKind obj_kind = ObjectiveKind::None;
  std::function<double(const Vec&)> convex_objective;
  double obj_alpha = 0.0;  // PowerGauge exponent
  std::shared_ptr<const StarBody> restriction;

  bool geometric() const { return normalized && concavity == Concavity::LogConcave; }
  // alpha = n - 1/s for the s-concave class; throws otherwise.
  double alpha_exponent() const;

  double operator()(const Vec& x) const {
    if (x.size() != dim) throw std::invalid_argument("FunctionDescriptor: dimension mismatch");
    return evaluate(x);
  }
};

// Builtin families.
FunctionDescriptor make_gaussian(int dim, double sigma = 1.0);
FunctionDescriptor make_exp_norm(int dim);
FunctionDescriptor make_indicator(const StarBody& body);
FunctionDescriptor make_power_law(int dim, double alpha);
// f(x) = base(x - offset).
FunctionDescriptor make_shifted(const FunctionDescriptor& base, const Vec& offset);
// (f o T)(x) = f(T^{-1} x).
FunctionDescriptor make_linear_image(const FunctionDescriptor& base, const Mat& map);
// f = e^{-potential}; concavity as declared by the caller. Carries the
// sup-attainment caveat: nothing guarantees fiber suprema are attained.
FunctionDescriptor make_custom_potential(int dim, std::function<double(const Vec&)> potential,
                                         double value_at_origin, double sup_norm, DecayCert decay,
                                         Concavity concavity, double s_param = 0.0);
// f * 1_K, the restriction of f to a star body with 0 in its interior.
FunctionDescriptor restrict_to_body(const FunctionDescriptor& f, const StarBody& body);
// f_r(x) = f(x / r).
FunctionDescriptor dilate(const FunctionDescriptor& f, double r);

}  // namespace lcq
