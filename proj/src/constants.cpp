#include "lcq/constants.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lcq::constants {

double log_omega(int n) {
  if (n < 0) throw std::invalid_argument("omega: n must be >= 0");
  return 0.5 * n * std::log(kPi) - std::lgamma(0.5 * n + 1.0);
}

double omega(int n) { return std::exp(log_omega(n)); }

double log_beta(double x, double y) {
  if (x <= 0.0 || y <= 0.0) throw std::invalid_argument("beta: arguments must be positive");
  return std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y);
}

double beta(double x, double y) { return std::exp(log_beta(x, y)); }

double stirling_ratio(int n, int k) {
  if (n < 1 || k < 0 || k > n - 1) throw std::invalid_argument("stirling_ratio: need 0 <= k <= n-1");
  const double ln_n = std::lgamma(n + 1.0);
  const double ln_nk = std::lgamma(n - k + 1.0);
  return std::exp(ln_n - ln_nk * static_cast<double>(n) / (n - k));
}

double gamma_ratio(int n, int k) {
  if (n < 2 || k < 1 || k > n - 1) throw std::invalid_argument("gamma_ratio: need 1 <= k <= n-1");
  const double ln_n = std::lgamma(n + 1.0);
  const double ln_nk = std::lgamma(n - k + 1.0);
  return std::exp(ln_nk / k - ln_n * static_cast<double>(n - k) / (static_cast<double>(k) * n));
}

double gamma_ratio_floor(int n_max) {
  double best = std::numeric_limits<double>::infinity();
  for (int n = 2; n <= n_max; ++n)
    for (int k = 1; k <= n - 1; ++k) best = std::min(best, gamma_ratio(n, k));
  return best;
}

double delta(int n, int k, double s) {
  if (s >= 0.0) throw std::invalid_argument("delta: s must be negative");
  if (n < 2 || k < 1 || k > n - 1) throw std::invalid_argument("delta: need 1 <= k <= n-1");
  const double num = (std::log(static_cast<double>(n)) + log_beta(n, -1.0 / s)) / n;
  const double den = (std::log(static_cast<double>(n - k)) + log_beta(n - k, k - 1.0 / s)) / (n - k);
  return std::exp(num - den);
}

double phi_const(int n, int k) {
  if (n < 2 || k < 1 || k > n - 1) throw std::invalid_argument("phi_const: need 1 <= k <= n-1");
  const double a = std::log(static_cast<double>(n));
  const double b = (static_cast<double>(n) / k) * std::sqrt(std::log(std::exp(1.0) * n / k));
  return std::min(a, b);
}

double s_tilde(int n, int k) {
  if (n < 2 || k < 1 || k > n - 1) throw std::invalid_argument("s_tilde: need 1 <= k <= n-1");
  const double m = static_cast<double>(n - k);
  const double a = std::sqrt(n / m) * std::log(std::exp(1.0) * n / m);
  return std::min(a, std::log(static_cast<double>(n)));
}

double omega_ratio(int n, int k) {
  if (n < 2 || k < 1 || k > n - 1) throw std::invalid_argument("omega_ratio: need 1 <= k <= n-1");
  return std::exp(log_omega(n - k) - log_omega(n) * static_cast<double>(n - k) / n);
}

namespace {

// Series expansion of the regularized lower incomplete gamma P(a,x), x < a+1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for the regularized upper incomplete gamma, x >= a+1.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gammq(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gammq: need a > 0, x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

}  // namespace lcq::constants
