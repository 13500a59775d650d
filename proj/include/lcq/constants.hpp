#pragma once

#include <cstdint>

namespace lcq::constants {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrtE = 1.6487212707001281468;

// Volume of the unit Euclidean ball in R^n: pi^{n/2} / Gamma(n/2 + 1).
double omega(int n);
double log_omega(int n);

// Euler Beta function B(x,y) = Gamma(x)Gamma(y)/Gamma(x+y), x,y > 0.
double beta(double x, double y);
double log_beta(double x, double y);

// n! / ((n-k)!)^{n/(n-k)} — the explicit constant of the section/projection
// comparison theorem.
double stirling_ratio(int n, int k);

// ((n-k)!)^{1/k} / (n!)^{(n-k)/(kn)} — the Gamma ratio controlling the lower
// bound of the dual functional quermassintegral estimate. Bounded below by an
// absolute constant; see gamma_ratio_floor.
double gamma_ratio(int n, int k);

// Exhaustive minimum of gamma_ratio over 2 <= n <= n_max, 1 <= k <= n-1.
double gamma_ratio_floor(int n_max);

// delta_{n,k,s} = (n B(n,-1/s))^{1/n} / ((n-k) B(n-k, k-1/s))^{1/(n-k)},
// the inclusion constant for densities of s-concave measures, s < 0.
double delta(int n, int k, double s);

// phi_{n,k} = min{ log n, (n/k) sqrt(log(e n / k)) }.
double phi_const(int n, int k);

// S~_{n,k} = min{ sqrt(n/(n-k)) ln(e n/(n-k)), ln n }, the alternative
// projection-comparison constant; the companion explicit bound is sqrt(n).
double s_tilde(int n, int k);

// omega_{n-k} / omega_n^{(n-k)/n}; lies strictly between 1 and e^{k/2}.
double omega_ratio(int n, int k);

// Regularized upper incomplete gamma Q(a,x) = Gamma(a,x)/Gamma(a), a > 0.
double gammq(double a, double x);

}  // namespace lcq::constants
