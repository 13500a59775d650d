#include "lcq/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "lcq/constants.hpp"

namespace lcq {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// QUADPACK 15-point Kronrod abscissae/weights (positive half) and the
// embedded 7-point Gauss weights.
constexpr double kXgk[8] = {0.991455371120812639206854697526329,
                            0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926,
                            0.741531185599394439863864773280788,
                            0.586087235467691130294144838258730,
                            0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245,
                            0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970,
                            0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518,
                            0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550,
                            0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649,
                            0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082,
                           0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975,
                           0.417959183673469387755102040816327};

double log_sum_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

struct Panel {
  double a, b;
  double log_i15;  // Kronrod estimate (log)
  double log_err;  // |GK15 - G7| estimate (log)
};

Panel eval_panel(const std::function<double(double)>& lg, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double l15 = kNegInf, l7 = kNegInf;
  for (int i = 0; i < 8; ++i) {
    const double lw15 = std::log(kWgk[i]);
    if (i == 7) {
      const double g = lg(c);
      l15 = log_sum_exp(l15, lw15 + g);
      l7 = log_sum_exp(l7, std::log(kWg[3]) + g);
      break;
    }
    const double gp = lg(c + h * kXgk[i]);
    const double gm = lg(c - h * kXgk[i]);
    l15 = log_sum_exp(l15, lw15 + log_sum_exp(gp, gm));
    if (i % 2 == 1) l7 = log_sum_exp(l7, std::log(kWg[i / 2]) + log_sum_exp(gp, gm));
  }
  Panel p;
  p.a = a;
  p.b = b;
  const double lh = std::log(h);
  p.log_i15 = l15 + lh;
  const double l7s = l7 + lh;
  if (p.log_i15 == kNegInf && l7s == kNegInf) {
    p.log_err = kNegInf;
  } else {
    // |I15 - I7| = I15 * |1 - exp(l7 - l15)| computed stably in logs
    const double m = std::max(p.log_i15, l7s);
    const double diff = std::fabs(std::exp(p.log_i15 - m) - std::exp(l7s - m));
    p.log_err = diff > 0.0 ? m + std::log(diff) : kNegInf;
  }
  return p;
}

}  // namespace

double log_adaptive_integral(const std::function<double(double)>& lg, double rmax,
                             const QuadratureSpec& spec) {
  if (rmax <= 0.0) return kNegInf;
  std::vector<Panel> panels;
  // Seed with a split at a moderate interior point; helps peaked integrands.
  const double split = rmax > 2.0 ? 1.0 : 0.5 * rmax;
  panels.push_back(eval_panel(lg, 0.0, split));
  if (split < rmax) panels.push_back(eval_panel(lg, split, rmax));

  const double log_abs = std::log(spec.abs_tol);
  const double log_rel = std::log(spec.rel_tol);
  while (static_cast<int>(panels.size()) < spec.max_panels) {
    double total = kNegInf, err = kNegInf;
    size_t worst = 0;
    double worst_err = kNegInf;
    for (size_t i = 0; i < panels.size(); ++i) {
      total = log_sum_exp(total, panels[i].log_i15);
      err = log_sum_exp(err, panels[i].log_err);
      if (panels[i].log_err > worst_err) {
        worst_err = panels[i].log_err;
        worst = i;
      }
    }
    if (err <= log_abs || (total != kNegInf && err <= total + log_rel)) break;
    if (worst_err == kNegInf) break;
    const Panel p = panels[worst];
    const double mid = 0.5 * (p.a + p.b);
    if (mid <= p.a || mid >= p.b) break;  // interval exhausted at double precision
    panels[worst] = eval_panel(lg, p.a, mid);
    panels.push_back(eval_panel(lg, mid, p.b));
  }
  double total = kNegInf;
  for (const Panel& p : panels) total = log_sum_exp(total, p.log_i15);
  return total;
}

double moment_tail_bound(const DecayCert& decay, double p, double T) {
  if (decay.kind == DecayCert::Kind::Exponential) {
    // A p int_T^inf r^{p-1} e^{-Br} dr = A p Gamma(p) Q(p, BT) / B^p
    const double lg = std::log(decay.A) + std::log(p) + std::lgamma(p) - p * std::log(decay.B);
    const double q = constants::gammq(p, decay.B * T);
    return q > 0.0 ? std::exp(lg + std::log(q)) : 0.0;
  }
  if (p >= decay.alpha)
    throw std::domain_error("moment_tail_bound: divergent moment, p >= envelope alpha");
  // r^{p-1} <= (1+r)^{p-1}: tail <= A p (1+T)^{p-alpha} / (alpha - p)
  return decay.A * p * std::pow(1.0 + T, p - decay.alpha) / (decay.alpha - p);
}

double moment_tail_radius(const DecayCert& decay, double p, double abs_tol) {
  double T = 1.0;
  for (int i = 0; i < 300; ++i) {
    if (moment_tail_bound(decay, p, T) < abs_tol) return T;
    T *= 1.5;
  }
  throw std::runtime_error("moment_tail_radius: tail bound did not converge");
}

GaussLegendre gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  GaussLegendre gl;
  gl.x.resize(n);
  gl.w.resize(n);
  // Newton iteration on the Legendre polynomial, standard construction.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(constants::kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    const double xm = 0.5 * (b + a), xl = 0.5 * (b - a);
    gl.x[i] = xm - xl * x;
    gl.x[n - 1 - i] = xm + xl * x;
    const double w = 2.0 * xl / ((1.0 - x * x) * pp * pp);
    gl.w[i] = w;
    gl.w[n - 1 - i] = w;
  }
  return gl;
}

LevelGrid make_level_grid(double sup, int points_per_panel, double s_max) {
  if (sup <= 0.0) throw std::invalid_argument("make_level_grid: sup must be positive");
  LevelGrid grid;
  std::vector<double> edges{0.0};
  for (double e = 0.0125; e < s_max; e *= 2.0) edges.push_back(e);
  edges.push_back(s_max);
  for (size_t j = 0; j + 1 < edges.size(); ++j) {
    const GaussLegendre gl = gauss_legendre(points_per_panel, edges[j], edges[j + 1]);
    for (int i = 0; i < points_per_panel; ++i) {
      const double s = gl.x[i];
      // int_0^sup H(t) dt = sup * int_0^inf H(sup e^{-s}) e^{-s} ds
      grid.t.push_back(sup * std::exp(-s));
      grid.w.push_back(sup * std::exp(-s) * gl.w[i]);
    }
  }
  return grid;
}

LevelGrid make_indicator_grid() {
  LevelGrid grid;
  grid.t.push_back(0.5);
  grid.w.push_back(1.0);
  grid.two_level = true;
  return grid;
}

}  // namespace lcq
