#include "aw/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "aw/errors.hpp"

namespace aw::special {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Scaled integrands of the y-substituted representations:
//   e^{beta} K_i(beta) = int_0^inf phi_i(y) exp(-beta (sqrt(1+y^2) - 1)) dy
// with phi_0 = 1/s, phi_1 = 1, phi_2 = (2y^2+1)/s, s = sqrt(1+y^2).
double scaled_integrand(int order, double beta, double y) {
  const double s = std::sqrt(1.0 + y * y);
  const double w = std::exp(-beta * (s - 1.0));
  switch (order) {
    case 0:
      return w / s;
    case 1:
      return w;
    default:
      return w * (2.0 * y * y + 1.0) / s;
  }
}

// Upper truncation point: doubling scan until the integrand falls below
// 1e-18 of its sampled peak.
double truncation_point(int order, double beta) {
  const double probe = std::max(1.0, 10.0 / beta);
  double peak = 0.0;
  for (int i = 0; i <= 64; ++i)
    peak = std::max(peak, scaled_integrand(order, beta, probe * i / 64.0));
  double y = probe;
  while (scaled_integrand(order, beta, y) > 1e-18 * peak) {
    y *= 2.0;
    if (y > 1e14) break;
  }
  return y;
}

struct SimpsonState {
  int order;
  double beta;
  long evals = 0;
};

double adapt(SimpsonState& st, double a, double b, double fa, double fm,
             double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = scaled_integrand(st.order, st.beta, lm);
  const double frm = scaled_integrand(st.order, st.beta, rm);
  st.evals += 2;
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adapt(st, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adapt(st, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_scaled(int order, double beta) {
  const double ymax = truncation_point(order, beta);

  // geometric panels seed the adaptivity across the decades of [0, ymax]
  std::vector<double> panels{0.0};
  for (double v = std::min(1.0, ymax); v < ymax; v *= 4.0) panels.push_back(v);
  panels.push_back(ymax);

  SimpsonState st{order, beta};
  struct Panel {
    double a, b, fa, fm, fb, whole;
  };
  std::vector<Panel> ps;
  double rough = 0.0;
  for (std::size_t i = 0; i + 1 < panels.size(); ++i) {
    Panel p;
    p.a = panels[i];
    p.b = panels[i + 1];
    const double m = 0.5 * (p.a + p.b);
    p.fa = scaled_integrand(order, beta, p.a);
    p.fm = scaled_integrand(order, beta, m);
    p.fb = scaled_integrand(order, beta, p.b);
    p.whole = (p.b - p.a) / 6.0 * (p.fa + 4.0 * p.fm + p.fb);
    rough += std::abs(p.whole);
    ps.push_back(p);
  }

  const double rtol = 1e-13;
  const double tol =
      rtol * std::max(rough, 1e-300) / static_cast<double>(ps.size());
  double total = 0.0;
  for (const Panel& p : ps)
    total += adapt(st, p.a, p.b, p.fa, p.fm, p.fb, p.whole, tol, 60);
  return total;
}

void require_beta(double beta) {
  if (!(beta > 0.0))
    throw DomainError("bessel functions require beta > 0, got " +
                      std::to_string(beta));
}

void require_order(int order) {
  if (order < 0 || order > 2)
    throw DomainError("bessel order must be 0, 1 or 2, got " +
                      std::to_string(order));
}

}  // namespace

double bessel_k_scaled(int order, double beta) {
  require_order(order);
  require_beta(beta);
  return integrate_scaled(order, beta);
}

double bessel_k(int order, double beta) {
  return std::exp(-beta) * bessel_k_scaled(order, beta);
}

BesselEval bessel_eval(double beta) {
  return {beta, bessel_k(0, beta), bessel_k(1, beta), bessel_k(2, beta)};
}

double m_of_beta(double beta) {
  require_beta(beta);
  return 4.0 * kPi / beta * bessel_k(2, beta);
}

double log_m_of_beta(double beta) {
  require_beta(beta);
  return std::log(4.0 * kPi / beta) + std::log(bessel_k_scaled(2, beta)) -
         beta;
}

namespace {
double k1_over_k2(double beta) {
  return bessel_k_scaled(1, beta) / bessel_k_scaled(2, beta);
}
}  // namespace

double e_tilde(double beta) {
  require_beta(beta);
  return k1_over_k2(beta) + 3.0 / beta;
}

double e_tilde_prime(double beta) {
  require_beta(beta);
  const double r = k1_over_k2(beta);
  return 3.0 / beta * r + r * r - 1.0 - 3.0 / (beta * beta);
}

double h_tilde(double beta) {
  require_beta(beta);
  return k1_over_k2(beta) + 4.0 / beta;
}

ClosureFns closure_fns(double beta) {
  require_beta(beta);
  const double r = k1_over_k2(beta);
  return {r + 3.0 / beta, r + 4.0 / beta,
          3.0 / beta * r + r * r - 1.0 - 3.0 / (beta * beta)};
}

double invert_e_tilde(double e) {
  if (!(e > 1.0))
    throw ClosureDomainError(
        "e_tilde only takes values > 1; cannot invert e = " +
        std::to_string(e));

  // e_tilde is strictly decreasing, so lo/hi bracket means
  // e_tilde(lo) >= e >= e_tilde(hi).
  double lo = 1e-3, hi = 1e3;
  double flo = e_tilde(lo), fhi = e_tilde(hi);
  while (flo < e) {
    lo *= 0.1;
    if (lo < 1e-13)
      throw ConvergenceError("invert_e_tilde: bracket expansion exhausted (e=" +
                             std::to_string(e) + " too large)");
    flo = e_tilde(lo);
  }
  while (fhi > e) {
    hi *= 10.0;
    if (hi > 1e13)
      throw ConvergenceError("invert_e_tilde: bracket expansion exhausted (e=" +
                             std::to_string(e) + " too close to 1)");
    fhi = e_tilde(hi);
  }

  // Asymptotic seeds: e~ ~ 3/beta for hot gases, 1 + 3/(2 beta) for cold.
  double beta = (e > 2.5) ? 3.0 / (e - 1.0) : 1.5 / (e - 1.0);
  beta = std::clamp(beta, lo, hi);

  for (int it = 0; it < 200; ++it) {
    const double r = k1_over_k2(beta);
    const double f = r + 3.0 / beta - e;
    const double fp = 3.0 / beta * r + r * r - 1.0 - 3.0 / (beta * beta);
    if (f > 0.0)
      lo = beta;  // e_tilde(beta) > e => root is to the right
    else
      hi = beta;
    double next = beta - f / fp;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisection guard
    if (std::abs(next - beta) <= 1e-12 * beta) return next;
    beta = next;
  }
  throw ConvergenceError("invert_e_tilde: no convergence for e = " +
                         std::to_string(e));
}

}  // namespace aw::special
