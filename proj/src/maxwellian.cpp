#include "aw/maxwellian.hpp"

#include <cmath>

#include "aw/kernels.hpp"
#include "aw/special_functions.hpp"

namespace aw {

double JuttnerParams::u0() const {
  return std::sqrt(1.0 + U[0] * U[0] + U[1] * U[1] + U[2] * U[2]);
}

Vec4 JuttnerParams::four_velocity() const { return {u0(), U[0], U[1], U[2]}; }

std::vector<double> evaluate_juttner(const JuttnerParams& params,
                                     const MomentumGrid& grid) {
  // exponent: -beta (U^0 q^0 - U.q) + ln n - ln M(beta)
  const double b = params.beta;
  const double d = std::log(params.n) - special::log_m_of_beta(b);
  std::vector<double> out(grid.n_nodes());
  kernels::active().exp_affine4(
      out.data(), grid.q0().data(), grid.qx().data(), grid.qy().data(),
      grid.qz().data(), -b * params.u0(), b * params.U[0], b * params.U[1],
      b * params.U[2], d, grid.n_nodes());
  return out;
}

std::vector<double> global_maxwellian(double beta0, const MomentumGrid& grid) {
  return evaluate_juttner({1.0, {0.0, 0.0, 0.0}, beta0}, grid);
}

GlobalMaxwellian GlobalMaxwellian::build(double beta0,
                                         const MomentumGrid& grid) {
  GlobalMaxwellian g;
  g.beta0 = beta0;
  g.e0 = special::e_tilde(beta0);
  g.j0 = global_maxwellian(beta0, grid);
  g.sqrt_j0.resize(g.j0.size());
  g.inv_sqrt_j0.resize(g.j0.size());
  for (std::size_t k = 0; k < g.j0.size(); ++k) {
    g.sqrt_j0[k] = std::sqrt(g.j0[k]);
    g.inv_sqrt_j0[k] = 1.0 / g.sqrt_j0[k];
  }
  return g;
}

Mat4 lorentz_boost(const Vec4& U) {
  const double u2 = U[1] * U[1] + U[2] * U[2] + U[3] * U[3];
  Mat4 m{};
  if (u2 < 1e-28) {  // |U| < 1e-14: rest frame already
    for (int i = 0; i < 4; ++i) m[i][i] = 1.0;
    return m;
  }
  const double g = (U[0] - 1.0) / u2;
  m[0] = {U[0], -U[1], -U[2], -U[3]};
  for (int i = 1; i < 4; ++i) {
    m[i][0] = -U[i];
    for (int j = 1; j < 4; ++j)
      m[i][j] = (i == j ? 1.0 : 0.0) + g * U[i] * U[j];
  }
  return m;
}

JuttnerDerivs juttner_param_derivs(const JuttnerParams& params,
                                   const MomentumGrid& grid) {
  const auto& ops = kernels::active();
  const std::size_t n = grid.n_nodes();
  const double b = params.beta;
  const auto fns = special::closure_fns(b);
  const std::vector<double> j = evaluate_juttner(params, grid);

  JuttnerDerivs d;
  d.dn.resize(n);
  d.du0.resize(n);
  for (auto& c : d.du) c.resize(n);
  d.de.resize(n);

  const double inv_n = 1.0 / params.n;
  const double u0 = params.u0();
  for (std::size_t k = 0; k < n; ++k) d.dn[k] = j[k] * inv_n;
  // dJ/dU^0 = -beta q^0 J, grad_U J = beta q J
  for (std::size_t k = 0; k < n; ++k) d.du0[k] = -b * grid.q0()[k] * j[k];
  ops.mul(d.du[0].data(), grid.qx().data(), j.data(), n);
  ops.mul(d.du[1].data(), grid.qy().data(), j.data(), n);
  ops.mul(d.du[2].data(), grid.qz().data(), j.data(), n);
  for (int i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < n; ++k) d.du[i][k] *= b;

  // dJ/de = -(1/e~') (U^mu q_mu - e~) J, using M'/M = -e~ (Bessel identity)
  const double c = -1.0 / fns.e_tilde_prime;
  for (std::size_t k = 0; k < n; ++k) {
    const double uq = u0 * grid.q0()[k] - params.U[0] * grid.qx()[k] -
                      params.U[1] * grid.qy()[k] - params.U[2] * grid.qz()[k];
    d.de[k] = c * (uq - fns.e_tilde) * j[k];
  }
  return d;
}

}  // namespace aw
