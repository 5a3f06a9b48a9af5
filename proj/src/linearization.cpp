#include "aw/linearization.hpp"

#include <cmath>
#include <string>

#include "aw/errors.hpp"
#include "aw/kernels.hpp"
#include "aw/spectral.hpp"
#include "aw/special_functions.hpp"

namespace aw {

double inner_q(std::span<const double> f, std::span<const double> g,
               const MomentumGrid& grid) {
  return grid.weight() * kernels::active().dot(f.data(), g.data(), f.size());
}

double norm_q(std::span<const double> f, const MomentumGrid& grid) {
  return std::sqrt(inner_q(f, f, grid));
}

KernelBasis KernelBasis::build(const GlobalMaxwellian& gm,
                               const MomentumGrid& grid) {
  const std::size_t n = grid.n_nodes();
  KernelBasis b;
  b.beta0 = gm.beta0;
  b.e0 = gm.e0;
  const auto fns = special::closure_fns(gm.beta0);
  b.h_tilde0 = fns.h_tilde;
  b.e_tilde_prime0 = fns.e_tilde_prime;

  const double cq = std::sqrt(gm.beta0 / fns.h_tilde);
  const double ce = std::sqrt(-1.0 / fns.e_tilde_prime);
  const double* qs[3] = {grid.qx().data(), grid.qy().data(), grid.qz().data()};

  for (auto& v : b.e) v.resize(n);
  b.e[0] = gm.sqrt_j0;
  for (int i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < n; ++k)
      b.e[1 + i][k] = cq * qs[i][k] * gm.sqrt_j0[k];
  for (std::size_t k = 0; k < n; ++k)
    b.e[4][k] = ce * (grid.q0()[k] - gm.e0) * gm.sqrt_j0[k];

  // Discrete orthonormalization (modified Gram-Schmidt, two passes) so the
  // projector built on these is idempotent and self-adjoint to rounding.
  const auto& ops = kernels::active();
  b.onb = b.e;
  for (int i = 0; i < 5; ++i) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < i; ++j) {
        const double c = inner_q(b.onb[i], b.onb[j], grid);
        ops.axpy(b.onb[i].data(), -c, b.onb[j].data(), n);
      }
    }
    const double nrm = norm_q(b.onb[i], grid);
    if (!(nrm > 0.0))
      throw InvalidStateError("kernel basis degenerated on this grid");
    const double inv = 1.0 / nrm;
    for (std::size_t k = 0; k < n; ++k) b.onb[i][k] *= inv;
  }
  return b;
}

std::array<std::array<double, 5>, 5> KernelBasis::analytic_gram(
    const MomentumGrid& grid) const {
  std::array<std::array<double, 5>, 5> g{};
  for (int i = 0; i < 5; ++i)
    for (int j = i; j < 5; ++j)
      g[i][j] = g[j][i] = inner_q(e[i], e[j], grid);
  return g;
}

std::vector<double> decompose(std::span<const double> F,
                              const GlobalMaxwellian& gm,
                              const MomentumGrid& grid) {
  std::vector<double> f(grid.n_nodes());
  kernels::active().sub_mul(f.data(), F.data(), gm.j0.data(),
                            gm.inv_sqrt_j0.data(), grid.n_nodes());
  return f;
}

std::vector<double> recompose(std::span<const double> f,
                              const GlobalMaxwellian& gm,
                              const MomentumGrid& grid) {
  std::vector<double> F(grid.n_nodes());
  for (std::size_t k = 0; k < grid.n_nodes(); ++k)
    F[k] = gm.j0[k] + f[k] * gm.sqrt_j0[k];
  return F;
}

void project(std::span<const double> f, const KernelBasis& basis,
             const MomentumGrid& grid, std::span<double> out) {
  const auto& ops = kernels::active();
  const std::size_t n = grid.n_nodes();
  double coef[5];
  for (int i = 0; i < 5; ++i)
    coef[i] = inner_q(f, basis.onb[i], grid);
  std::fill(out.begin(), out.end(), 0.0);
  for (int i = 0; i < 5; ++i)
    ops.axpy(out.data(), coef[i], basis.onb[i].data(), n);
}

void linearized_L(std::span<const double> f, const KernelBasis& basis,
                  const MomentumGrid& grid, std::span<double> out) {
  project(f, basis, grid, out);
  for (std::size_t k = 0; k < f.size(); ++k) out[k] -= f[k];
}

std::vector<double> gamma_residual(std::span<const double> F,
                                   const GlobalMaxwellian& gm,
                                   const KernelBasis& basis,
                                   const MomentumGrid& grid,
                                   ClosureMode mode) {
  const auto& ops = kernels::active();
  const std::size_t n = grid.n_nodes();
  const auto att = aw_attractor(F, grid, mode);

  std::vector<double> nu(n);
  ops.collision_freq(nu.data(), grid.qx().data(), grid.qy().data(),
                     grid.qz().data(), grid.inv_q0().data(), att.params.u0(),
                     att.params.U[0], att.params.U[1], att.params.U[2], n);

  // rhs in f variables: nu (J - F) / sqrt(J0)
  std::vector<double> rhs(n);
  ops.sub_mul(rhs.data(), att.J.data(), F.data(), gm.inv_sqrt_j0.data(), n);
  for (std::size_t k = 0; k < n; ++k) rhs[k] *= nu[k];

  const auto f = decompose(F, gm, grid);
  std::vector<double> Lf(n);
  linearized_L(f, basis, grid, Lf);
  for (std::size_t k = 0; k < n; ++k) rhs[k] -= Lf[k];
  return rhs;
}

PerturbationQuantities psi_phi(std::span<const double> f,
                               const GlobalMaxwellian& gm,
                               const MomentumGrid& grid) {
  const auto& ops = kernels::active();
  const std::size_t n = grid.n_nodes();
  const double w = grid.weight();

  const double a = w * ops.dot(f.data(), gm.sqrt_j0.data(), n);
  double b2 = 0.0;
  double b[3];
  const double* qs[3] = {grid.qx().data(), grid.qy().data(), grid.qz().data()};
  for (int i = 0; i < 3; ++i) {
    b[i] = w * ops.dot4(f.data(), gm.sqrt_j0.data(), qs[i],
                        grid.inv_q0().data(), n);
    b2 += b[i] * b[i];
  }

  PerturbationQuantities out;
  out.psi = 2.0 * a + a * a - b2;
  out.psi1 = a * a - b2;
  if (!(1.0 + out.psi > 0.0))
    throw RegimeError("1 + psi = " + std::to_string(1.0 + out.psi) +
                      " <= 0: outside the near-equilibrium regime");

  // phi = u_mu q^mu - q^0 with u the Eckart velocity of F = J0 + f sqrt(J0)
  const auto F = recompose(f, gm, grid);
  const auto ef = eckart_fields(compute_moments(F, grid));
  out.phi.resize(n);
  out.phi1.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double uq = ef.u[0] * grid.q0()[k] - ef.u[1] * qs[0][k] -
                      ef.u[2] * qs[1][k] - ef.u[3] * qs[2][k];
    out.phi[k] = uq - grid.q0()[k];
    out.phi1[k] =
        out.phi[k] + qs[0][k] * b[0] + qs[1][k] * b[1] + qs[2][k] * b[2];
  }
  return out;
}

std::vector<double> gamma1_term(std::span<const double> f,
                                const GlobalMaxwellian& gm,
                                const MomentumGrid& grid) {
  const auto& ops = kernels::active();
  const std::size_t n = grid.n_nodes();
  const double w = grid.weight();
  const double a = w * ops.dot(f.data(), gm.sqrt_j0.data(), n);
  double b2 = 0.0;
  const double* qs[3] = {grid.qx().data(), grid.qy().data(), grid.qz().data()};
  for (int i = 0; i < 3; ++i) {
    const double bi = w * ops.dot4(f.data(), gm.sqrt_j0.data(), qs[i],
                                   grid.inv_q0().data(), n);
    b2 += bi * bi;
  }
  const double psi = 2.0 * a + a * a - b2;
  const double psi1 = a * a - b2;
  if (!(1.0 + psi > 0.0))
    throw RegimeError("1 + psi <= 0: outside the near-equilibrium regime");
  const double coef =
      0.5 * psi1 - psi * psi / (2.0 * (2.0 + psi + 2.0 * std::sqrt(1.0 + psi)));
  std::vector<double> g(n);
  for (std::size_t k = 0; k < n; ++k) g[k] = coef * gm.sqrt_j0[k];
  return g;
}

namespace {

// 4th-order first derivative along one momentum axis; one-sided closures at
// the truncation boundary.
void momentum_axis_derivative(std::span<const double> in, int axis,
                              const MomentumGrid& grid,
                              std::span<double> out) {
  const int n = grid.n_axis();
  const double inv12h = 1.0 / (12.0 * grid.spacing());
  std::vector<double> line(n);
  std::vector<std::size_t> idx(n);

  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int i = 0; i < n; ++i) {
        int ix = 0, iy = 0, iz = 0;
        switch (axis) {
          case 0:
            ix = i, iy = a, iz = b;
            break;
          case 1:
            ix = a, iy = i, iz = b;
            break;
          default:
            ix = a, iy = b, iz = i;
        }
        idx[i] = grid.node_at(ix, iy, iz);
        line[i] = in[idx[i]];
      }
      for (int i = 0; i < n; ++i) {
        double d;
        if (i >= 2 && i <= n - 3) {
          d = (line[i - 2] - 8.0 * line[i - 1] + 8.0 * line[i + 1] -
               line[i + 2]) *
              inv12h;
        } else if (i == 0) {
          d = (-25.0 * line[0] + 48.0 * line[1] - 36.0 * line[2] +
               16.0 * line[3] - 3.0 * line[4]) *
              inv12h;
        } else if (i == 1) {
          d = (-3.0 * line[0] - 10.0 * line[1] + 18.0 * line[2] -
               6.0 * line[3] + line[4]) *
              inv12h;
        } else if (i == n - 2) {
          d = (3.0 * line[n - 1] + 10.0 * line[n - 2] - 18.0 * line[n - 3] +
               6.0 * line[n - 4] - line[n - 5]) *
              inv12h;
        } else {
          d = (25.0 * line[n - 1] - 48.0 * line[n - 2] + 36.0 * line[n - 3] -
               16.0 * line[n - 4] + 3.0 * line[n - 5]) *
              inv12h;
        }
        out[idx[i]] = d;
      }
    }
  }
}

}  // namespace

double energy_functional(std::span<const double> f, int n_x, double L,
                         const MomentumGrid& grid, int max_order) {
  XSpectral spec(n_x, grid.n_nodes());
  return energy_functional(f, n_x, L, grid, max_order, spec);
}

double energy_functional(std::span<const double> f, int n_x, double L,
                         const MomentumGrid& grid, int max_order,
                         XSpectral& spec) {
  if (max_order < 0 || max_order > 2)
    throw ConfigError("energy functional supports max_order in {0, 1, 2}");
  const std::size_t n_nodes = grid.n_nodes();
  const std::size_t total = static_cast<std::size_t>(n_x) * n_nodes;
  const auto& ops = kernels::active();
  const double cellw = (L / n_x) * grid.weight();

  std::vector<double> work(total), next(total);

  double energy = 0.0;
  for (int a = 0; a <= max_order; ++a) {
    for (int b1 = 0; b1 + a <= max_order; ++b1) {
      for (int b2 = 0; b1 + b2 + a <= max_order; ++b2) {
        for (int b3 = 0; b1 + b2 + b3 + a <= max_order; ++b3) {
          std::copy(f.begin(), f.end(), work.begin());
          for (int r = 0; r < a; ++r) {
            spec.derivative_x(work.data(), next.data(), L);
            work.swap(next);
          }
          const int reps[3] = {b1, b2, b3};
          for (int axis = 0; axis < 3; ++axis) {
            for (int r = 0; r < reps[axis]; ++r) {
              for (int c = 0; c < n_x; ++c) {
                momentum_axis_derivative(
                    std::span<const double>(work.data() + c * n_nodes,
                                            n_nodes),
                    axis, grid,
                    std::span<double>(next.data() + c * n_nodes, n_nodes));
              }
              work.swap(next);
            }
          }
          energy += cellw * ops.dot(work.data(), work.data(), total);
        }
      }
    }
  }
  return energy;
}

}  // namespace aw
