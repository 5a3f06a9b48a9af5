#pragma once

#include <array>
#include <span>
#include <vector>

#include "aw/macroscopics.hpp"
#include "aw/maxwellian.hpp"
#include "aw/momentum_grid.hpp"

namespace aw {

// discrete L_q^2 inner product <f,g> = w * sum_k f_k g_k
double inner_q(std::span<const double> f, std::span<const double> g,
               const MomentumGrid& grid);
double norm_q(std::span<const double> f, const MomentumGrid& grid);

// Five-dimensional kernel basis of the linearized operator. `e` holds the
// analytic fields
//   e1 = sqrt(J0), e_{2,3,4} = sqrt(beta0/h~) q^i sqrt(J0),
//   e5 = sqrt(-1/e~') (q^0 - e0) sqrt(J0),
// orthonormal in the continuum. `onb` is the same span orthonormalized in
// the *discrete* inner product (modified Gram-Schmidt, two passes); the
// projector uses it so that P is an orthogonal projection onto N up to
// rounding on any grid, not just resolved ones.
struct KernelBasis {
  double beta0, e0, h_tilde0, e_tilde_prime0;
  std::array<std::vector<double>, 5> e;
  std::array<std::vector<double>, 5> onb;

  static KernelBasis build(const GlobalMaxwellian& gm,
                           const MomentumGrid& grid);

  // Gram matrix of the analytic fields in the discrete inner product;
  // approaches the identity at the grid's quadrature accuracy.
  std::array<std::array<double, 5>, 5> analytic_gram(
      const MomentumGrid& grid) const;
};

// f = (F - J0) / sqrt(J0)
std::vector<double> decompose(std::span<const double> F,
                              const GlobalMaxwellian& gm,
                              const MomentumGrid& grid);

// F = J0 + f sqrt(J0)
std::vector<double> recompose(std::span<const double> f,
                              const GlobalMaxwellian& gm,
                              const MomentumGrid& grid);

// P(f), the orthogonal projection onto span{e1..e5}
void project(std::span<const double> f, const KernelBasis& basis,
             const MomentumGrid& grid, std::span<double> out);

// L(f) = P(f) - f
void linearized_L(std::span<const double> f, const KernelBasis& basis,
                  const MomentumGrid& grid, std::span<double> out);

// Nonlinear remainder, computed as the exact residual
//   Gamma(f) = (U_mu q^mu / q^0) (J(F) - F) / sqrt(J0) - L(f),
// so that the full relaxation right-hand side is sqrt(J0) (L(f) + Gamma(f))
// identically. Closure errors propagate.
std::vector<double> gamma_residual(std::span<const double> F,
                                   const GlobalMaxwellian& gm,
                                   const KernelBasis& basis,
                                   const MomentumGrid& grid,
                                   ClosureMode mode = ClosureMode::matched);

// psi = 2 int f sqrtJ0 + (int f sqrtJ0)^2 - sum_i (int f sqrtJ0 q^i dq/q0)^2
// and friends; phi and phi1 are per-node fields built from the Eckart
// velocity of F = J0 + f sqrt(J0).
struct PerturbationQuantities {
  double psi, psi1;
  std::vector<double> phi, phi1;
};

PerturbationQuantities psi_phi(std::span<const double> f,
                               const GlobalMaxwellian& gm,
                               const MomentumGrid& grid);

// Gamma_1(f) = (psi1/2 - psi^2 / (2 (2 + psi + 2 sqrt(1+psi)))) sqrt(J0)
std::vector<double> gamma1_term(std::span<const double> f,
                                const GlobalMaxwellian& gm,
                                const MomentumGrid& grid);

// Energy functional of a space-momentum perturbation field (cell-major,
// n_x * n_nodes): sum over |alpha| + |beta| <= max_order of the squared L2
// norms of d^alpha_x d^beta_q f. Spatial derivatives are spectral on the
// periodic lattice, momentum derivatives 4th-order central differences with
// one-sided closures at the grid boundary. max_order <= 2.
double energy_functional(std::span<const double> f, int n_x, double L,
                         const MomentumGrid& grid, int max_order);

// Same, reusing a caller-owned spectral transform (the solver's hot path).
class XSpectral;
double energy_functional(std::span<const double> f, int n_x, double L,
                         const MomentumGrid& grid, int max_order,
                         XSpectral& spec);

}  // namespace aw
