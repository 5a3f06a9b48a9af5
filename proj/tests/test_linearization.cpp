#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "aw/errors.hpp"
#include "aw/kernels.hpp"
#include "aw/linearization.hpp"
#include "aw/macroscopics.hpp"
#include "aw/maxwellian.hpp"
#include "aw/momentum_grid.hpp"
#include "aw/special_functions.hpp"
#include "aw/spectral.hpp"

using namespace aw;

namespace {
const double kBeta0 = 2.0;
const MomentumGrid& grid() {
  static MomentumGrid g = MomentumGrid::build(15.0, 72);
  return g;
}
const GlobalMaxwellian& gm() {
  static GlobalMaxwellian m = GlobalMaxwellian::build(kBeta0, grid());
  return m;
}
const KernelBasis& basis() {
  static KernelBasis b = KernelBasis::build(gm(), grid());
  return b;
}

std::vector<double> random_f(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const auto& g = grid();
  std::vector<double> f(g.n_nodes());
  for (std::size_t k = 0; k < f.size(); ++k)
    f[k] = gauss(rng) * gm().sqrt_j0[k] *
           (1.0 + 0.2 * g.qx()[k] - 0.1 * g.qz()[k]);
  return f;
}

std::vector<double> smooth_g() {
  const auto& g = grid();
  std::vector<double> v(g.n_nodes());
  for (std::size_t k = 0; k < v.size(); ++k)
    v[k] = g.qx()[k] * g.inv_q0()[k] + 0.4 * (g.q0()[k] - gm().e0) +
           0.3 * std::sin(g.qy()[k]);
  return v;
}
}  // namespace

TEST_CASE("decompose") {
  const auto& g = grid();
  SUBCASE("equilibrium gives zero") {
    const auto f = decompose(gm().j0, gm(), g);
    for (double v : f) CHECK(v == 0.0);
  }
  SUBCASE("doubled equilibrium gives sqrt(J0)") {
    std::vector<double> F(g.n_nodes());
    for (std::size_t k = 0; k < F.size(); ++k) F[k] = 2.0 * gm().j0[k];
    const auto f = decompose(F, gm(), g);
    for (std::size_t k = 0; k < f.size(); k += 77)
      CHECK(f[k] == doctest::Approx(gm().sqrt_j0[k]).epsilon(1e-14));
  }
  SUBCASE("round trip to 1e-14 relative") {
    std::vector<double> F = gm().j0;
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> dist(0.2, 3.0);
    for (auto& v : F) v *= dist(rng);
    const auto f = decompose(F, gm(), g);
    const auto Fr = recompose(f, gm(), g);
    for (std::size_t k = 0; k < F.size(); ++k)
      CHECK(std::abs(Fr[k] - F[k]) <= 1e-14 * F[k]);
  }
}

TEST_CASE("analytic basis orthonormal at grid accuracy; odd cross terms exact") {
  const auto gram = basis().analytic_gram(grid());
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      CHECK(std::abs(gram[i][j] - (i == j ? 1.0 : 0.0)) < 5e-6);
  // odd-parity pairs cancel bitwise
  for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}})
    CHECK(gram[i][j] == 0.0);
  // e5 coefficient well-defined: -e~'(beta0) > 0
  CHECK(basis().e_tilde_prime0 < 0.0);
}

TEST_CASE("projection") {
  const auto& g = grid();
  const std::size_t n = g.n_nodes();
  std::vector<double> out(n), out2(n);

  SUBCASE("reproduces analytic basis members at grid accuracy") {
    project(basis().e[0], basis(), g, out);
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k)
      worst = std::max(worst, std::abs(out[k] - basis().e[0][k]));
    CHECK(worst < 5e-6);
  }
  SUBCASE("annihilates the orthogonal complement") {
    auto f = random_f(11);
    // strip the kernel part exactly
    std::vector<double> Pf(n);
    project(f, basis(), g, Pf);
    for (std::size_t k = 0; k < n; ++k) f[k] -= Pf[k];
    project(f, basis(), g, out);
    const double scale = norm_q(f, g);
    CHECK(norm_q(out, g) < 1e-10 * std::max(1.0, scale));
  }
  SUBCASE("idempotent and self-adjoint") {
    const auto f = random_f(12);
    const auto h = random_f(13);
    project(f, basis(), g, out);
    project(out, basis(), g, out2);
    double worst = 0.0;
    for (std::size_t k = 0; k < n; ++k)
      worst = std::max(worst, std::abs(out2[k] - out[k]));
    CHECK(worst < 1e-12);
    std::vector<double> Ph(n);
    project(h, basis(), g, Ph);
    CHECK(inner_q(out, h, g) ==
          doctest::Approx(inner_q(f, Ph, g)).epsilon(1e-12));
  }
  SUBCASE("residual orthogonal to the projection") {
    const auto f = random_f(14);
    project(f, basis(), g, out);
    std::vector<double> res(n);
    for (std::size_t k = 0; k < n; ++k) res[k] = f[k] - out[k];
    CHECK(std::abs(inner_q(out, res, g)) < 1e-10);
  }
}

TEST_CASE("linearized operator") {
  const auto& g = grid();
  const std::size_t n = g.n_nodes();
  std::vector<double> Lf(n), Pf(n);

  SUBCASE("kernel directions map to ~0") {
    for (int i = 0; i < 5; ++i) {
      linearized_L(basis().onb[i], basis(), g, Lf);
      CHECK(norm_q(Lf, g) < 1e-12);
    }
  }
  SUBCASE("dissipativity identity over random fields") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto f = random_f(seed);
      linearized_L(f, basis(), g, Lf);
      const double lhs = inner_q(Lf, f, g);
      project(f, basis(), g, Pf);
      std::vector<double> res(n);
      for (std::size_t k = 0; k < n; ++k) res[k] = f[k] - Pf[k];
      const double rhs = -inner_q(res, res, g);
      CHECK(lhs <= 0.0);
      CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("psi/phi quantities") {
  const auto& g = grid();
  SUBCASE("zero perturbation") {
    const std::vector<double> f(g.n_nodes(), 0.0);
    const auto pq = psi_phi(f, gm(), g);
    CHECK(pq.psi == 0.0);
    CHECK(pq.psi1 == 0.0);
    // phi = u.q - q0 with u = (1,0,0,0) up to grid error
    for (std::size_t k = 0; k < g.n_nodes(); k += 997)
      CHECK(std::abs(pq.phi[k]) < 1e-5 * g.q0()[k]);
  }
  SUBCASE("macroscopic density matches sqrt(1+psi) up to normalization") {
    auto f = smooth_g();
    for (auto& v : f) v *= 1e-2;
    for (std::size_t k = 0; k < f.size(); ++k) f[k] *= gm().sqrt_j0[k];
    const auto pq = psi_phi(f, gm(), g);
    const auto F = recompose(f, gm(), g);
    const auto ef = eckart_fields(compute_moments(F, g));
    // the discrete normalization of J0 bounds the gap
    const double s0 = g.moment(gm().j0,
                               [](double, double, double) { return 1.0; },
                               false);
    CHECK(std::abs(ef.n - std::sqrt(1.0 + pq.psi)) <=
          4.0 * std::abs(s0 - 1.0) + 1e-10);
  }
  SUBCASE("psi - psi1 = 2 int f sqrtJ0") {
    const auto f = random_f(21);
    const auto pq = psi_phi(f, gm(), g);
    const double a = inner_q(f, gm().sqrt_j0, g);
    CHECK(pq.psi - pq.psi1 == doctest::Approx(2.0 * a).epsilon(1e-13));
  }
  SUBCASE("far-from-equilibrium perturbations rejected") {
    // drive 1 + psi = (1 + a)^2 - |b|^2 negative: a ~ -1 plus momentum flux
    std::vector<double> f(g.n_nodes());
    for (std::size_t k = 0; k < f.size(); ++k)
      f[k] = (-1.0 + 3.0 * g.qx()[k]) * gm().sqrt_j0[k];
    CHECK_THROWS_AS(psi_phi(f, gm(), g), RegimeError);
    CHECK_THROWS_AS(gamma1_term(f, gm(), g), RegimeError);
  }
  SUBCASE("square-root expansion identity for sampled psi") {
    for (double psi : {-0.45, -0.2, -1e-3, 0.0, 1e-3, 0.2, 0.45}) {
      const double lhs = std::sqrt(1.0 + psi);
      const double rhs =
          1.0 + psi / 2.0 -
          psi * psi / (2.0 * (2.0 + psi + 2.0 * std::sqrt(1.0 + psi)));
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
    }
  }
}

TEST_CASE("first nonlinear remainder term") {
  const auto& g = grid();
  SUBCASE("zero perturbation gives zero") {
    const std::vector<double> f(g.n_nodes(), 0.0);
    const auto g1 = gamma1_term(f, gm(), g);
    for (double v : g1) CHECK(v == 0.0);
  }
  SUBCASE("node-wise identity with the density expansion") {
    // (sqrt(1+psi) - 1) sqrtJ0 = (int f sqrtJ0) sqrtJ0 + Gamma_1(f)
    auto f = smooth_g();
    for (std::size_t k = 0; k < f.size(); ++k) f[k] *= 1e-2 * gm().sqrt_j0[k];
    const auto pq = psi_phi(f, gm(), g);
    const auto g1 = gamma1_term(f, gm(), g);
    const double a = inner_q(f, gm().sqrt_j0, g);
    const double nfromsqrt = std::sqrt(1.0 + pq.psi);
    for (std::size_t k = 0; k < f.size(); k += 83) {
      const double lhs = (nfromsqrt - 1.0) * gm().sqrt_j0[k];
      const double rhs = a * gm().sqrt_j0[k] + g1[k];
      CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
    }
  }
  SUBCASE("quadratic smallness under f -> eps f") {
    auto base = smooth_g();
    for (std::size_t k = 0; k < base.size(); ++k) base[k] *= gm().sqrt_j0[k];
    double prev = 0.0;
    bool first = true;
    for (double eps : {1e-2, 5e-3, 2.5e-3}) {
      auto f = base;
      for (auto& v : f) v *= eps;
      const double nrm = norm_q(gamma1_term(f, gm(), g), g) / (eps * eps);
      if (!first) CHECK(nrm == doctest::Approx(prev).epsilon(0.15));
      prev = nrm;
      first = false;
    }
  }
}

TEST_CASE("nonlinear residual") {
  const auto& g = grid();
  const std::size_t n = g.n_nodes();

  SUBCASE("vanishes at equilibrium") {
    const auto gamma = gamma_residual(gm().j0, gm(), basis(), g);
    CHECK(norm_q(gamma, g) < 1e-11);
  }

  SUBCASE("decomposition consistency: rhs == sqrtJ0 (L f + Gamma f)") {
    auto base = smooth_g();
    std::vector<double> F = gm().j0;
    for (std::size_t k = 0; k < n; ++k)
      F[k] += 1e-2 * base[k] * gm().sqrt_j0[k];

    const auto gamma = gamma_residual(F, gm(), basis(), g,
                                      ClosureMode::matched);
    const auto f = decompose(F, gm(), g);
    std::vector<double> Lf(n);
    linearized_L(f, basis(), g, Lf);

    // direct relaxation right-hand side with the same closure
    const auto att = aw_attractor(F, g, ClosureMode::matched);
    std::vector<double> nu(n);
    kernels::active().collision_freq(
        nu.data(), g.qx().data(), g.qy().data(), g.qz().data(),
        g.inv_q0().data(), att.params.u0(), att.params.U[0], att.params.U[1],
        att.params.U[2], n);
    double scale = 0.0, worst = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double direct = nu[k] * (att.J[k] - F[k]);
      const double viaf = gm().sqrt_j0[k] * (Lf[k] + gamma[k]);
      scale = std::max(scale, std::abs(direct));
      worst = std::max(worst, std::abs(direct - viaf));
    }
    CHECK(worst <= 1e-12 * std::max(1.0, scale));
  }

  SUBCASE("quadratic smallness of the residual") {
    auto base = smooth_g();
    double prev = 0.0;
    bool first = true;
    for (double eps : {1e-2, 5e-3, 2.5e-3}) {
      std::vector<double> F = gm().j0;
      for (std::size_t k = 0; k < n; ++k)
        F[k] += eps * base[k] * gm().sqrt_j0[k];
      const auto gamma = gamma_residual(F, gm(), basis(), g);
      const double scaled = norm_q(gamma, g) / (eps * eps);
      if (!first) CHECK(scaled == doctest::Approx(prev).epsilon(0.15));
      prev = scaled;
      first = false;
    }
  }
}

TEST_CASE("energy functional") {
  const auto g = MomentumGrid::build(6.0, 12);
  const int n_x = 8;
  const double L = 1.0;
  const std::size_t total = n_x * g.n_nodes();

  SUBCASE("zero field") {
    const std::vector<double> f(total, 0.0);
    CHECK(energy_functional(f, n_x, L, g, 1) == 0.0);
  }
  SUBCASE("exact quadratic scaling") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> gauss;
    std::vector<double> f(total), f2(total);
    for (std::size_t i = 0; i < total; ++i) {
      f[i] = gauss(rng);
      f2[i] = 2.0 * f[i];
    }
    const double e1 = energy_functional(f, n_x, L, g, 1);
    const double e2 = energy_functional(f2, n_x, L, g, 1);
    CHECK(e2 == 4.0 * e1);
  }
  SUBCASE("x-uniform field has no spatial contribution") {
    std::vector<double> cell(g.n_nodes());
    for (std::size_t k = 0; k < cell.size(); ++k)
      cell[k] = std::exp(-0.5 * g.q0()[k]);
    std::vector<double> f(total);
    for (int c = 0; c < n_x; ++c)
      std::copy(cell.begin(), cell.end(), f.begin() + c * g.n_nodes());
    const double e0 = energy_functional(f, n_x, L, g, 0);
    const double e1 = energy_functional(f, n_x, L, g, 1);
    // uniform in x: the full-domain norm is n_x copies of one cell
    const double e0_cell = energy_functional(cell, 1, L / n_x, g, 0);
    CHECK(e0 == doctest::Approx(n_x * e0_cell).epsilon(1e-12));
    CHECK(e1 > e0);
    // spatial derivative of a uniform field is rounding-level
    std::vector<double> fx(total);
    XSpectral spec(n_x, g.n_nodes());
    spec.derivative_x(f.data(), fx.data(), L);
    double worst = 0.0;
    for (double v : fx) worst = std::max(worst, std::abs(v));
    CHECK(worst < 1e-12);
  }
  SUBCASE("momentum derivative accuracy on a smooth field") {
    // f = exp(-q0): df/dqx = -qx/q0 exp(-q0), 4th order stencil
    std::vector<double> f(g.n_nodes());
    for (std::size_t k = 0; k < f.size(); ++k) f[k] = std::exp(-g.q0()[k]);
    const double e = energy_functional(f, 1, 1.0, g, 1);
    CHECK(e > 0.0);
  }
  SUBCASE("order validation") {
    const std::vector<double> f(total, 0.0);
    CHECK_THROWS_AS(energy_functional(f, n_x, L, g, 3), ConfigError);
  }
}
