#include "aw/macroscopics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "aw/errors.hpp"
#include "aw/kernels.hpp"
#include "aw/special_functions.hpp"

namespace aw {
namespace {

// Partial-pivot Gaussian elimination for the 5x5 Newton systems.
std::array<double, 5> solve5(std::array<std::array<double, 5>, 5> A,
                             std::array<double, 5> b) {
  for (int c = 0; c < 5; ++c) {
    int piv = c;
    for (int r = c + 1; r < 5; ++r)
      if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
    std::swap(A[c], A[piv]);
    std::swap(b[c], b[piv]);
    if (A[c][c] == 0.0)
      throw ConvergenceError("matched closure: singular Newton system");
    for (int r = c + 1; r < 5; ++r) {
      const double f = A[r][c] / A[c][c];
      for (int k = c; k < 5; ++k) A[r][k] -= f * A[c][k];
      b[r] -= f * b[c];
    }
  }
  std::array<double, 5> x{};
  for (int r = 4; r >= 0; --r) {
    double s = b[r];
    for (int k = r + 1; k < 5; ++k) s -= A[r][k] * x[k];
    x[r] = s / A[r][r];
  }
  return x;
}

}  // namespace

Moments compute_moments(std::span<const double> F, const MomentumGrid& g) {
  const auto& ops = kernels::active();
  const std::size_t n = g.n_nodes();
  const double* f = F.data();
  const double* qs[3] = {g.qx().data(), g.qy().data(), g.qz().data()};
  const double* q0 = g.q0().data();
  const double* iq = g.inv_q0().data();
  const double w = g.weight();

  Moments m;
  m.N[0] = w * ops.sum(f, n);
  for (int i = 0; i < 3; ++i) m.N[i + 1] = w * ops.dot3(f, qs[i], iq, n);
  m.T[0][0] = w * ops.dot(f, q0, n);
  for (int i = 0; i < 3; ++i)
    m.T[0][i + 1] = m.T[i + 1][0] = w * ops.dot(f, qs[i], n);
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j)
      m.T[i + 1][j + 1] = m.T[j + 1][i + 1] =
          w * ops.dot4(f, qs[i], qs[j], iq, n);
  m.int_F_over_q0 = w * ops.dot(f, iq, n);
  return m;
}

EckartFields eckart_fields(const Moments& m) {
  const double n2 = minkowski_dot(m.N, m.N);
  if (!(n2 > 0.0) || !(m.N[0] > 0.0))
    throw InvalidStateError(
        "particle four-flow is not future-timelike (N.N = " +
        std::to_string(n2) + ", N^0 = " + std::to_string(m.N[0]) +
        "); frame decomposition undefined");
  const double n = std::sqrt(n2);
  return {n, {m.N[0] / n, m.N[1] / n, m.N[2] / n, m.N[3] / n}};
}

LLFields landau_lifshitz_fields(const Moments& m, double n, const Vec4& u) {
  const Vec4 ul = lower_index(u);
  // A^mu = u_nu T^{nu mu}
  Vec4 A{};
  for (int mu = 0; mu < 4; ++mu)
    A[mu] = ul[0] * m.T[0][mu] + ul[1] * m.T[1][mu] + ul[2] * m.T[2][mu] +
            ul[3] * m.T[3][mu];
  const double ne = ul[0] * A[0] + ul[1] * A[1] + ul[2] * A[2] + ul[3] * A[3];
  const double e = ne / n;

  LLFields out;
  for (int mu = 0; mu < 4; ++mu) out.heat_flux[mu] = A[mu] - u[mu] * ne;
  out.e = e;
  out.p = (ne - m.int_F_over_q0) / 3.0;
  out.h = e + out.p / n;
  if (!(out.h > 0.0))
    throw InvalidStateError("non-positive enthalpy h = " +
                            std::to_string(out.h));

  const double inv_nh = 1.0 / (n * out.h);
  const double Ux = u[1] + out.heat_flux[1] * inv_nh;
  const double Uy = u[2] + out.heat_flux[2] * inv_nh;
  const double Uz = u[3] + out.heat_flux[3] * inv_nh;
  out.U = unit_timelike(Ux, Uy, Uz);
  out.u0_mismatch = std::abs(u[0] + out.heat_flux[0] * inv_nh - out.U[0]);
  return out;
}

MacroState macro_state(const Moments& m) {
  const auto ef = eckart_fields(m);
  const auto ll = landau_lifshitz_fields(m, ef.n, ef.u);
  MacroState s;
  s.n = ef.n;
  s.u = ef.u;
  s.heat_flux = ll.heat_flux;
  s.e = ll.e;
  s.p = ll.p;
  s.h = ll.h;
  s.U = ll.U;
  s.beta = special::invert_e_tilde(ll.e);
  s.u0_mismatch = ll.u0_mismatch;
  return s;
}

namespace {

// max |g| of the five cancellation equations sum w rho (J-F) (1,q,q^0) for
// given weights rho.
double residual_norm(const MomentumGrid& g, const double* rD) {
  const auto& ops = kernels::active();
  const std::size_t n = g.n_nodes();
  const double w = g.weight();
  double r = std::abs(w * ops.sum(rD, n));
  r = std::max(r, std::abs(w * ops.dot(rD, g.qx().data(), n)));
  r = std::max(r, std::abs(w * ops.dot(rD, g.qy().data(), n)));
  r = std::max(r, std::abs(w * ops.dot(rD, g.qz().data(), n)));
  r = std::max(r, std::abs(w * ops.dot(rD, g.q0().data(), n)));
  return r;
}

struct MatchedWork {
  std::vector<double> J, nu, rho, D, rD, rJ, E;
};

AttractorResult matched_newton(std::span<const double> F,
                               const MomentumGrid& g,
                               const JuttnerParams& start, double dt) {
  const auto& ops = kernels::active();
  const std::size_t n = g.n_nodes();
  const double w = g.weight();
  const double* qs[5] = {nullptr, g.qx().data(), g.qy().data(), g.qz().data(),
                         g.q0().data()};
  const double* iq = g.inv_q0().data();

  MatchedWork wk;
  wk.nu.resize(n);
  wk.rho.resize(n);
  wk.D.resize(n);
  wk.rD.resize(n);
  wk.rJ.resize(n);
  wk.E.resize(n);

  std::array<double, 5> x{start.n, start.U[0], start.U[1], start.U[2],
                          start.beta};
  constexpr double kTol = 1e-12;
  constexpr int kMaxIter = 50;

  for (int it = 0; it < kMaxIter; ++it) {
    if (!(x[0] > 0.0) || !(x[4] > 0.0))
      throw MatchedClosureError(
          "matched closure left the parameter domain (n = " +
              std::to_string(x[0]) + ", beta = " + std::to_string(x[4]) + ")",
          start.n, start.U, start.beta);

    const JuttnerParams p{x[0], {x[1], x[2], x[3]}, x[4]};
    const double u0 = p.u0();
    wk.J = evaluate_juttner(p, g);
    ops.collision_freq(wk.nu.data(), qs[1], qs[2], qs[3], iq, u0, x[1], x[2],
                       x[3], n);
    if (dt > 0.0)
      ops.relax_weight(wk.rho.data(), wk.nu.data(), dt, n);
    else
      wk.rho = wk.nu;

    for (std::size_t k = 0; k < n; ++k) wk.D[k] = wk.J[k] - F[k];
    ops.mul(wk.rD.data(), wk.rho.data(), wk.D.data(), n);

    std::array<double, 5> gv;
    gv[0] = w * ops.sum(wk.rD.data(), n);
    for (int r = 1; r < 5; ++r) gv[r] = w * ops.dot(wk.rD.data(), qs[r], n);
    double gmax = 0.0;
    for (double v : gv) gmax = std::max(gmax, std::abs(v));
    if (gmax <= kTol) return {p, std::move(wk.J), it, gmax};

    // S[a][b] = sum rho J s_a s_b over s in {1, qx, qy, qz, q0}
    ops.mul(wk.rJ.data(), wk.rho.data(), wk.J.data(), n);
    double S[5][5];
    S[0][0] = ops.sum(wk.rJ.data(), n);
    for (int a = 1; a < 5; ++a)
      S[0][a] = S[a][0] = ops.dot(wk.rJ.data(), qs[a], n);
    for (int a = 1; a < 5; ++a)
      for (int b = a; b < 5; ++b)
        S[a][b] = S[b][a] = ops.dot3(wk.rJ.data(), qs[a], qs[b], n);

    // E = rho'(nu) D with rho' = e^{-nu dt} = 1 - rho dt (or 1 at dt = 0)
    if (dt > 0.0) {
      for (std::size_t k = 0; k < n; ++k)
        wk.E[k] = (1.0 - wk.rho[k] * dt) * wk.D[k];
    } else {
      wk.E = wk.D;
    }
    double T1[5];
    T1[0] = ops.sum(wk.E.data(), n);
    for (int a = 1; a < 5; ++a) T1[a] = ops.dot(wk.E.data(), qs[a], n);
    // T2[i][phi] = sum E q^i / q^0 * s_phi  (for phi = q0 this is just T1 qi)
    double T2[4][5];
    for (int i = 1; i < 4; ++i) {
      T2[i][0] = ops.dot3(wk.E.data(), qs[i], iq, n);
      for (int b = 1; b < 4; ++b)
        T2[i][b] = ops.dot4(wk.E.data(), qs[i], qs[b], iq, n);
      T2[i][4] = T1[i];
    }

    const double et = special::e_tilde(x[4]);
    std::array<std::array<double, 5>, 5> Jac{};
    for (int r = 0; r < 5; ++r) {
      // columns: n, Ux, Uy, Uz, beta
      Jac[r][0] = w * S[0][r] / x[0];
      Jac[r][4] = w * (et * S[0][r] - u0 * S[4][r] + x[1] * S[1][r] +
                       x[2] * S[2][r] + x[3] * S[3][r]);
      for (int i = 0; i < 3; ++i) {
        const double ui_u0 = x[1 + i] / u0;
        const double dj = x[4] * (S[1 + i][r] - ui_u0 * S[4][r]);
        const double dw = ui_u0 * T1[r] - T2[1 + i][r];
        Jac[r][1 + i] = w * (dj + dw);
      }
    }

    const auto step = solve5(Jac, gv);
    for (int c = 0; c < 5; ++c) x[c] -= step[c];
  }
  throw MatchedClosureError("matched closure: no convergence after 50 Newton iterations",
                            start.n, start.U, start.beta);
}

}  // namespace

AttractorResult aw_attractor(std::span<const double> F,
                             const MomentumGrid& grid, ClosureMode mode) {
  const Moments m = compute_moments(F, grid);
  const MacroState s = macro_state(m);
  const JuttnerParams formula{s.n, {s.U[1], s.U[2], s.U[3]}, s.beta};

  if (mode == ClosureMode::matched)
    return matched_newton(F, grid, formula, 0.0);

  auto J = evaluate_juttner(formula, grid);
  // report the nu-weighted cancellation residual of the formula parameters
  const auto& ops = kernels::active();
  const std::size_t n = grid.n_nodes();
  std::vector<double> nu(n), rD(n);
  ops.collision_freq(nu.data(), grid.qx().data(), grid.qy().data(),
                     grid.qz().data(), grid.inv_q0().data(), formula.u0(),
                     formula.U[0], formula.U[1], formula.U[2], n);
  for (std::size_t k = 0; k < n; ++k) rD[k] = nu[k] * (J[k] - F[k]);
  const double res = residual_norm(grid, rD.data());
  return {formula, std::move(J), 0, res};
}

AttractorResult matched_attractor(std::span<const double> F,
                                  const MomentumGrid& grid, double dt) {
  const Moments m = compute_moments(F, grid);
  const MacroState s = macro_state(m);
  const JuttnerParams formula{s.n, {s.U[1], s.U[2], s.U[3]}, s.beta};
  return matched_newton(F, grid, formula, dt);
}

}  // namespace aw
