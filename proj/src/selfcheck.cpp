#include "aw/selfcheck.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include "aw/errors.hpp"
#include "aw/kernels.hpp"
#include "aw/linearization.hpp"
#include "aw/macroscopics.hpp"
#include "aw/maxwellian.hpp"
#include "aw/momentum_grid.hpp"
#include "aw/rng.hpp"
#include "aw/solver.hpp"
#include "aw/special_functions.hpp"

namespace aw::selfcheck {
namespace {

using Suite = std::vector<CheckResult>;

void add(Suite& s, const std::string& name, bool pass,
         const std::string& detail = "") {
  s.push_back({name, pass, detail});
}

void add_err(Suite& s, const std::string& name, double err, double tol) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "err %.3g tol %.3g", err, tol);
  s.push_back({name, std::abs(err) <= tol, buf});
}

// shared small resolved grid (beta0 = 2)
struct Fixture {
  double beta0 = 2.0;
  MomentumGrid grid = MomentumGrid::build(15.0, 72);
  GlobalMaxwellian gm = GlobalMaxwellian::build(2.0, grid);
};

const Fixture& fixture() {
  static Fixture f;
  return f;
}

std::vector<double> random_perturbed_equilibrium(const Fixture& f,
                                                 double eps,
                                                 std::uint64_t seed) {
  const CounterRng rng{seed};
  std::vector<double> F = f.gm.j0;
  for (std::size_t k = 0; k < F.size(); ++k) {
    const double smooth = rng.symmetric(k / 97);  // blockwise-smooth noise
    F[k] *= 1.0 + eps * (smooth + 0.5 * rng.symmetric(k / 31));
  }
  return F;
}

Suite check_kernels() {
  Suite s;
  const auto& ref = kernels::scalar_ops();
  const auto* simd = kernels::avx2_ops();
  std::mt19937_64 prng(3);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  const std::size_t n = 4096;
  std::vector<double> a(n), b(n);
  for (auto& v : a) v = dist(prng);
  for (auto& v : b) v = dist(prng);
  if (simd != nullptr) {
    const double d0 = ref.dot(a.data(), b.data(), n);
    const double d1 = simd->dot(a.data(), b.data(), n);
    add(s, "scalar/simd reductions bit-identical", d0 == d1);
    std::vector<double> o0(n), o1(n), z(n, 0.0);
    ref.exp_affine4(o0.data(), a.data(), z.data(), z.data(), z.data(), 1.0, 0,
                    0, 0, 0, n);
    simd->exp_affine4(o1.data(), a.data(), z.data(), z.data(), z.data(), 1.0,
                      0, 0, 0, 0, n);
    add(s, "scalar/simd exp bit-identical", o0 == o1);
  } else {
    add(s, "simd backend present", true, "not on this platform; scalar only");
  }
  // mirror-pair cancellation
  std::vector<double> v(n), sgn(n);
  for (std::size_t p = 0; p < n / 2; ++p) {
    v[2 * p] = v[2 * p + 1] = std::abs(a[p]) + 0.1;
    sgn[2 * p] = b[p];
    sgn[2 * p + 1] = -b[p];
  }
  add(s, "paired reduction cancels odd terms exactly",
      kernels::active().dot(v.data(), sgn.data(), n) == 0.0);
  // exp accuracy
  bool ok = true;
  for (double x : {-700.0, -30.0, -1.0, -1e-8, 0.0}) {
    double out;
    std::vector<double> zz(1, 0.0);
    kernels::active().exp_affine4(&out, &x, zz.data(), zz.data(), zz.data(),
                                  1.0, 0, 0, 0, 0, 1);
    ok = ok && std::abs(out - std::exp(x)) <= 4.0 * std::exp(x) * 0x1p-52;
  }
  add(s, "guarded exp within 4 ulp of std::exp", ok);
  return s;
}

Suite check_special_fn() {
  Suite s;
  using namespace special;
  bool rec = true, mono = true, pos = true, rt = true;
  double prev = 1e300;
  for (int i = 0; i < 50; ++i) {
    const double beta = 0.05 * std::pow(1000.0 / 1.0, i / 49.0);
    const auto be = bessel_eval(beta);
    rec = rec &&
          std::abs(be.k2 - (2.0 / beta * be.k1 + be.k0)) <= 1e-10 * be.k2;
    const double e = e_tilde(beta);
    mono = mono && e < prev && e > 1.0;
    prev = e;
    pos = pos && e_tilde_prime(beta) < 0.0;
  }
  add(s, "recurrence K2 = 2K1/beta + K0 (50 points)", rec);
  add(s, "e_tilde decreasing and > 1", mono);
  add(s, "e_tilde_prime negative", pos);
  for (double beta : {0.07, 1.0, 12.0})
    rt = rt && std::abs(invert_e_tilde(e_tilde(beta)) / beta - 1.0) <= 1e-10;
  add(s, "closure inversion round trip", rt);
  const double fd =
      (m_of_beta(1.0 + 1e-6) - m_of_beta(1.0 - 1e-6)) / 2e-6;
  add_err(s, "normalizer log-derivative identity",
          e_tilde(1.0) + fd / m_of_beta(1.0), 1e-6);
  return s;
}

Suite check_momentum_grid() {
  Suite s;
  const auto& f = fixture();
  const auto& g = f.grid;
  add_err(s, "equilibrium normalization resolvable",
          g.normalization_error(f.beta0), 1e-6);
  const auto r = special::bessel_k_scaled(1, f.beta0) /
                 special::bessel_k_scaled(2, f.beta0);
  add_err(s, "moment table: density entry",
          g.moment(f.gm.j0, [](double, double, double) { return 1.0; }, true) -
              r,
          1e-6);
  add_err(s,
          "moment table: pressure entry",
          g.moment(f.gm.j0,
                   [](double qx, double, double) { return qx * qx; }, true) -
              1.0 / f.beta0,
          1e-6);
  add(s, "odd moments vanish exactly",
      g.moment(f.gm.j0, [](double qx, double, double) { return qx; }, true) ==
              0.0 &&
          g.moment(f.gm.j0, [](double, double qy, double) { return qy; },
                   false) == 0.0);
  add_err(s, "second radial moment identity",
          g.moment(f.gm.j0,
                   [](double qx, double qy, double qz) {
                     return qx * qx + qy * qy + qz * qz;
                   },
                   false) -
              (12.0 / (f.beta0 * f.beta0) + 3.0 / f.beta0 * r),
          1e-6);
  return s;
}

Suite check_maxwellian() {
  Suite s;
  const auto& f = fixture();
  bool boost_ok = true;
  std::mt19937_64 prng(11);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec4 U = unit_timelike(dist(prng), dist(prng), dist(prng));
    const Mat4 L = lorentz_boost(U);
    const Vec4 r = mat_vec(L, U);
    boost_ok = boost_ok && std::abs(r[0] - 1.0) < 1e-12 &&
               std::abs(r[1]) < 1e-12 && std::abs(r[2]) < 1e-12 &&
               std::abs(r[3]) < 1e-12;
    // metric preservation
    for (int i = 0; i < 4 && boost_ok; ++i)
      for (int j = 0; j < 4; ++j) {
        double s_ij = 0.0;
        for (int k = 0; k < 4; ++k)
          s_ij += L[k][i] * (k == 0 ? 1.0 : -1.0) * L[k][j];
        const double eta = (i == j) ? (i == 0 ? 1.0 : -1.0) : 0.0;
        if (std::abs(s_ij - eta) > 1e-12) {
          boost_ok = false;
          break;
        }
      }
  }
  add(s, "boost maps U to rest frame and preserves the metric", boost_ok);

  const JuttnerParams p{1.3, {0.05, -0.1, 0.02}, f.beta0};
  const auto j = evaluate_juttner(p, f.grid);
  bool positive = true;
  for (double v : j) positive = positive && v > 0.0;
  add(s, "Juttner field positive", positive);

  // derivative fields against central differences
  const auto d = juttner_param_derivs(p, f.grid);
  const double step = 1e-5;
  auto jp = p;
  jp.n += step;
  auto jm = p;
  jm.n -= step;
  const auto fp = evaluate_juttner(jp, f.grid);
  const auto fm = evaluate_juttner(jm, f.grid);
  double max_rel = 0.0;
  for (std::size_t k = 0; k < j.size(); k += 97) {
    const double fd = (fp[k] - fm[k]) / (2.0 * step);
    if (std::abs(d.dn[k]) > 1e-300)
      max_rel = std::max(max_rel, std::abs(fd / d.dn[k] - 1.0));
  }
  add_err(s, "density derivative matches finite differences", max_rel, 1e-6);
  return s;
}

Suite check_macroscopics() {
  Suite s;
  const auto& f = fixture();
  const JuttnerParams p{1.0, {0.1, 0.0, 0.0}, f.beta0};
  const auto Fj = evaluate_juttner(p, f.grid);

  const auto att_f = aw_attractor(Fj, f.grid, ClosureMode::formula);
  add_err(s, "formula closure fixed point (beta)",
          att_f.params.beta / p.beta - 1.0, 1e-5);
  const auto att_m = aw_attractor(Fj, f.grid, ClosureMode::matched);
  add_err(s, "matched closure fixed point (beta)",
          att_m.params.beta / p.beta - 1.0, 1e-9);
  add_err(s, "matched closure residual", att_m.residual, 1e-11);

  const auto F = random_perturbed_equilibrium(f, 1e-2, 42);
  const auto m = compute_moments(F, f.grid);
  const auto ef = eckart_fields(m);
  const auto ll = landau_lifshitz_fields(m, ef.n, ef.u);
  const double ortho = minkowski_dot(ll.heat_flux, ef.u);
  add_err(s, "heat flux orthogonal to Eckart velocity", ortho, 1e-10);
  add(s, "pressure and enthalpy positive", ll.p > 0.0 && ll.h > 0.0);

  const auto att = matched_attractor(F, f.grid, 0.1);
  add_err(s, "matched closure residual on perturbed state", att.residual,
          1e-11);
  return s;
}

Suite check_linearization() {
  Suite s;
  const auto& f = fixture();
  const auto basis = KernelBasis::build(f.gm, f.grid);

  const auto gram = basis.analytic_gram(f.grid);
  double dev = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      dev = std::max(dev, std::abs(gram[i][j] - (i == j ? 1.0 : 0.0)));
  add_err(s, "analytic kernel basis orthonormal at grid accuracy", dev, 5e-6);

  const std::size_t n = f.grid.n_nodes();
  std::mt19937_64 prng(5);
  std::normal_distribution<double> gauss;
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k)
    v[k] = gauss(prng) * f.gm.sqrt_j0[k] * (1.0 + 0.3 * f.grid.qx()[k]);

  std::vector<double> Pv(n), PPv(n), Lv(n);
  project(v, basis, f.grid, Pv);
  project(Pv, basis, f.grid, PPv);
  double idem = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    idem = std::max(idem, std::abs(PPv[k] - Pv[k]));
  add_err(s, "projection idempotent", idem, 1e-12);

  linearized_L(v, basis, f.grid, Lv);
  const double lhs = inner_q(Lv, v, f.grid);
  std::vector<double> res(n);
  for (std::size_t k = 0; k < n; ++k) res[k] = v[k] - Pv[k];
  const double rhs = -inner_q(res, res, f.grid);
  add_err(s, "dissipativity identity <Lf,f> = -|(I-P)f|^2", lhs - rhs, 1e-10);
  add(s, "dissipativity sign", lhs <= 0.0);

  const auto F = random_perturbed_equilibrium(f, 1e-3, 7);
  const auto fpert = decompose(F, f.gm, f.grid);
  const auto Fr = recompose(fpert, f.gm, f.grid);
  double rtmax = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    rtmax = std::max(rtmax, std::abs(Fr[k] - F[k]) / F[k]);
  add_err(s, "decompose/recompose round trip", rtmax, 1e-14);
  return s;
}

Suite check_solver() {
  Suite s;
  const auto grid = MomentumGrid::build(10.0, 16);
  const double beta0 = 2.0;
  Solver solver(grid, beta0, SpatialGrid{8, 1.0}, SolverOptions{});
  const auto j = evaluate_juttner({1.0, {0.1, 0.0, 0.0}, 1.0}, grid);
  std::vector<std::vector<double>> cells(8, j);
  auto state = solver.state_from_cells(cells);
  const auto d0 = solver.diagnose(state);
  for (int k = 0; k < 10; ++k) solver.strang_step(state, 0.1);
  const auto d1 = solver.diagnose(state);
  add_err(s, "uniform equilibrium stationary (mass)",
          (d1.mass - d0.mass) / d0.mass, 1e-12);
  add_err(s, "uniform equilibrium stationary (energy)",
          (d1.energy - d0.energy) / d0.energy, 1e-12);
  add(s, "positivity after steps", d1.min_F >= 0.0);

  // full-period transport returns the state
  auto wave = state;
  const KineticState ref = wave;
  // displacement one period for the fastest node would need huge dt; use a
  // uniform state instead: transport must leave it untouched.
  solver.transport_step(wave, 0.37);
  double diff = 0.0;
  for (std::size_t i = 0; i < wave.F.size(); ++i)
    diff = std::max(diff, std::abs(wave.F[i] - ref.F[i]) / ref.F[i]);
  add_err(s, "transport leaves x-uniform states invariant", diff, 1e-12);
  return s;
}

}  // namespace

std::vector<std::string> module_names() {
  return {"kernels",      "special_fn",    "momentum_grid", "maxwellian",
          "macroscopics", "linearization", "solver"};
}

std::vector<CheckResult> run_module(const std::string& module) {
  if (module == "kernels") return check_kernels();
  if (module == "special_fn") return check_special_fn();
  if (module == "momentum_grid") return check_momentum_grid();
  if (module == "maxwellian") return check_maxwellian();
  if (module == "macroscopics") return check_macroscopics();
  if (module == "linearization") return check_linearization();
  if (module == "solver") return check_solver();
  throw ConfigError("unknown module '" + module + "'");
}

std::vector<CheckResult> run_all() {
  std::vector<CheckResult> all;
  for (const auto& m : module_names()) {
    auto r = run_module(m);
    for (auto& c : r) {
      c.name = m + ": " + c.name;
      all.push_back(std::move(c));
    }
  }
  return all;
}

}  // namespace aw::selfcheck
