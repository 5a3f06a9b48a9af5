#include "aw/solver.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "aw/errors.hpp"
#include "aw/kernels.hpp"
#include "aw/parallel.hpp"
#include "aw/rng.hpp"

namespace aw {

Solver::Solver(const MomentumGrid& grid, double beta0, SpatialGrid x,
               SolverOptions opts)
    : grid_(grid),
      gm_(GlobalMaxwellian::build(beta0, grid)),
      basis_(KernelBasis::build(gm_, grid)),
      x_(x),
      opts_(opts),
      spec_(x.n_x, grid.n_nodes()),
      scratch_(static_cast<std::size_t>(x.n_x) * grid.n_nodes()) {}

KineticState Solver::state_from_cells(
    const std::vector<std::vector<double>>& cells) const {
  KineticState s;
  s.x = x_;
  s.n_nodes = grid_.n_nodes();
  s.t = 0.0;
  s.F.resize(static_cast<std::size_t>(x_.n_x) * s.n_nodes);
  for (int c = 0; c < x_.n_x; ++c)
    std::copy(cells[c].begin(), cells[c].end(),
              s.F.begin() + static_cast<std::size_t>(c) * s.n_nodes);
  return s;
}

void Solver::relaxation_step(KineticState& s, double dt) {
  const auto& ops = kernels::active();
  const std::size_t n = grid_.n_nodes();
  const int n_cells = x_.n_x;
  std::vector<double> residual(n_cells, 0.0);
  std::vector<int> iters(n_cells, 0);

  parallel_for(static_cast<std::size_t>(n_cells), [&](std::size_t c) {
    auto Fc = s.cell(static_cast<int>(c));
    AttractorResult att;
    try {
      att = (opts_.closure == ClosureMode::matched)
                ? matched_attractor(Fc, grid_, dt)
                : aw_attractor(Fc, grid_, ClosureMode::formula);
    } catch (const MatchedClosureError& e) {
      throw MatchedClosureError("cell " + std::to_string(c) + ": " + e.what(),
                                e.n, e.U, e.beta);
    } catch (const Error& e) {
      throw InvalidStateError("cell " + std::to_string(c) + ": " + e.what());
    }
    std::vector<double> nu(n);
    ops.collision_freq(nu.data(), grid_.qx().data(), grid_.qy().data(),
                       grid_.qz().data(), grid_.inv_q0().data(),
                       att.params.u0(), att.params.U[0], att.params.U[1],
                       att.params.U[2], n);
    ops.relax_update(Fc.data(), att.J.data(), nu.data(), dt, n);
    residual[c] = att.residual;
    iters[c] = att.iterations;
  });

  last_residual_ = 0.0;
  last_iters_ = 0;
  for (int c = 0; c < n_cells; ++c) {
    last_residual_ = std::max(last_residual_, residual[c]);
    last_iters_ = std::max(last_iters_, iters[c]);
  }
  s.t += dt;
}

void Solver::transport_step(KineticState& s, double dt) {
  if (x_.n_x == 1 || dt == 0.0) {
    s.t += dt;
    return;
  }
  if (opts_.scheme == TransportScheme::upwind2) {
    upwind_transport(s, dt);
  } else {
    auto it = phase_tables_.find(dt);
    if (it == phase_tables_.end())
      it = phase_tables_
               .emplace(dt, spec_.advection_phases(grid_, dt, x_.L))
               .first;
    spec_.apply_filter(s.F.data(), it->second);
  }
  s.t += dt;
}

void Solver::upwind_transport(KineticState& s, double dt) {
  // Beam-Warming second-order upwind in flux form per momentum node.
  const std::size_t n = grid_.n_nodes();
  const int nx = x_.n_x;
  const double dx = x_.dx();
  std::vector<double> line(nx);
  for (std::size_t k = 0; k < n; ++k) {
    const double c = grid_.qx()[k] * grid_.inv_q0()[k] * dt / dx;
    if (std::abs(c) > 1.0)
      throw ConfigError(
          "upwind2 scheme needs |qhat| dt <= dx (CFL); reduce dt to at most " +
          std::to_string(dx));
    for (int i = 0; i < nx; ++i) line[i] = s.F[i * n + k];
    auto at = [&](int i) { return line[((i % nx) + nx) % nx]; };
    if (c >= 0.0) {
      for (int i = 0; i < nx; ++i)
        s.F[i * n + k] = at(i) -
                         0.5 * c * (3.0 * at(i) - 4.0 * at(i - 1) + at(i - 2)) +
                         0.5 * c * c * (at(i) - 2.0 * at(i - 1) + at(i - 2));
    } else {
      for (int i = 0; i < nx; ++i)
        s.F[i * n + k] = at(i) +
                         0.5 * c * (3.0 * at(i) - 4.0 * at(i + 1) + at(i + 2)) +
                         0.5 * c * c * (at(i) - 2.0 * at(i + 1) + at(i + 2));
    }
  }
}

void Solver::strang_step(KineticState& s, double dt) {
  const double t0 = s.t;
  transport_step(s, 0.5 * dt);
  relaxation_step(s, dt);
  transport_step(s, 0.5 * dt);
  s.t = t0 + dt;  // avoid drift from summing half steps
}

StepDiagnostics Solver::diagnose(const KineticState& s) {
  const auto& ops = kernels::active();
  const std::size_t n = grid_.n_nodes();
  const double cellw = x_.dx() * grid_.weight();

  StepDiagnostics d;
  d.t = s.t;
  d.closure_residual = last_residual_;
  double min_f = s.F.empty() ? 0.0 : s.F[0];
  for (int c = 0; c < x_.n_x; ++c) {
    const auto Fc = s.cell(c);
    d.mass += cellw * ops.sum(Fc.data(), n);
    d.momentum[0] += cellw * ops.dot(Fc.data(), grid_.qx().data(), n);
    d.momentum[1] += cellw * ops.dot(Fc.data(), grid_.qy().data(), n);
    d.momentum[2] += cellw * ops.dot(Fc.data(), grid_.qz().data(), n);
    d.energy += cellw * ops.dot(Fc.data(), grid_.q0().data(), n);
    // H = sum F ln F with 0 ln 0 := 0, summed pair-first like the kernels
    double h = 0.0;
    for (std::size_t k = 0; k + 2 <= n; k += 2) {
      const double a = Fc[k] > 0.0 ? Fc[k] * std::log(Fc[k]) : 0.0;
      const double b =
          Fc[k + 1] > 0.0 ? Fc[k + 1] * std::log(Fc[k + 1]) : 0.0;
      h += a + b;
    }
    d.H += cellw * h;
    for (std::size_t k = 0; k < n; ++k) min_f = std::min(min_f, Fc[k]);
  }
  d.min_F = min_f;

  // perturbation energy
  for (int c = 0; c < x_.n_x; ++c)
    ops.sub_mul(scratch_.data() + static_cast<std::size_t>(c) * n,
                s.cell(c).data(), gm_.j0.data(), gm_.inv_sqrt_j0.data(), n);
  d.E_f = energy_functional(scratch_, x_.n_x, x_.L, grid_,
                            opts_.energy_max_order, spec_);
  return d;
}

double Solver::max_collision_freq(const KineticState& s) const {
  const auto& ops = kernels::active();
  const std::size_t n = grid_.n_nodes();
  std::vector<double> nu(n);
  double nu_max = 0.0;
  for (int c = 0; c < x_.n_x; ++c) {
    const auto ms = macro_state(compute_moments(s.cell(c), grid_));
    ops.collision_freq(nu.data(), grid_.qx().data(), grid_.qy().data(),
                       grid_.qz().data(), grid_.inv_q0().data(), ms.U[0],
                       ms.U[1], ms.U[2], ms.U[3], n);
    for (std::size_t k = 0; k < n; ++k) nu_max = std::max(nu_max, nu[k]);
  }
  return nu_max;
}

// ---------------------------------------------------------------------------
// initial conditions

KineticState build_initial_state(const RunConfig& cfg, const Solver& solver) {
  const MomentumGrid& grid = solver.grid();
  const GlobalMaxwellian& gm = solver.equilibrium();
  const std::size_t n = grid.n_nodes();
  const int nx = cfg.n_x;
  const double twopi = 6.28318530717958647692;

  std::vector<std::vector<double>> cells(nx);
  const auto x_of = [&](int c) { return (c + 0.5) * cfg.L / nx; };

  if (cfg.ic.type == "equilibrium") {
    for (int c = 0; c < nx; ++c) cells[c] = gm.j0;
  } else if (cfg.ic.type == "wave") {
    // F = J0 (1 + a cos(2 pi m x / L) s(q)), s = qhat_x + (q0 - e0)/2
    std::vector<double> shape(n);
    for (std::size_t k = 0; k < n; ++k)
      shape[k] = grid.qx()[k] * grid.inv_q0()[k] +
                 0.5 * (grid.q0()[k] - gm.e0);
    for (int c = 0; c < nx; ++c) {
      const double a =
          cfg.ic.amplitude *
          std::cos(twopi * cfg.ic.mode_number * x_of(c) / cfg.L);
      cells[c].resize(n);
      for (std::size_t k = 0; k < n; ++k)
        cells[c][k] = gm.j0[k] * (1.0 + a * shape[k]);
    }
  } else if (cfg.ic.type == "two_maxwellian") {
    // homogeneous mixture of two drifting Maxwellians
    const auto j_plus =
        evaluate_juttner({1.0, {0.2, 0.0, 0.0}, 1.2}, grid);
    const auto j_minus =
        evaluate_juttner({1.0, {-0.2, 0.0, 0.0}, 0.9}, grid);
    std::vector<double> mix(n);
    for (std::size_t k = 0; k < n; ++k)
      mix[k] = 0.5 * (j_plus[k] + j_minus[k]);
    for (int c = 0; c < nx; ++c) cells[c] = mix;
  } else if (cfg.ic.type == "random") {
    // smooth random field over low x-modes and a small shape dictionary
    const CounterRng rng{cfg.ic.seed};
    std::array<std::vector<double>, 4> shapes;
    for (auto& v : shapes) v.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double q0 = grid.q0()[k];
      shapes[0][k] = 1.0;
      shapes[1][k] = grid.qx()[k] * grid.inv_q0()[k];
      shapes[2][k] = (q0 - gm.e0) / (1.0 + q0);
      shapes[3][k] = grid.qx()[k] * grid.qy()[k] * grid.inv_q0()[k] *
                     grid.inv_q0()[k];
    }
    for (int c = 0; c < nx; ++c) {
      cells[c].assign(n, 0.0);
      for (int m = 0; m <= 2; ++m) {
        const double arg = twopi * m * x_of(c) / cfg.L;
        for (int sidx = 0; sidx < 4; ++sidx) {
          const std::uint64_t base = 8u * m + 2u * sidx;
          const double amp = rng.symmetric(base) * std::cos(arg) +
                             rng.symmetric(base + 1) * std::sin(arg);
          for (std::size_t k = 0; k < n; ++k)
            cells[c][k] += amp * shapes[sidx][k];
        }
      }
      for (std::size_t k = 0; k < n; ++k)
        cells[c][k] = gm.j0[k] * (1.0 + cfg.ic.amplitude * cells[c][k]);
    }
  } else {
    throw ConfigError("unknown ic.type '" + cfg.ic.type + "'");
  }

  if (cfg.project_conserved && cfg.ic.type != "equilibrium" &&
      cfg.ic.type != "two_maxwellian") {
    // remove the x-mean kernel components of f = (F - J0)/sqrt(J0), so the
    // state shares total mass, momentum and energy with J0
    const auto& ops = kernels::active();
    std::vector<double> fbar(n, 0.0), fc(n);
    for (int c = 0; c < nx; ++c) {
      ops.sub_mul(fc.data(), cells[c].data(), gm.j0.data(),
                  gm.inv_sqrt_j0.data(), n);
      ops.axpy(fbar.data(), 1.0 / nx, fc.data(), n);
    }
    double coef[5];
    for (int i = 0; i < 5; ++i)
      coef[i] = inner_q(fbar, solver.basis().onb[i], grid);
    for (int c = 0; c < nx; ++c) {
      ops.sub_mul(fc.data(), cells[c].data(), gm.j0.data(),
                  gm.inv_sqrt_j0.data(), n);
      for (int i = 0; i < 5; ++i)
        ops.axpy(fc.data(), -coef[i], solver.basis().onb[i].data(), n);
      for (std::size_t k = 0; k < n; ++k)
        cells[c][k] = gm.j0[k] + fc[k] * gm.sqrt_j0[k];
    }
  }

  for (int c = 0; c < nx; ++c)
    for (std::size_t k = 0; k < n; ++k)
      if (cells[c][k] < 0.0)
        throw ValidationError(
            "initial condition produced a negative distribution value; "
            "reduce ic.amplitude");

  return solver.state_from_cells(cells);
}

// ---------------------------------------------------------------------------
// full run

namespace {

void fit_decay(const std::vector<StepDiagnostics>& series, RunSummary& out) {
  // least squares on log E_f over the final 60% of samples
  std::vector<std::pair<double, double>> pts;
  const std::size_t start = series.size() - series.size() * 3 / 5;
  for (std::size_t i = start; i < series.size(); ++i)
    if (series[i].E_f > 0.0)
      pts.emplace_back(series[i].t, std::log(series[i].E_f));
  if (pts.size() < 3) return;
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (auto& [t, y] : pts) {
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
  }
  const double m = static_cast<double>(pts.size());
  const double denom = m * stt - st * st;
  if (denom == 0.0) return;
  const double rate = (m * sty - st * sy) / denom;
  const double icpt = (sy - rate * st) / m;
  double ss_res = 0, ss_tot = 0;
  const double ybar = sy / m;
  for (auto& [t, y] : pts) {
    ss_res += (y - rate * t - icpt) * (y - rate * t - icpt);
    ss_tot += (y - ybar) * (y - ybar);
  }
  out.decay_rate = rate;
  out.decay_r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  out.decay_fit_valid = true;
}

void persist_state(const KineticState& s, const std::string& dir) {
  std::ofstream out(std::filesystem::path(dir) / "last_state.f64",
                    std::ios::binary);
  out.write(reinterpret_cast<const char*>(s.F.data()),
            static_cast<std::streamsize>(s.F.size() * sizeof(double)));
}

void write_summary(const RunSummary& r, const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["t_reached"] = r.t_reached;
  j["steps"] = r.steps;
  j["dt"] = r.dt;
  j["drift_mass_rel"] = r.drift_mass_rel;
  j["drift_momentum_over_mass"] = r.drift_momentum_over_mass;
  j["drift_energy_rel"] = r.drift_energy_rel;
  j["min_F_overall"] = r.min_F_overall;
  j["max_closure_residual"] = r.max_closure_residual;
  if (r.decay_fit_valid) {
    j["decay_rate"] = r.decay_rate;
    j["decay_r2"] = r.decay_r2;
  } else {
    j["decay_rate"] = nullptr;
    j["decay_r2"] = nullptr;
  }
  if (!r.error.empty()) j["error"] = r.error;
  j["runtime_seconds"] = r.runtime_seconds;
  std::ofstream out(std::filesystem::path(cfg.output_dir) / "summary.json",
                    std::ios::binary);
  out << j.dump(2) << "\n";
}

}  // namespace

RunSummary run_simulation(const RunConfig& cfg) {
  const auto wall0 = std::chrono::steady_clock::now();
  std::filesystem::create_directories(cfg.output_dir);

  const auto grid = MomentumGrid::build(cfg.resolved_q_max(), cfg.n_axis);
  const double norm_err = grid.normalization_error(cfg.beta0);
  if (norm_err > cfg.tol_grid)
    throw ConfigError(
        "momentum grid cannot represent the beta0 = " +
        std::to_string(cfg.beta0) + " equilibrium to tol_grid = " +
        format_g17(cfg.tol_grid) + " (normalization error " +
        format_g17(norm_err) +
        "): raise n_axis, lower q_max, or relax tol_grid; conservation is "
        "still exact with the matched closure, but moment identities carry "
        "this grid error");

  SolverOptions opts;
  opts.closure = cfg.closure_mode == "matched" ? ClosureMode::matched
                                               : ClosureMode::formula;
  opts.scheme = cfg.scheme == "upwind2" ? TransportScheme::upwind2
                                        : TransportScheme::spectral;
  opts.energy_max_order = cfg.energy_max_order;

  Solver solver(grid, cfg.beta0, SpatialGrid{cfg.n_x, cfg.L}, opts);
  KineticState state = build_initial_state(cfg, solver);

  double dt = cfg.dt;
  if (dt <= 0.0) dt = 0.1 / std::max(solver.max_collision_freq(state), 1e-12);

  const long n_steps =
      static_cast<long>(std::ceil(cfg.t_end / dt - 1e-9));

  RunSummary out;
  out.dt = dt;
  DiagnosticsWriter csv(
      (std::filesystem::path(cfg.output_dir) / "diagnostics.csv").string());

  auto record = [&](const StepDiagnostics& d) {
    csv.write(d);
    out.series.push_back(d);
  };

  StepDiagnostics d0 = solver.diagnose(state);
  record(d0);
  out.min_F_overall = d0.min_F;

  KineticState snapshot = state;
  try {
    for (long k = 1; k <= n_steps; ++k) {
      solver.strang_step(state, dt);
      if (k % cfg.output_every == 0 || k == n_steps) {
        const auto d = solver.diagnose(state);
        record(d);
        out.min_F_overall = std::min(out.min_F_overall, d.min_F);
        out.max_closure_residual =
            std::max(out.max_closure_residual, d.closure_residual);
        snapshot = state;
      }
      out.steps = k;
      out.t_reached = state.t;
    }
  } catch (const Error& e) {
    out.error = e.what();
    persist_state(snapshot, cfg.output_dir);
    fit_decay(out.series, out);
    out.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0)
            .count();
    write_summary(out, cfg);
    throw;
  }

  const auto& first = out.series.front();
  const auto& last = out.series.back();
  out.drift_mass_rel = (last.mass - first.mass) / first.mass;
  for (int i = 0; i < 3; ++i)
    out.drift_momentum_over_mass[i] =
        (last.momentum[i] - first.momentum[i]) / first.mass;
  out.drift_energy_rel = (last.energy - first.energy) / first.energy;
  fit_decay(out.series, out);
  out.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0)
          .count();
  write_summary(out, cfg);
  return out;
}

}  // namespace aw
