// Command-line front end: bessel | check | simulate | decay.
// Exit codes: 0 success, 1 validation/configuration error,
// 2 runtime or convergence error, 3 property-suite failure.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include "aw/config.hpp"
#include "aw/diagnostics_io.hpp"
#include "aw/errors.hpp"
#include "aw/experiment.hpp"
#include "aw/selfcheck.hpp"
#include "aw/solver.hpp"
#include "aw/special_functions.hpp"

namespace {

int cmd_bessel(double beta_min, double beta_max, int points) {
  if (!(beta_min > 0.0) || !(beta_max >= beta_min) || points < 1) {
    std::cerr << "bessel: need 0 < beta-min <= beta-max and points >= 1\n";
    return 1;
  }
  std::cout << "beta,K0,K1,K2,M,e_tilde,h_tilde,e_tilde_prime\n";
  for (int i = 0; i < points; ++i) {
    const double f = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    const double beta = beta_min * std::pow(beta_max / beta_min, f);
    const auto be = aw::special::bessel_eval(beta);
    const auto cf = aw::special::closure_fns(beta);
    std::cout << aw::format_g17(beta) << ',' << aw::format_g17(be.k0) << ','
              << aw::format_g17(be.k1) << ',' << aw::format_g17(be.k2) << ','
              << aw::format_g17(aw::special::m_of_beta(beta)) << ','
              << aw::format_g17(cf.e_tilde) << ','
              << aw::format_g17(cf.h_tilde) << ','
              << aw::format_g17(cf.e_tilde_prime) << "\n";
  }
  return 0;
}

int cmd_check(const std::string& module) {
  const auto results = module.empty() ? aw::selfcheck::run_all()
                                      : aw::selfcheck::run_module(module);
  int failures = 0;
  for (const auto& r : results) {
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name;
    if (!r.detail.empty()) std::cout << "  (" << r.detail << ")";
    std::cout << "\n";
    if (!r.pass) ++failures;
  }
  std::cout << results.size() - failures << "/" << results.size()
            << " checks passed\n";
  return failures == 0 ? 0 : 3;
}

int cmd_simulate(const std::string& config_path) {
  const aw::RunConfig cfg = aw::load_config(config_path);
  aw::echo_config(config_path, cfg.output_dir);
  const aw::RunSummary run = aw::run_simulation(cfg);
  std::cout << "steps " << run.steps << ", t " << run.t_reached
            << ", mass drift " << aw::format_g17(run.drift_mass_rel)
            << ", energy drift " << aw::format_g17(run.drift_energy_rel)
            << ", min F " << aw::format_g17(run.min_F_overall) << "\n"
            << "outputs in " << cfg.output_dir << "\n";
  return 0;
}

int cmd_decay(const std::string& config_path) {
  const aw::RunConfig cfg = aw::load_config(config_path);
  aw::echo_config(config_path, cfg.output_dir);
  const aw::DecayReport rep = aw::decay_experiment(cfg);
  if (rep.fit_valid)
    std::cout << "fitted rate " << aw::format_g17(rep.rate) << " (R^2 "
              << aw::format_g17(rep.r2) << ")\n";
  if (!rep.failure.empty()) {
    std::cout << "experiment failure: " << rep.failure << "\n";
    return 2;
  }
  std::cout << "E_f " << aw::format_g17(rep.e_f_initial) << " -> "
            << aw::format_g17(rep.e_f_final) << "; outputs in "
            << cfg.output_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-velocity relativistic BGK solver"};
  app.require_subcommand(1);

  double beta_min = 0.05, beta_max = 50.0;
  int points = 50;
  auto* bessel = app.add_subcommand(
      "bessel", "Tabulate K0,K1,K2, the normalizer and closure functions");
  bessel->add_option("--beta-min", beta_min, "smallest beta (log spacing)");
  bessel->add_option("--beta-max", beta_max, "largest beta");
  bessel->add_option("--points", points, "number of rows");

  std::string module;
  auto* check =
      app.add_subcommand("check", "Run the module property suites");
  check->add_option("--module", module,
                    "restrict to one module (kernels, special_fn, "
                    "momentum_grid, maxwellian, macroscopics, linearization, "
                    "solver)");

  std::string sim_config;
  auto* simulate =
      app.add_subcommand("simulate", "Time-integrate a configured problem");
  simulate->add_option("--config", sim_config, "JSON config path")
      ->required();

  std::string decay_config;
  auto* decay = app.add_subcommand(
      "decay", "Near-equilibrium perturbation decay experiment");
  decay->add_option("--config", decay_config, "JSON config path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (bessel->parsed()) return cmd_bessel(beta_min, beta_max, points);
    if (check->parsed()) return cmd_check(module);
    if (simulate->parsed()) return cmd_simulate(sim_config);
    if (decay->parsed()) return cmd_decay(decay_config);
  } catch (const aw::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const aw::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const aw::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
