#pragma once

#include <string>
#include <vector>

#include "aw/config.hpp"

namespace aw {

// Near-equilibrium decay experiment: runs the solver on the configured
// initial perturbation (conserved moments projected out unless
// project_conserved is false), records E_f(t), and fits log E_f over the
// final 60% of the samples. Writes decay.csv (t, E_f) and
// decay_summary.json into cfg.output_dir.
struct DecayReport {
  double rate = 0.0;
  double r2 = 0.0;
  bool fit_valid = false;
  double drift_mass_rel = 0.0;
  double drift_energy_rel = 0.0;
  double e_f_initial = 0.0;
  double e_f_final = 0.0;
  bool decayed = false;          // rate < 0 and r2 >= 0.99
  std::string failure;           // empty when the experiment succeeded
  std::vector<std::pair<double, double>> series;  // (t, E_f)
};

DecayReport decay_experiment(const RunConfig& cfg);

}  // namespace aw
