#include "aw/experiment.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>

#include "aw/diagnostics_io.hpp"
#include "aw/solver.hpp"

namespace aw {

DecayReport decay_experiment(const RunConfig& cfg) {
  const RunSummary run = run_simulation(cfg);

  DecayReport rep;
  rep.rate = run.decay_rate;
  rep.r2 = run.decay_r2;
  rep.fit_valid = run.decay_fit_valid;
  rep.drift_mass_rel = run.drift_mass_rel;
  rep.drift_energy_rel = run.drift_energy_rel;
  rep.e_f_initial = run.series.front().E_f;
  rep.e_f_final = run.series.back().E_f;
  for (const auto& d : run.series) rep.series.emplace_back(d.t, d.E_f);

  rep.decayed = rep.fit_valid && rep.rate < 0.0 && rep.r2 >= 0.99;
  if (!rep.fit_valid) {
    rep.failure = "E_f series too short or non-positive; no fit";
  } else if (!rep.decayed) {
    rep.failure = "fitted rate " + format_g17(rep.rate) + " with R^2 " +
                  format_g17(rep.r2) +
                  " does not show clean exponential decay";
  }

  std::filesystem::create_directories(cfg.output_dir);
  {
    std::ofstream csv(std::filesystem::path(cfg.output_dir) / "decay.csv",
                      std::ios::binary);
    csv << "t,E_f\n";
    for (const auto& [t, e] : rep.series)
      csv << format_g17(t) << ',' << format_g17(e) << "\n";
  }
  {
    nlohmann::ordered_json j;
    if (rep.fit_valid) {
      j["rate"] = rep.rate;
      j["r2"] = rep.r2;
    } else {
      j["rate"] = nullptr;
      j["r2"] = nullptr;
    }
    j["decayed"] = rep.decayed;
    j["E_f_initial"] = rep.e_f_initial;
    j["E_f_final"] = rep.e_f_final;
    j["drift_mass_rel"] = rep.drift_mass_rel;
    j["drift_energy_rel"] = rep.drift_energy_rel;
    if (!rep.failure.empty()) j["failure"] = rep.failure;
    std::ofstream out(
        std::filesystem::path(cfg.output_dir) / "decay_summary.json",
        std::ios::binary);
    out << j.dump(2) << "\n";
  }
  return rep;
}

}  // namespace aw
