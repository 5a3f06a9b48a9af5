#pragma once

#include <cstdint>
#include <string>

namespace aw {

struct IcConfig {
  std::string type = "equilibrium";  // equilibrium|wave|two_maxwellian|random
  double amplitude = 1e-3;
  int mode_number = 1;
  std::uint64_t seed = 0;
};

// Flat JSON keys: beta0, q_max, n_axis, tol_grid, n_x, L, dt, t_end,
// output_every, closure_mode, scheme, energy_max_order, project_conserved,
// ic {type, amplitude, mode_number, seed}, output_dir. Unknown keys are
// rejected. Omitted keys take the defaults below; q_max <= 0 means
// "max(10, 30/beta0)" and dt <= 0 means "0.1 / max collision frequency of
// the initial state".
struct RunConfig {
  double beta0 = 1.0;
  double q_max = 0.0;
  int n_axis = 32;
  double tol_grid = 1e-6;
  int n_x = 64;
  double L = 1.0;
  double dt = 0.0;
  double t_end = 0.0;  // required > 0
  int output_every = 10;
  std::string closure_mode = "matched";  // matched|formula
  std::string scheme = "spectral";       // spectral|upwind2
  int energy_max_order = 1;
  bool project_conserved = true;
  IcConfig ic;
  std::string output_dir = "out";

  double resolved_q_max() const;
};

// Parse + validate; throws ValidationError (bad JSON, with line info) or
// ConfigError (constraint violation, naming the offending key).
RunConfig load_config(const std::string& path);
RunConfig parse_config_text(const std::string& text);

// Verbatim copy of the input file into <out_dir>/config.echo.json.
void echo_config(const std::string& config_path, const std::string& out_dir);

}  // namespace aw
