#include "aw/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "aw/errors.hpp"
#include "aw/momentum_grid.hpp"

namespace aw {
namespace {

using nlohmann::json;

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& scope) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!allowed.count(key))
      throw ConfigError("unknown config key '" + scope + key + "'");
  }
}

template <class T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config key '") + key +
                      "' has the wrong type");
  }
}

int line_of_offset(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

RunConfig from_json(const json& j) {
  reject_unknown_keys(
      j,
      {"beta0", "q_max", "n_axis", "tol_grid", "n_x", "L", "dt", "t_end",
       "output_every", "closure_mode", "scheme", "energy_max_order",
       "project_conserved", "ic", "output_dir"},
      "");

  RunConfig c;
  read(j, "beta0", c.beta0);
  read(j, "q_max", c.q_max);
  read(j, "n_axis", c.n_axis);
  read(j, "tol_grid", c.tol_grid);
  read(j, "n_x", c.n_x);
  read(j, "L", c.L);
  read(j, "dt", c.dt);
  read(j, "t_end", c.t_end);
  read(j, "output_every", c.output_every);
  read(j, "closure_mode", c.closure_mode);
  read(j, "scheme", c.scheme);
  read(j, "energy_max_order", c.energy_max_order);
  read(j, "project_conserved", c.project_conserved);
  read(j, "output_dir", c.output_dir);

  if (j.contains("ic")) {
    const json& ic = j.at("ic");
    if (!ic.is_object()) throw ConfigError("config key 'ic' must be an object");
    reject_unknown_keys(ic, {"type", "amplitude", "mode_number", "seed"},
                        "ic.");
    read(ic, "type", c.ic.type);
    read(ic, "amplitude", c.ic.amplitude);
    read(ic, "mode_number", c.ic.mode_number);
    read(ic, "seed", c.ic.seed);
  }

  // validation: positivity/evenness before any compute
  if (!(c.beta0 > 0.0)) throw ConfigError("beta0 must be positive");
  if (c.n_axis % 2 != 0) throw ConfigError("n_axis must be even");
  if (c.n_axis < 8) throw ConfigError("n_axis must be >= 8");
  if (!(c.tol_grid > 0.0)) throw ConfigError("tol_grid must be positive");
  if (c.n_x < 1) throw ConfigError("n_x must be >= 1");
  if (!(c.L > 0.0)) throw ConfigError("L must be positive");
  if (c.dt < 0.0) throw ConfigError("dt must be >= 0 (0 selects the default)");
  if (!(c.t_end > 0.0)) throw ConfigError("t_end must be positive");
  if (c.output_every < 1) throw ConfigError("output_every must be >= 1");
  if (c.closure_mode != "matched" && c.closure_mode != "formula")
    throw ConfigError("closure_mode must be 'matched' or 'formula'");
  if (c.scheme != "spectral" && c.scheme != "upwind2")
    throw ConfigError("scheme must be 'spectral' or 'upwind2'");
  if (c.energy_max_order < 0 || c.energy_max_order > 2)
    throw ConfigError("energy_max_order must be 0, 1 or 2");
  if (c.ic.type != "equilibrium" && c.ic.type != "wave" &&
      c.ic.type != "two_maxwellian" && c.ic.type != "random")
    throw ConfigError(
        "ic.type must be one of equilibrium|wave|two_maxwellian|random");
  if (c.ic.amplitude < 0.0) throw ConfigError("ic.amplitude must be >= 0");
  if (c.ic.mode_number < 0) throw ConfigError("ic.mode_number must be >= 0");
  if (c.output_dir.empty()) throw ConfigError("output_dir must be non-empty");
  return c;
}

}  // namespace

double RunConfig::resolved_q_max() const {
  return q_max > 0.0 ? q_max : MomentumGrid::default_q_max(beta0);
}

RunConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("config parse error at line " +
                          std::to_string(line_of_offset(text, e.byte)) + ": " +
                          e.what());
  }
  if (!j.is_object()) throw ValidationError("config root must be an object");
  return from_json(j);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ValidationError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void echo_config(const std::string& config_path, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::ifstream in(config_path, std::ios::binary);
  if (!in)
    throw ValidationError("cannot open config file '" + config_path + "'");
  std::ofstream out(std::filesystem::path(out_dir) / "config.echo.json",
                    std::ios::binary);
  out << in.rdbuf();
}

}  // namespace aw
