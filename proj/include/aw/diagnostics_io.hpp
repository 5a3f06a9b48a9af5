#pragma once

#include <array>
#include <fstream>
#include <string>

namespace aw {

// One diagnostics record per output step.
struct StepDiagnostics {
  double t = 0.0;
  double mass = 0.0;
  std::array<double, 3> momentum{};
  double energy = 0.0;
  double H = 0.0;    // sum F ln F (0 ln 0 := 0)
  double E_f = 0.0;  // perturbation energy functional
  double closure_residual = 0.0;
  double min_F = 0.0;
};

// %.17g formatting: round-trip exact and byte-reproducible.
std::string format_g17(double v);

// CSV stream with the fixed documented header; flushed after every record so
// partial runs stay analyzable.
class DiagnosticsWriter {
 public:
  static const char* header();

  explicit DiagnosticsWriter(const std::string& path);
  void write(const StepDiagnostics& d);

 private:
  std::ofstream out_;
};

}  // namespace aw
