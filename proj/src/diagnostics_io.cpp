#include "aw/diagnostics_io.hpp"

#include <cstdio>

#include "aw/errors.hpp"

namespace aw {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* DiagnosticsWriter::header() {
  return "t,mass,momentum_x,momentum_y,momentum_z,energy,H,E_f,"
         "closure_residual,min_F";
}

DiagnosticsWriter::DiagnosticsWriter(const std::string& path)
    : out_(path, std::ios::binary) {
  if (!out_)
    throw ValidationError("cannot open diagnostics output '" + path + "'");
  out_ << header() << "\n";
  out_.flush();
}

void DiagnosticsWriter::write(const StepDiagnostics& d) {
  out_ << format_g17(d.t) << ',' << format_g17(d.mass) << ','
       << format_g17(d.momentum[0]) << ',' << format_g17(d.momentum[1]) << ','
       << format_g17(d.momentum[2]) << ',' << format_g17(d.energy) << ','
       << format_g17(d.H) << ',' << format_g17(d.E_f) << ','
       << format_g17(d.closure_residual) << ',' << format_g17(d.min_F)
       << "\n";
  out_.flush();
  if (!out_) throw ValidationError("diagnostics write failed");
}

}  // namespace aw
