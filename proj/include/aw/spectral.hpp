#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "aw/momentum_grid.hpp"

namespace aw {

// Batched real FFTs along the periodic x direction of a cell-major
// (n_x * n_nodes) field; one transform per momentum node. Plans use
// FFTW_ESTIMATE so the chosen algorithm, and therefore the rounding, is
// reproducible run to run.
class XSpectral {
 public:
  XSpectral(int n_x, std::size_t n_nodes);
  ~XSpectral();
  XSpectral(const XSpectral&) = delete;
  XSpectral& operator=(const XSpectral&) = delete;

  int n_x() const { return n_x_; }
  std::size_t n_nodes() const { return n_nodes_; }

  // Multiplies mode (m, node k) by table[m * n_nodes + k] in spectral space;
  // the table must include the 1/n_x back-transform normalization.
  void apply_filter(double* field,
                    const std::vector<std::complex<double>>& table);

  // out = d(in)/dx, spectral differentiation; the Nyquist mode is zeroed.
  void derivative_x(const double* in, double* out, double L);

  // Phase table advecting node k by displacement qhat_x(k) * dt on a torus
  // of length L (normalization included).
  std::vector<std::complex<double>> advection_phases(const MomentumGrid& grid,
                                                     double dt,
                                                     double L) const;

 private:
  void forward(const double* field);
  void inverse(double* field);

  int n_x_;
  std::size_t n_nodes_;
  std::size_t n_modes_;
  double* rbuf_;
  std::complex<double>* cbuf_;
  void* plan_fwd_;
  void* plan_inv_;
};

}  // namespace aw
