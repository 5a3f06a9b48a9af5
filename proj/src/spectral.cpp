#include "aw/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>

namespace aw {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

XSpectral::XSpectral(int n_x, std::size_t n_nodes)
    : n_x_(n_x), n_nodes_(n_nodes), n_modes_(static_cast<std::size_t>(n_x) / 2 + 1) {
  rbuf_ = fftw_alloc_real(static_cast<std::size_t>(n_x_) * n_nodes_);
  cbuf_ = reinterpret_cast<std::complex<double>*>(
      fftw_alloc_complex(n_modes_ * n_nodes_));
  const int n[1] = {n_x_};
  plan_fwd_ = fftw_plan_many_dft_r2c(
      1, n, static_cast<int>(n_nodes_), rbuf_, nullptr,
      static_cast<int>(n_nodes_), 1, reinterpret_cast<fftw_complex*>(cbuf_),
      nullptr, static_cast<int>(n_nodes_), 1, FFTW_ESTIMATE);
  plan_inv_ = fftw_plan_many_dft_c2r(
      1, n, static_cast<int>(n_nodes_), reinterpret_cast<fftw_complex*>(cbuf_),
      nullptr, static_cast<int>(n_nodes_), 1, rbuf_, nullptr,
      static_cast<int>(n_nodes_), 1, FFTW_ESTIMATE);
}

XSpectral::~XSpectral() {
  fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_inv_));
  fftw_free(rbuf_);
  fftw_free(cbuf_);
}

void XSpectral::forward(const double* field) {
  std::memcpy(rbuf_, field,
              sizeof(double) * static_cast<std::size_t>(n_x_) * n_nodes_);
  fftw_execute(static_cast<fftw_plan>(plan_fwd_));
}

void XSpectral::inverse(double* field) {
  fftw_execute(static_cast<fftw_plan>(plan_inv_));
  std::memcpy(field, rbuf_,
              sizeof(double) * static_cast<std::size_t>(n_x_) * n_nodes_);
}

void XSpectral::apply_filter(double* field,
                             const std::vector<std::complex<double>>& table) {
  forward(field);
  const std::size_t total = n_modes_ * n_nodes_;
  for (std::size_t i = 0; i < total; ++i) cbuf_[i] *= table[i];
  inverse(field);
}

void XSpectral::derivative_x(const double* in, double* out, double L) {
  forward(in);
  const double scale = 1.0 / n_x_;
  for (std::size_t m = 0; m < n_modes_; ++m) {
    const bool nyquist = (n_x_ % 2 == 0) && (m == n_modes_ - 1);
    const double k = nyquist ? 0.0 : kTwoPi * static_cast<double>(m) / L;
    const std::complex<double> ik(0.0, k * scale);
    for (std::size_t j = 0; j < n_nodes_; ++j)
      cbuf_[m * n_nodes_ + j] *= nyquist ? std::complex<double>(0.0, 0.0) : ik;
  }
  inverse(out);
}

std::vector<std::complex<double>> XSpectral::advection_phases(
    const MomentumGrid& grid, double dt, double L) const {
  std::vector<std::complex<double>> table(n_modes_ * n_nodes_);
  const double scale = 1.0 / n_x_;
  for (std::size_t m = 0; m < n_modes_; ++m) {
    const double k = kTwoPi * static_cast<double>(m) / L;
    for (std::size_t j = 0; j < n_nodes_; ++j) {
      const double shift = grid.qx()[j] * grid.inv_q0()[j] * dt;
      table[m * n_nodes_ + j] =
          std::polar(scale, -k * shift);
    }
  }
  return table;
}

}  // namespace aw
