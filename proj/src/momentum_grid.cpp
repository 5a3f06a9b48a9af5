#include "aw/momentum_grid.hpp"

#include <cmath>
#include <string>

#include "aw/errors.hpp"
#include "aw/kernels.hpp"
#include "aw/special_functions.hpp"

namespace aw {

MomentumGrid MomentumGrid::build(double q_max, int n_axis) {
  if (!(q_max > 0.0))
    throw ConfigError("q_max must be positive, got " + std::to_string(q_max));
  if (n_axis % 2 != 0)
    throw ConfigError("n_axis must be even (q -> -q symmetry), got " +
                      std::to_string(n_axis));
  if (n_axis < 8)
    throw ConfigError("n_axis must be >= 8, got " + std::to_string(n_axis));

  MomentumGrid g;
  g.q_max_ = q_max;
  g.n_axis_ = n_axis;
  g.h_ = 2.0 * q_max / n_axis;
  g.w_ = g.h_ * g.h_ * g.h_;

  const int n = n_axis;
  const std::size_t total = static_cast<std::size_t>(n) * n * n;
  g.qx_.resize(total);
  g.qy_.resize(total);
  g.qz_.resize(total);
  g.q0_.resize(total);
  g.inv_q0_.resize(total);
  g.lattice_to_node_.resize(total);

  std::vector<double> coord(n);
  for (int i = 0; i < n; ++i) coord[i] = (i + 0.5) * g.h_ - q_max;

  // Enumerate the iz < n/2 half; its mirror (full negation) follows at the
  // odd slot. Mirror coordinates are stored as exact negations so that pair
  // sums of odd integrands cancel bitwise.
  std::size_t node = 0;
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      for (int iz = 0; iz < n / 2; ++iz) {
        const double x = coord[ix], y = coord[iy], z = coord[iz];
        const double e = std::sqrt(1.0 + x * x + y * y + z * z);
        g.qx_[node] = x;
        g.qy_[node] = y;
        g.qz_[node] = z;
        g.q0_[node] = e;
        g.inv_q0_[node] = 1.0 / e;
        g.qx_[node + 1] = -x;
        g.qy_[node + 1] = -y;
        g.qz_[node + 1] = -z;
        g.q0_[node + 1] = e;
        g.inv_q0_[node + 1] = 1.0 / e;
        const auto fwd = (static_cast<std::size_t>(ix) * n + iy) * n + iz;
        const auto mir = (static_cast<std::size_t>(n - 1 - ix) * n +
                          (n - 1 - iy)) *
                             n +
                         (n - 1 - iz);
        g.lattice_to_node_[fwd] = static_cast<std::uint32_t>(node);
        g.lattice_to_node_[mir] = static_cast<std::uint32_t>(node + 1);
        node += 2;
      }
    }
  }
  return g;
}

double MomentumGrid::moment(
    std::span<const double> values,
    const std::function<double(double, double, double)>& phi,
    bool over_q0) const {
  double acc = 0.0;
  for (std::size_t k = 0; k + 2 <= n_nodes(); k += 2) {
    double a = values[k] * phi(qx_[k], qy_[k], qz_[k]);
    double b = values[k + 1] * phi(qx_[k + 1], qy_[k + 1], qz_[k + 1]);
    if (over_q0) {
      a *= inv_q0_[k];
      b *= inv_q0_[k + 1];
    }
    acc += a + b;
  }
  return w_ * acc;
}

double MomentumGrid::normalization_error(double beta0) const {
  const auto& ops = kernels::active();
  std::vector<double> j0(n_nodes());
  const double d = -special::log_m_of_beta(beta0);
  ops.exp_affine4(j0.data(), q0_.data(), qx_.data(), qy_.data(), qz_.data(),
                  -beta0, 0.0, 0.0, 0.0, d, n_nodes());
  return std::abs(w_ * ops.sum(j0.data(), n_nodes()) - 1.0);
}

double MomentumGrid::default_q_max(double beta0) {
  return std::max(10.0, 30.0 / beta0);
}

int MomentumGrid::resolved_axis_count(double q_max) {
  int n = static_cast<int>(std::ceil(2.0 * q_max / 0.42));
  if (n % 2 != 0) ++n;
  return std::max(n, 8);
}

}  // namespace aw
