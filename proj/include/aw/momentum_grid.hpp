#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace aw {

// Truncated cell-centered Cartesian lattice on [-q_max, q_max]^3 with uniform
// midpoint weights. Nodes are stored mirror-pair interleaved: node 2m+1 is
// the exact negation of node 2m (coordinates negated bitwise), so reductions
// that sum a pair before accumulating cancel odd integrands exactly. All
// per-node arrays in the project share this ordering.
class MomentumGrid {
 public:
  // n_axis must be even (mirror symmetry) and >= 8.
  static MomentumGrid build(double q_max, int n_axis);

  double q_max() const { return q_max_; }
  int n_axis() const { return n_axis_; }
  double spacing() const { return h_; }
  double weight() const { return w_; }  // (2 q_max / n_axis)^3, same per node
  std::size_t n_nodes() const { return qx_.size(); }

  std::span<const double> qx() const { return qx_; }
  std::span<const double> qy() const { return qy_; }
  std::span<const double> qz() const { return qz_; }
  std::span<const double> q0() const { return q0_; }
  std::span<const double> inv_q0() const { return inv_q0_; }

  // node index of lattice site (ix, iy, iz), each in [0, n_axis)
  std::size_t node_at(int ix, int iy, int iz) const {
    return lattice_to_node_[(static_cast<std::size_t>(ix) * n_axis_ + iy) *
                                n_axis_ +
                            iz];
  }

  // sum_k w * values_k * phi(q_k) (* 1/q0_k when over_q0), summed mirror
  // pair first in fixed order. Convenience surface; the hot paths use the
  // kernel reductions directly.
  double moment(std::span<const double> values,
                const std::function<double(double, double, double)>& phi,
                bool over_q0) const;

  // |sum_k w e^{-beta0 q0_k} / M(beta0) - 1|
  double normalization_error(double beta0) const;

  // Defaults: q_max capturing the Juttner tail at beta0, and the axis count
  // that resolves the integrands to ~1e-7 at that q_max (h <= 0.42).
  static double default_q_max(double beta0);
  static int resolved_axis_count(double q_max);

 private:
  MomentumGrid() = default;

  double q_max_ = 0.0;
  int n_axis_ = 0;
  double h_ = 0.0;
  double w_ = 0.0;
  std::vector<double> qx_, qy_, qz_, q0_, inv_q0_;
  std::vector<std::uint32_t> lattice_to_node_;
};

}  // namespace aw
