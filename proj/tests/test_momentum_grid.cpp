#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "aw/errors.hpp"
#include "aw/maxwellian.hpp"
#include "aw/momentum_grid.hpp"
#include "aw/special_functions.hpp"

using namespace aw;

namespace {
// shared resolved grid at beta0 = 2 (q_max = 30/beta0, h ~ 0.42)
const double kBeta0 = 2.0;
const MomentumGrid& grid() {
  static MomentumGrid g = MomentumGrid::build(15.0, 72);
  return g;
}
const std::vector<double>& j0() {
  static std::vector<double> j = global_maxwellian(kBeta0, grid());
  return j;
}
}  // namespace

TEST_CASE("construction arithmetic") {
  const auto g = MomentumGrid::build(8.0, 16);
  CHECK(g.n_nodes() == 4096);
  CHECK(g.weight() == 1.0);  // (16/16)^3
  CHECK(g.spacing() == 1.0);
}

TEST_CASE("node set is mirror-pair interleaved and covers the lattice") {
  const auto g = MomentumGrid::build(5.0, 8);
  for (std::size_t p = 0; p < g.n_nodes(); p += 2) {
    CHECK(g.qx()[p + 1] == -g.qx()[p]);
    CHECK(g.qy()[p + 1] == -g.qy()[p]);
    CHECK(g.qz()[p + 1] == -g.qz()[p]);
    CHECK(g.q0()[p + 1] == g.q0()[p]);
    CHECK(g.q0()[p] >= 1.0);
  }
  // lattice map is a bijection
  std::set<std::size_t> seen;
  for (int ix = 0; ix < 8; ++ix)
    for (int iy = 0; iy < 8; ++iy)
      for (int iz = 0; iz < 8; ++iz) seen.insert(g.node_at(ix, iy, iz));
  CHECK(seen.size() == g.n_nodes());
  // lattice coordinates match the stored node coordinates
  const double h = g.spacing();
  for (int ix : {0, 3, 7})
    for (int iy : {1, 4})
      for (int iz : {2, 6}) {
        const auto k = g.node_at(ix, iy, iz);
        CHECK(g.qx()[k] ==
              doctest::Approx((ix + 0.5) * h - 5.0).epsilon(1e-14));
        CHECK(g.qy()[k] ==
              doctest::Approx((iy + 0.5) * h - 5.0).epsilon(1e-14));
        CHECK(g.qz()[k] ==
              doctest::Approx((iz + 0.5) * h - 5.0).epsilon(1e-14));
      }
}

TEST_CASE("configuration errors") {
  CHECK_THROWS_AS(MomentumGrid::build(8.0, 15), ConfigError);  // odd
  CHECK_THROWS_AS(MomentumGrid::build(8.0, 6), ConfigError);   // too small
  CHECK_THROWS_AS(MomentumGrid::build(-1.0, 16), ConfigError);
  CHECK_THROWS_AS(MomentumGrid::build(0.0, 16), ConfigError);
}

TEST_CASE("equilibrium normalization resolvable on the resolved grid") {
  CHECK(grid().normalization_error(kBeta0) < 1e-6);
}

TEST_CASE("moment table of the global Maxwellian") {
  const auto& g = grid();
  const double r = special::bessel_k_scaled(1, kBeta0) /
                   special::bessel_k_scaled(2, kBeta0);
  const double e0 = r + 3.0 / kBeta0;
  auto one = [](double, double, double) { return 1.0; };

  // against dq/q0: (1, q, q0, (q^i)^2, q q0, (q0)^2)
  CHECK(g.moment(j0(), one, true) == doctest::Approx(r).epsilon(1e-6));
  CHECK(g.moment(j0(), [](double qx, double, double) { return qx; }, true) ==
        0.0);
  CHECK(g.moment(j0(), one, false) == doctest::Approx(1.0).epsilon(1e-6));
  for (int axis = 0; axis < 3; ++axis) {
    auto sq = [axis](double qx, double qy, double qz) {
      const double v[3] = {qx, qy, qz};
      return v[axis] * v[axis];
    };
    CHECK(g.moment(j0(), sq, true) ==
          doctest::Approx(1.0 / kBeta0).epsilon(1e-6));
  }
  CHECK(g.moment(j0(), [](double qx, double, double) { return qx; }, false) ==
        0.0);
  auto q0w = [&g](double qx, double qy, double qz) {
    return std::sqrt(1.0 + qx * qx + qy * qy + qz * qz);
  };
  CHECK(g.moment(j0(), q0w, false) == doctest::Approx(e0).epsilon(1e-6));

  // second radial moment: int |q|^2 J0 dq = 12/b^2 + (3/b) K1/K2
  CHECK(g.moment(j0(),
                 [](double qx, double qy, double qz) {
                   return qx * qx + qy * qy + qz * qz;
                 },
                 false) ==
        doctest::Approx(12.0 / (kBeta0 * kBeta0) + 3.0 / kBeta0 * r)
            .epsilon(1e-6));
}

TEST_CASE("odd moments of q-even fields vanish bitwise") {
  const auto& g = grid();
  // |q|-dependent field, hence q-even, but not the equilibrium
  std::vector<double> F(g.n_nodes());
  for (std::size_t k = 0; k < F.size(); ++k) {
    const double q2 = g.qx()[k] * g.qx()[k] + g.qy()[k] * g.qy()[k] +
                      g.qz()[k] * g.qz()[k];
    F[k] = (1.0 + q2) * std::exp(-0.7 * std::sqrt(1.0 + q2));
  }
  for (bool over : {false, true}) {
    CHECK(g.moment(F, [](double qx, double, double) { return qx; }, over) ==
          0.0);
    CHECK(g.moment(F, [](double, double qy, double) { return qy; }, over) ==
          0.0);
    CHECK(g.moment(F, [](double, double, double qz) { return qz; }, over) ==
          0.0);
    // odd cubic weight cancels too
    CHECK(g.moment(F,
                   [](double qx, double qy, double) { return qx * qx * qy; },
                   over) == 0.0);
  }
}

TEST_CASE("defaults") {
  CHECK(MomentumGrid::default_q_max(1.0) == 30.0);
  CHECK(MomentumGrid::default_q_max(0.5) == 60.0);
  CHECK(MomentumGrid::default_q_max(10.0) == 10.0);
  CHECK(MomentumGrid::resolved_axis_count(15.0) % 2 == 0);
  CHECK(MomentumGrid::resolved_axis_count(15.0) >= 70);
}
