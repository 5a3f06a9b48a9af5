#pragma once

#include <array>
#include <cmath>

namespace aw {

// Minkowski four-vectors with signature (+,-,-,-); index 0 is the time
// component.
using Vec4 = std::array<double, 4>;
using Mat4 = std::array<Vec4, 4>;

inline double minkowski_dot(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

inline Vec4 lower_index(const Vec4& a) { return {a[0], -a[1], -a[2], -a[3]}; }

inline Vec4 mat_vec(const Mat4& m, const Vec4& v) {
  Vec4 r{};
  for (int i = 0; i < 4; ++i)
    r[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2] + m[i][3] * v[3];
  return r;
}

inline Vec4 unit_timelike(double vx, double vy, double vz) {
  return {std::sqrt(1.0 + vx * vx + vy * vy + vz * vz), vx, vy, vz};
}

}  // namespace aw
