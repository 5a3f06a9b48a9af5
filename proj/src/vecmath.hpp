#pragma once

// Shared single-source kernel bodies, templated over a small vector
// abstraction. Instantiated once with VScalar (reference backend) and once
// with VAvx2 (kernels_avx2.cpp); the operation sequence per lane is identical
// in both, which is what the bit-equality contract in kernels.hpp rests on.

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>

namespace aw::kernels::detail {

struct VScalar {
  double v;
  static constexpr std::size_t width = 1;

  static VScalar splat(double x) { return {x}; }
  static VScalar load(const double* p) { return {*p}; }
  void store(double* p) const { *p = v; }

  friend VScalar operator+(VScalar a, VScalar b) { return {a.v + b.v}; }
  friend VScalar operator-(VScalar a, VScalar b) { return {a.v - b.v}; }
  friend VScalar operator*(VScalar a, VScalar b) { return {a.v * b.v}; }

  static VScalar fma(VScalar a, VScalar b, VScalar c) {
    return {std::fma(a.v, b.v, c.v)};
  }
  static VScalar min(VScalar a, VScalar b) {
    return {a.v < b.v ? a.v : b.v};
  }
  static VScalar round_nearest(VScalar a) { return {std::nearbyint(a.v)}; }

  // 2^k for integral-valued k in [-1021, 1023], via exponent bits.
  static VScalar pow2(VScalar k) {
    const auto ki = static_cast<std::int64_t>(k.v);
    return {std::bit_cast<double>((ki + 1023) << 52)};
  }

  // a < b ? x : y, lane-wise.
  static VScalar select_lt(VScalar a, VScalar b, VScalar x, VScalar y) {
    return {a.v < b.v ? x.v : y.v};
  }
};

// exp(x) with the large-argument guard used throughout: inputs are clamped to
// +708 and anything at or below -708 returns exactly 0 (the Juttner
// underflow-to-zero convention). Max observed error ~1 ulp on [-708, 708].
template <class V>
inline V exp_guarded(V x) {
  const V kLo = V::splat(-708.0);
  const V kHi = V::splat(708.0);
  const V kInvLn2 = V::splat(1.4426950408889634074);
  const V kNegLn2Hi = V::splat(-6.93145751953125e-1);
  const V kNegLn2Lo = V::splat(-1.42860682030941723212e-6);

  const V xin = x;
  x = V::min(x, kHi);
  // round(x/ln2) and two-part remainder
  const V k = V::round_nearest(x * kInvLn2);
  V r = V::fma(k, kNegLn2Hi, x);
  r = V::fma(k, kNegLn2Lo, r);

  // Taylor polynomial of degree 13 on |r| <= ln2/2; remainder ~4e-18.
  V p = V::splat(1.0 / 6227020800.0);
  p = V::fma(p, r, V::splat(1.0 / 479001600.0));
  p = V::fma(p, r, V::splat(1.0 / 39916800.0));
  p = V::fma(p, r, V::splat(1.0 / 3628800.0));
  p = V::fma(p, r, V::splat(1.0 / 362880.0));
  p = V::fma(p, r, V::splat(1.0 / 40320.0));
  p = V::fma(p, r, V::splat(1.0 / 5040.0));
  p = V::fma(p, r, V::splat(1.0 / 720.0));
  p = V::fma(p, r, V::splat(1.0 / 120.0));
  p = V::fma(p, r, V::splat(1.0 / 24.0));
  p = V::fma(p, r, V::splat(1.0 / 6.0));
  p = V::fma(p, r, V::splat(0.5));
  p = V::fma(p, r, V::splat(1.0));
  p = V::fma(p, r, V::splat(1.0));

  const V result = p * V::pow2(k);
  return V::select_lt(xin, kLo, V::splat(0.0), result);
}

template <class V>
inline void exp_affine4_loop(double* out, const double* a0, const double* a1,
                             const double* a2, const double* a3, double c0,
                             double c1, double c2, double c3, double d,
                             std::size_t begin, std::size_t end) {
  const V v0 = V::splat(c0), v1 = V::splat(c1), v2 = V::splat(c2),
          v3 = V::splat(c3), vd = V::splat(d);
  for (std::size_t i = begin; i + V::width <= end; i += V::width) {
    V x = V::fma(V::load(a0 + i), v0, vd);
    x = V::fma(V::load(a1 + i), v1, x);
    x = V::fma(V::load(a2 + i), v2, x);
    x = V::fma(V::load(a3 + i), v3, x);
    exp_guarded(x).store(out + i);
  }
}

template <class V>
inline void collision_freq_loop(double* nu, const double* qx, const double* qy,
                                const double* qz, const double* invq0,
                                double u0, double ux, double uy, double uz,
                                std::size_t begin, std::size_t end) {
  const V vu0 = V::splat(u0), vx = V::splat(ux), vy = V::splat(uy),
          vz = V::splat(uz);
  for (std::size_t i = begin; i + V::width <= end; i += V::width) {
    V t = V::load(qx + i) * vx;
    t = V::fma(V::load(qy + i), vy, t);
    t = V::fma(V::load(qz + i), vz, t);
    const V r = vu0 - t * V::load(invq0 + i);
    r.store(nu + i);
  }
}

template <class V>
inline void relax_update_loop(double* f, const double* j, const double* nu,
                              double dt, std::size_t begin, std::size_t end) {
  const V mdt = V::splat(-dt);
  for (std::size_t i = begin; i + V::width <= end; i += V::width) {
    const V e = exp_guarded(V::load(nu + i) * mdt);
    const V jj = V::load(j + i);
    const V r = V::fma(e, V::load(f + i) - jj, jj);
    r.store(f + i);
  }
}

template <class V>
inline void relax_weight_loop(double* w, const double* nu, double dt,
                              std::size_t begin, std::size_t end) {
  const V mdt = V::splat(-dt);
  const V inv_dt = V::splat(1.0 / dt);
  const V one = V::splat(1.0);
  for (std::size_t i = begin; i + V::width <= end; i += V::width) {
    const V e = exp_guarded(V::load(nu + i) * mdt);
    ((one - e) * inv_dt).store(w + i);
  }
}

template <class V>
inline void sub_mul_loop(double* out, const double* a, const double* b,
                         const double* s, std::size_t begin, std::size_t end) {
  for (std::size_t i = begin; i + V::width <= end; i += V::width) {
    ((V::load(a + i) - V::load(b + i)) * V::load(s + i)).store(out + i);
  }
}

template <class V>
inline void mul_loop(double* out, const double* a, const double* b,
                     std::size_t begin, std::size_t end) {
  for (std::size_t i = begin; i + V::width <= end; i += V::width) {
    (V::load(a + i) * V::load(b + i)).store(out + i);
  }
}

template <class V>
inline void axpy_loop(double* y, double alpha, const double* x,
                      std::size_t begin, std::size_t end) {
  const V va = V::splat(alpha);
  for (std::size_t i = begin; i + V::width <= end; i += V::width) {
    V::fma(V::load(x + i), va, V::load(y + i)).store(y + i);
  }
}

// ---------------------------------------------------------------------------
// Reduction tails and final tree, shared verbatim by both backends. `prod`
// computes one product term; pairs are summed before accumulation.

template <class Prod>
inline double reduce_tail(Prod prod, std::size_t i, std::size_t n,
                          double acc0) {
  for (; i + 2 <= n; i += 2) acc0 += prod(i) + prod(i + 1);
  if (i < n) acc0 += prod(i);
  return acc0;
}

inline double reduce_final(const double acc[4]) {
  return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

// Scalar reduction core mirroring the AVX2 hadd lane layout:
// lanes receive pair sums (p0+p1, p4+p5, p2+p3, p6+p7) per block of eight.
template <class Prod>
inline double reduce_paired_scalar(Prod prod, std::size_t n) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc[0] += prod(i) + prod(i + 1);
    acc[1] += prod(i + 4) + prod(i + 5);
    acc[2] += prod(i + 2) + prod(i + 3);
    acc[3] += prod(i + 6) + prod(i + 7);
  }
  acc[0] = reduce_tail(prod, i, n, acc[0]);
  return reduce_final(acc);
}

}  // namespace aw::kernels::detail
