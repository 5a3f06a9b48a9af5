// AVX2+FMA kernel backend. Compiled with -mavx2 -mfma; only dispatched to
// when the CPU reports both features.

#include "aw/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include "vecmath.hpp"

namespace aw::kernels {
namespace {

using detail::VScalar;

struct VAvx2 {
  __m256d v;
  static constexpr std::size_t width = 4;

  static VAvx2 splat(double x) { return {_mm256_set1_pd(x)}; }
  static VAvx2 load(const double* p) { return {_mm256_loadu_pd(p)}; }
  void store(double* p) const { _mm256_storeu_pd(p, v); }

  friend VAvx2 operator+(VAvx2 a, VAvx2 b) {
    return {_mm256_add_pd(a.v, b.v)};
  }
  friend VAvx2 operator-(VAvx2 a, VAvx2 b) {
    return {_mm256_sub_pd(a.v, b.v)};
  }
  friend VAvx2 operator*(VAvx2 a, VAvx2 b) {
    return {_mm256_mul_pd(a.v, b.v)};
  }

  static VAvx2 fma(VAvx2 a, VAvx2 b, VAvx2 c) {
    return {_mm256_fmadd_pd(a.v, b.v, c.v)};
  }
  static VAvx2 min(VAvx2 a, VAvx2 b) { return {_mm256_min_pd(a.v, b.v)}; }
  static VAvx2 round_nearest(VAvx2 a) {
    return {_mm256_round_pd(a.v, _MM_FROUND_TO_NEAREST_INT |
                                     _MM_FROUND_NO_EXC)};
  }

  static VAvx2 pow2(VAvx2 k) {
    const __m128i ki = _mm256_cvtpd_epi32(k.v);
    __m256i q = _mm256_cvtepi32_epi64(ki);
    q = _mm256_add_epi64(q, _mm256_set1_epi64x(1023));
    q = _mm256_slli_epi64(q, 52);
    return {_mm256_castsi256_pd(q)};
  }

  static VAvx2 select_lt(VAvx2 a, VAvx2 b, VAvx2 x, VAvx2 y) {
    const __m256d m = _mm256_cmp_pd(a.v, b.v, _CMP_LT_OQ);
    return {_mm256_blendv_pd(y.v, x.v, m)};
  }
};

void exp_affine4(double* out, const double* a0, const double* a1,
                 const double* a2, const double* a3, double c0, double c1,
                 double c2, double c3, double d, std::size_t n) {
  const std::size_t main = n - n % 4;
  detail::exp_affine4_loop<VAvx2>(out, a0, a1, a2, a3, c0, c1, c2, c3, d, 0,
                                  main);
  detail::exp_affine4_loop<VScalar>(out, a0, a1, a2, a3, c0, c1, c2, c3, d,
                                    main, n);
}

void collision_freq(double* nu, const double* qx, const double* qy,
                    const double* qz, const double* invq0, double u0, double ux,
                    double uy, double uz, std::size_t n) {
  const std::size_t main = n - n % 4;
  detail::collision_freq_loop<VAvx2>(nu, qx, qy, qz, invq0, u0, ux, uy, uz, 0,
                                     main);
  detail::collision_freq_loop<VScalar>(nu, qx, qy, qz, invq0, u0, ux, uy, uz,
                                       main, n);
}

void relax_update(double* f, const double* j, const double* nu, double dt,
                  std::size_t n) {
  const std::size_t main = n - n % 4;
  detail::relax_update_loop<VAvx2>(f, j, nu, dt, 0, main);
  detail::relax_update_loop<VScalar>(f, j, nu, dt, main, n);
}

void relax_weight(double* w, const double* nu, double dt, std::size_t n) {
  const std::size_t main = n - n % 4;
  detail::relax_weight_loop<VAvx2>(w, nu, dt, 0, main);
  detail::relax_weight_loop<VScalar>(w, nu, dt, main, n);
}

void sub_mul(double* out, const double* a, const double* b, const double* s,
             std::size_t n) {
  const std::size_t main = n - n % 4;
  detail::sub_mul_loop<VAvx2>(out, a, b, s, 0, main);
  detail::sub_mul_loop<VScalar>(out, a, b, s, main, n);
}

void mul(double* out, const double* a, const double* b, std::size_t n) {
  const std::size_t main = n - n % 4;
  detail::mul_loop<VAvx2>(out, a, b, 0, main);
  detail::mul_loop<VScalar>(out, a, b, main, n);
}

void axpy(double* y, double alpha, const double* x, std::size_t n) {
  const std::size_t main = n - n % 4;
  detail::axpy_loop<VAvx2>(y, alpha, x, 0, main);
  detail::axpy_loop<VScalar>(y, alpha, x, main, n);
}

// Reduction core: blocks of eight products, adjacent pairs summed by hadd
// (lane layout p0+p1, p4+p5, p2+p3, p6+p7), accumulated into four lanes.
template <class ProdV, class ProdS>
double reduce_paired_avx2(ProdV prodv, ProdS prods, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d p01 = prodv(i);
    const __m256d p23 = prodv(i + 4);
    acc = _mm256_add_pd(acc, _mm256_hadd_pd(p01, p23));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  lanes[0] = detail::reduce_tail(prods, i, n, lanes[0]);
  return detail::reduce_final(lanes);
}

double sum(const double* a, std::size_t n) {
  return reduce_paired_avx2(
      [&](std::size_t i) { return _mm256_loadu_pd(a + i); },
      [&](std::size_t i) { return a[i]; }, n);
}

double dot(const double* a, const double* b, std::size_t n) {
  return reduce_paired_avx2(
      [&](std::size_t i) {
        return _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
      },
      [&](std::size_t i) { return a[i] * b[i]; }, n);
}

double dot3(const double* a, const double* b, const double* c, std::size_t n) {
  return reduce_paired_avx2(
      [&](std::size_t i) {
        return _mm256_mul_pd(
            _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)),
            _mm256_loadu_pd(c + i));
      },
      [&](std::size_t i) { return (a[i] * b[i]) * c[i]; }, n);
}

double dot4(const double* a, const double* b, const double* c, const double* d,
            std::size_t n) {
  return reduce_paired_avx2(
      [&](std::size_t i) {
        return _mm256_mul_pd(
            _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)),
            _mm256_mul_pd(_mm256_loadu_pd(c + i), _mm256_loadu_pd(d + i)));
      },
      [&](std::size_t i) { return (a[i] * b[i]) * (c[i] * d[i]); }, n);
}

}  // namespace

const Ops* avx2_ops() {
  static const Ops ops = {
      "avx2",     exp_affine4, collision_freq, relax_update, relax_weight,
      sub_mul,    mul,         axpy,           sum,          dot,
      dot3,       dot4,
  };
  return &ops;
}

}  // namespace aw::kernels

#else  // non-x86 builds have no AVX2 backend

namespace aw::kernels {
const Ops* avx2_ops() { return nullptr; }
}  // namespace aw::kernels

#endif
