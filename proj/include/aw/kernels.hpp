#pragma once

#include <cstddef>

namespace aw::kernels {

// Data-parallel inner loops over momentum-node arrays. Every kernel exists as
// a scalar reference implementation and (on x86-64 with AVX2+FMA) a SIMD
// variant; the two are bit-identical by construction:
//
//  - elementwise kernels run the same operation sequence per lane (explicit
//    fma/mul/add, no implicit contraction),
//  - reductions use four independent striped accumulators over blocks of
//    eight elements with mirror-pair sums formed first (mul, mul, add -- no
//    fma across a pair), then a fixed final tree (acc0+acc1)+(acc2+acc3).
//
// The pair-first summation makes reductions of a symmetric field against an
// odd weight cancel exactly, node pair by node pair, which is what keeps odd
// moments of even distributions at bitwise zero.
//
// The backend is chosen at startup from CPU capabilities; the AW_SIMD
// environment variable ("auto" | "scalar" | "avx2") overrides it.

enum class Backend { scalar, avx2 };

struct Ops {
  const char* name;

  // out[i] = exp(c0*a0[i] + c1*a1[i] + c2*a2[i] + c3*a3[i] + d);
  // exponents below -708 produce exactly 0 (underflow clamp).
  void (*exp_affine4)(double* out, const double* a0, const double* a1,
                      const double* a2, const double* a3, double c0, double c1,
                      double c2, double c3, double d, std::size_t n);

  // nu[i] = u0 - (ux*qx[i] + uy*qy[i] + uz*qz[i]) * invq0[i]
  void (*collision_freq)(double* nu, const double* qx, const double* qy,
                         const double* qz, const double* invq0, double u0,
                         double ux, double uy, double uz, std::size_t n);

  // f[i] = j[i] + exp(-nu[i]*dt) * (f[i] - j[i]); preserves f >= 0 exactly
  // when j >= 0, f >= 0 and nu >= 0.
  void (*relax_update)(double* f, const double* j, const double* nu, double dt,
                       std::size_t n);

  // w[i] = (1 - exp(-nu[i]*dt)) / dt
  void (*relax_weight)(double* w, const double* nu, double dt, std::size_t n);

  // out[i] = (a[i] - b[i]) * s[i]
  void (*sub_mul)(double* out, const double* a, const double* b,
                  const double* s, std::size_t n);

  // out[i] = a[i] * b[i]
  void (*mul)(double* out, const double* a, const double* b, std::size_t n);

  // y[i] += alpha * x[i]
  void (*axpy)(double* y, double alpha, const double* x, std::size_t n);

  // Paired striped reductions; see contract above.
  double (*sum)(const double* a, std::size_t n);
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*dot3)(const double* a, const double* b, const double* c,
                 std::size_t n);
  double (*dot4)(const double* a, const double* b, const double* c,
                 const double* d, std::size_t n);
};

const Ops& scalar_ops();
const Ops* avx2_ops();  // nullptr when the build or the CPU lacks AVX2+FMA

Backend active_backend();
const Ops& active();

// Test hook; throws aw::ConfigError if the backend is unavailable.
void force_backend(Backend b);

}  // namespace aw::kernels
