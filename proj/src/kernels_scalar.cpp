#include "aw/kernels.hpp"
#include "vecmath.hpp"

namespace aw::kernels {
namespace {

using detail::VScalar;

void exp_affine4(double* out, const double* a0, const double* a1,
                 const double* a2, const double* a3, double c0, double c1,
                 double c2, double c3, double d, std::size_t n) {
  detail::exp_affine4_loop<VScalar>(out, a0, a1, a2, a3, c0, c1, c2, c3, d, 0,
                                    n);
}

void collision_freq(double* nu, const double* qx, const double* qy,
                    const double* qz, const double* invq0, double u0, double ux,
                    double uy, double uz, std::size_t n) {
  detail::collision_freq_loop<VScalar>(nu, qx, qy, qz, invq0, u0, ux, uy, uz,
                                       0, n);
}

void relax_update(double* f, const double* j, const double* nu, double dt,
                  std::size_t n) {
  detail::relax_update_loop<VScalar>(f, j, nu, dt, 0, n);
}

void relax_weight(double* w, const double* nu, double dt, std::size_t n) {
  detail::relax_weight_loop<VScalar>(w, nu, dt, 0, n);
}

void sub_mul(double* out, const double* a, const double* b, const double* s,
             std::size_t n) {
  detail::sub_mul_loop<VScalar>(out, a, b, s, 0, n);
}

void mul(double* out, const double* a, const double* b, std::size_t n) {
  detail::mul_loop<VScalar>(out, a, b, 0, n);
}

void axpy(double* y, double alpha, const double* x, std::size_t n) {
  detail::axpy_loop<VScalar>(y, alpha, x, 0, n);
}

double sum(const double* a, std::size_t n) {
  return detail::reduce_paired_scalar([&](std::size_t i) { return a[i]; }, n);
}

double dot(const double* a, const double* b, std::size_t n) {
  return detail::reduce_paired_scalar(
      [&](std::size_t i) { return a[i] * b[i]; }, n);
}

double dot3(const double* a, const double* b, const double* c, std::size_t n) {
  return detail::reduce_paired_scalar(
      [&](std::size_t i) { return (a[i] * b[i]) * c[i]; }, n);
}

double dot4(const double* a, const double* b, const double* c, const double* d,
            std::size_t n) {
  return detail::reduce_paired_scalar(
      [&](std::size_t i) { return (a[i] * b[i]) * (c[i] * d[i]); }, n);
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops = {
      "scalar",   exp_affine4, collision_freq, relax_update, relax_weight,
      sub_mul,    mul,         axpy,           sum,          dot,
      dot3,       dot4,
  };
  return ops;
}

}  // namespace aw::kernels
