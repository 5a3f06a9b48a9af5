#pragma once

#include <array>
#include <vector>

#include "aw/momentum_grid.hpp"
#include "aw/vec4.hpp"

namespace aw {

// Parameters of a Juttner (relativistic Maxwellian) distribution in the
// Landau-Lifshitz frame: J = n / M(beta) * exp(-beta U^mu q_mu), with
// U^0 = sqrt(1 + |U|^2) derived from the spatial part.
struct JuttnerParams {
  double n;
  std::array<double, 3> U;
  double beta;

  double u0() const;
  Vec4 four_velocity() const;
};

// J evaluated on every grid node; strictly positive up to floating underflow
// (underflowed tails clamp to exactly 0).
std::vector<double> evaluate_juttner(const JuttnerParams& params,
                                     const MomentumGrid& grid);

// J^0 = e^{-beta0 q^0} / M(beta0), the global Maxwellian (n = 1, U = 0).
std::vector<double> global_maxwellian(double beta0, const MomentumGrid& grid);

// J^0 plus the square-root weights used by the perturbation machinery.
struct GlobalMaxwellian {
  double beta0;
  double e0;  // e_tilde(beta0)
  std::vector<double> j0, sqrt_j0, inv_sqrt_j0;

  static GlobalMaxwellian build(double beta0, const MomentumGrid& grid);
};

// Lorentz boost taking the unit timelike U into the local rest frame,
// Lambda U = (1,0,0,0). |U| below 1e-14 returns the identity (the
// (U^0-1)/|U|^2 entries have limit 0).
Mat4 lorentz_boost(const Vec4& U);

// First-order parameter derivatives of J, treating (n, U^0, U, e) as
// independent: dJ/dn = J/n, dJ/dU^0 = -beta q^0 J, grad_U J = beta q J,
// dJ/de = -(1/e~'(beta)) (U^mu q_mu - e~(beta)) J.
struct JuttnerDerivs {
  std::vector<double> dn;
  std::vector<double> du0;
  std::array<std::vector<double>, 3> du;
  std::vector<double> de;
};

JuttnerDerivs juttner_param_derivs(const JuttnerParams& params,
                                   const MomentumGrid& grid);

}  // namespace aw
