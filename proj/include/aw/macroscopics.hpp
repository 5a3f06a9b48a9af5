#pragma once

#include <span>
#include <vector>

#include "aw/maxwellian.hpp"
#include "aw/momentum_grid.hpp"
#include "aw/vec4.hpp"

namespace aw {

// Particle four-flow and energy-momentum tensor of a discrete distribution,
// plus the scalar moment int F dq/q0 needed by the pressure formula.
struct Moments {
  Vec4 N{};
  Mat4 T{};
  double int_F_over_q0 = 0.0;
};

Moments compute_moments(std::span<const double> F, const MomentumGrid& grid);

struct EckartFields {
  double n;  // sqrt(N^mu N_mu)
  Vec4 u;    // N / n, unit timelike
};

// Throws InvalidStateError when N^mu N_mu <= 0 or N^0 <= 0.
EckartFields eckart_fields(const Moments& m);

struct LLFields {
  Vec4 heat_flux;  // Delta^mu_gamma u_nu T^{nu gamma}
  double e, p, h;
  Vec4 U;              // u + q/(nh), U^0 recomputed from the spatial part
  double u0_mismatch;  // |u^0 + q^0/(nh) - U^0|, O(eps^2) diagnostic
};

LLFields landau_lifshitz_fields(const Moments& m, double n, const Vec4& u);

// Full chain including the temperature closure beta = invert_e_tilde(e).
struct MacroState {
  double n;
  Vec4 u;
  Vec4 heat_flux;
  double e, p, h;
  Vec4 U;
  double beta;
  double u0_mismatch;
};

MacroState macro_state(const Moments& m);

enum class ClosureMode { formula, matched };

struct AttractorResult {
  JuttnerParams params;
  std::vector<double> J;
  int iterations;
  double residual;  // max |g| over the five discrete cancellation equations
};

// Local Anderson-Witting attractor of F. formula: parameters from the
// continuum chain. matched: Newton refinement of (n, U, beta) enforcing the
// five discrete cancellation equations with nu-weights (the dt -> 0 limit of
// matched_attractor below).
AttractorResult aw_attractor(std::span<const double> F,
                             const MomentumGrid& grid, ClosureMode mode);

// Matched closure with the weights of the exponential relaxation update,
// rho = (1 - e^{-nu dt})/dt; solving
//   sum_k w rho_k (J - F)_k (1, q, q^0)_k = 0
// makes the update conserve mass, momentum and energy to solver precision.
// dt = 0 reduces rho to nu, i.e. the continuum cancellation identity.
// Throws MatchedClosureError (with formula fallback attached) on divergence.
AttractorResult matched_attractor(std::span<const double> F,
                                  const MomentumGrid& grid, double dt);

}  // namespace aw
