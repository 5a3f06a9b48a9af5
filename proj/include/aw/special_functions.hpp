#pragma once

namespace aw::special {

// Modified Bessel functions of the second kind K0, K1, K2 and the closure
// functions built from them, in units m = c = kB = 1. Everything here is a
// pure function of its arguments.

struct BesselEval {
  double beta;
  double k0, k1, k2;
};

struct ClosureFns {
  double e_tilde;        // K1/K2 + 3/beta, energy per particle; > 1
  double h_tilde;        // K1/K2 + 4/beta, enthalpy per particle
  double e_tilde_prime;  // d(e_tilde)/d(beta); < 0
};

// K_order(beta) by adaptive quadrature of the y-substituted integral
// representation; relative accuracy ~1e-12 for beta in [0.05, 50].
// Underflows to 0 for beta beyond ~700.
double bessel_k(int order, double beta);

// e^{beta} K_order(beta); safe at any beta > 0 (used for ratios).
double bessel_k_scaled(int order, double beta);

BesselEval bessel_eval(double beta);

// M(beta) = (4*pi/beta) K2(beta), the Juttner normalizer, and its log.
double m_of_beta(double beta);
double log_m_of_beta(double beta);

double e_tilde(double beta);
double e_tilde_prime(double beta);
double h_tilde(double beta);
ClosureFns closure_fns(double beta);

// The unique beta > 0 with e_tilde(beta) = e. Bracketing with geometric
// expansion from [1e-3, 1e3], then safeguarded Newton; relative tolerance
// 1e-12. Throws ClosureDomainError for e <= 1, ConvergenceError if the
// bracket expansion is exhausted.
double invert_e_tilde(double e);

}  // namespace aw::special
