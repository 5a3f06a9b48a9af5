#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace aw {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (beta <= 0, ...).
struct DomainError : Error {
  using Error::Error;
};

// Invalid build/run configuration (odd n_axis, unknown config key, ...).
struct ConfigError : Error {
  using Error::Error;
};

// A distribution too degenerate for the frame decomposition (N^mu N_mu <= 0).
struct InvalidStateError : Error {
  using Error::Error;
};

// Temperature closure asked for an energy outside the range of e~ (e <= 1).
struct ClosureDomainError : DomainError {
  using DomainError::DomainError;
};

// Root finding failed to converge (bracket exhausted, Newton stalled).
struct ConvergenceError : Error {
  using Error::Error;
};

// Perturbation quantities evaluated outside the near-equilibrium regime.
struct RegimeError : Error {
  using Error::Error;
};

// Input data failed validation at load time (negative F, bad CSV, ...).
struct ValidationError : Error {
  using Error::Error;
};

// Matched closure Newton diverged; carries the formula-mode parameters so a
// caller can fall back or report them.
struct MatchedClosureError : ConvergenceError {
  MatchedClosureError(const std::string& msg, double fallback_n,
                      std::array<double, 3> fallback_u, double fallback_beta)
      : ConvergenceError(msg),
        n(fallback_n),
        U(fallback_u),
        beta(fallback_beta) {}
  double n;
  std::array<double, 3> U;
  double beta;
};

}  // namespace aw
