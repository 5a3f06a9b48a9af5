#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "aw/errors.hpp"
#include "aw/special_functions.hpp"
#include "oracles.hpp"

using namespace aw::special;

namespace {

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> v(n);
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i)
    v[i] = std::exp(a + (b - a) * i / (n - 1.0));
  return v;
}

}  // namespace

TEST_CASE("K1 against an independent tanh-sinh oracle at doubled resolution") {
  for (double beta : {0.05, 0.3, 1.0, 7.0, 50.0}) {
    auto f = [beta](double y) {
      return std::exp(-beta * (std::sqrt(1.0 + y * y) - 1.0));
    };
    // truncate where the integrand is ~1e-19
    const double ymax = std::sqrt(std::pow(45.0 / beta + 1.0, 2) - 1.0);
    const double o1 = oracles::tanh_sinh(f, ymax, 200);
    const double o2 = oracles::tanh_sinh(f, ymax, 400);
    CHECK(std::abs(o1 / o2 - 1.0) < 1e-12);  // oracle self-consistent
    const double v = bessel_k_scaled(1, beta);
    CHECK(v == doctest::Approx(o2).epsilon(1e-10));
  }
}

TEST_CASE("recurrence K2 = (2/beta) K1 + K0") {
  for (double beta : {0.05, 0.5, 1.0, 3.0, 20.0, 50.0}) {
    const auto be = bessel_eval(beta);
    CHECK(be.k2 ==
          doctest::Approx(2.0 / beta * be.k1 + be.k0).epsilon(1e-10));
    CHECK(be.k0 > 0.0);
    CHECK(be.k1 > 0.0);
    CHECK(be.k2 > 0.0);
    CHECK(be.k1 / be.k2 > 0.0);
    CHECK(be.k1 / be.k2 < 1.0);
  }
}

TEST_CASE("large-beta ordering K0 < K1 < K2") {
  const auto be = bessel_eval(50.0);
  CHECK(be.k0 < be.k1);
  CHECK(be.k1 < be.k2);
}

TEST_CASE("derivative identities by central differences") {
  const double step = 1e-5;
  for (double beta : {0.3, 1.0, 2.0, 8.0}) {
    // K1' = -K1/beta - K0
    const double k1p = oracles::central_diff(
        [](double b) { return bessel_k(1, b); }, beta, step);
    CHECK(k1p == doctest::Approx(-bessel_k(1, beta) / beta -
                                 bessel_k(0, beta))
                     .epsilon(1e-6));
    // K2' = -(2/beta) K2 - K1
    const double k2p = oracles::central_diff(
        [](double b) { return bessel_k(2, b); }, beta, step);
    CHECK(k2p == doctest::Approx(-2.0 / beta * bessel_k(2, beta) -
                                 bessel_k(1, beta))
                     .epsilon(1e-6));
    // K1/K2 ratio derivative: (K1/K2)' = 3/beta K1/K2 + (K1/K2)^2 - 1
    const double rp = oracles::central_diff(
        [](double b) { return bessel_k(1, b) / bessel_k(2, b); }, beta, step);
    const double r = bessel_k(1, beta) / bessel_k(2, beta);
    CHECK(rp == doctest::Approx(3.0 / beta * r + r * r - 1.0).epsilon(1e-6));
    // same thing through e_tilde_prime
    CHECK(rp == doctest::Approx(e_tilde_prime(beta) + 3.0 / (beta * beta))
                    .epsilon(1e-6));
  }
}

TEST_CASE("M(beta) identities") {
  // M = (4 pi / beta) K2, and K1/K2 + 3/beta = -M'/M
  for (double beta : {0.2, 1.0, 5.0}) {
    CHECK(m_of_beta(beta) ==
          doctest::Approx(4.0 * 3.14159265358979323846 / beta *
                          bessel_k(2, beta))
              .epsilon(1e-13));
    const double mp = oracles::central_diff(
        [](double b) { return m_of_beta(b); }, beta, 1e-5);
    CHECK(e_tilde(beta) ==
          doctest::Approx(-mp / m_of_beta(beta)).epsilon(1e-6));
    CHECK(std::exp(log_m_of_beta(beta)) ==
          doctest::Approx(m_of_beta(beta)).epsilon(1e-12));
  }
  CHECK(m_of_beta(2.0) < m_of_beta(1.0));
  CHECK(m_of_beta(1.0) > 0.0);
}

TEST_CASE("e_tilde monotone decreasing and > 1 on a 200-point log grid") {
  const auto grid = log_spaced(0.05, 50.0, 200);
  double prev = std::numeric_limits<double>::infinity();
  for (double b : grid) {
    const double e = e_tilde(b);
    CHECK(e > 1.0);
    CHECK(e < prev);
    prev = e;
    CHECK(e_tilde_prime(b) < 0.0);
  }
}

TEST_CASE("e_tilde_prime matches finite differences") {
  for (double beta : {0.3, 1.0, 4.0, 30.0}) {
    const double fd =
        oracles::central_diff([](double b) { return e_tilde(b); }, beta, 1e-5);
    CHECK(e_tilde_prime(beta) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("h_tilde = e_tilde + 1/beta from the same Bessel evaluations") {
  for (double beta : {0.1, 1.0, 10.0}) {
    const auto c = closure_fns(beta);
    // identical K1/K2 ratio in both, so the difference is 1/beta up to a
    // single rounding of the additions
    CHECK(std::abs((c.h_tilde - c.e_tilde) - 1.0 / beta) <=
          2.0 * c.h_tilde * 0x1p-52);
    CHECK(c.h_tilde > 0.0);
  }
}

TEST_CASE("invert_e_tilde round trips") {
  CHECK(invert_e_tilde(e_tilde(1.0)) == doctest::Approx(1.0).epsilon(1e-10));
  for (double b : log_spaced(0.05, 50.0, 40)) {
    CHECK(invert_e_tilde(e_tilde(b)) == doctest::Approx(b).epsilon(1e-10));
  }
  // extremes
  CHECK(invert_e_tilde(e_tilde(0.05)) ==
        doctest::Approx(0.05).epsilon(1e-10));
  CHECK(invert_e_tilde(e_tilde(40.0)) == doctest::Approx(40.0).epsilon(1e-10));
}

TEST_CASE("bracket exhaustion raises a convergence error") {
  // e barely above 1 corresponds to beta beyond the expanded bracket
  CHECK_THROWS_AS(invert_e_tilde(1.0 + 1e-14), aw::ConvergenceError);
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(bessel_k(3, 1.0), aw::DomainError);
  CHECK_THROWS_AS(bessel_k(-1, 1.0), aw::DomainError);
  CHECK_THROWS_AS(bessel_k(1, 0.0), aw::DomainError);
  CHECK_THROWS_AS(bessel_k(1, -2.0), aw::DomainError);
  CHECK_THROWS_AS(m_of_beta(-1.0), aw::DomainError);
  CHECK_THROWS_AS(e_tilde(0.0), aw::DomainError);
  CHECK_THROWS_AS(invert_e_tilde(1.0), aw::ClosureDomainError);
  CHECK_THROWS_AS(invert_e_tilde(0.5), aw::ClosureDomainError);
}
