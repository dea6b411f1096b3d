#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "pboost/specfun.hpp"

using namespace pboost::specfun;

TEST_CASE("log_gamma at the integers one and two is zero") {
  CHECK(log_gamma(1.0) == 0.0);
  CHECK(log_gamma(2.0) == 0.0);
}

TEST_CASE("log_gamma at one half matches quadrature of Gamma(1/2)") {
  const double reference = std::log(oracle::gamma_half_quadrature());
  CHECK(log_gamma(0.5) == doctest::Approx(reference).epsilon(1e-12));
  CHECK(log_gamma(0.5) == doctest::Approx(0.5723649429247001).epsilon(1e-14));
}

TEST_CASE("log_gamma follows the recurrence over a wide range") {
  for (double x : {1e-3, 0.01, 0.3, 0.9, 1.7, 3.2, 11.5, 150.0, 1e4, 1e6}) {
    CAPTURE(x);
    const double lhs = log_gamma(x + 1.0);
    const double rhs = log_gamma(x) + std::log(x);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("log_gamma matches factorials") {
  double log_fact = 0.0;
  for (int n = 1; n <= 170; ++n) {
    CAPTURE(n);
    CHECK(log_gamma(n + 1.0) == doctest::Approx(log_fact + std::log(static_cast<double>(n))).epsilon(1e-13));
    log_fact += std::log(static_cast<double>(n));
  }
}

TEST_CASE("log_gamma rejects nonpositive arguments") {
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(-1.5), std::domain_error);
  CHECK_THROWS_AS(log_gamma(std::nan("")), std::domain_error);
}

TEST_CASE("log_gamma_ratio agrees with the difference of log-gammas") {
  for (auto [a, b] : {std::pair{3.5, 2.0}, {1000.5, 1001.0}, {0.25, 7.0}, {2048.96875, 2049.0}}) {
    CAPTURE(a);
    CAPTURE(b);
    CHECK(log_gamma_ratio(a, b) == doctest::Approx(log_gamma(a) - log_gamma(b)).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("beta examples") {
  CHECK(beta(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(beta(2.0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(beta(2.0, 0.5) == doctest::Approx(4.0 / 3.0).epsilon(1e-13));
  CHECK(beta(2.0, 0.5) == doctest::Approx(oracle::beta_quadrature(2.0, 0.5)).epsilon(1e-10));
}

TEST_CASE("beta matches quadrature") {
  for (auto [a, b] : {std::pair{0.5, 0.5}, {1.5, 2.5}, {3.0, 1.0}, {2.5, 1.5}, {4.0, 4.0}}) {
    CAPTURE(a);
    CAPTURE(b);
    CHECK(beta(a, b) == doctest::Approx(oracle::beta_quadrature(a, b)).epsilon(1e-9));
  }
}

TEST_CASE("beta is symmetric") {
  for (double a : {0.1, 0.5, 1.0, 2.5, 17.0, 300.0}) {
    for (double b : {0.2, 0.75, 3.0, 64.0}) {
      CAPTURE(a);
      CAPTURE(b);
      CHECK(std::abs(beta(a, b) / beta(b, a) - 1.0) <= 1e-12);
    }
  }
  CHECK_THROWS_AS(beta(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(beta(1.0, -2.0), std::domain_error);
}

TEST_CASE("digamma known values") {
  CHECK(std::abs(digamma(1.0) + 0.5772156649) <= 1e-9);
  CHECK(digamma(1.0) == -kEulerGamma);
  CHECK(digamma(2.0) == doctest::Approx(0.42278433509846714).epsilon(1e-13));
  CHECK(digamma(0.5) == doctest::Approx(-1.9635100260214235).epsilon(1e-13));
  CHECK(digamma(0.5) ==
        doctest::Approx(oracle::central_difference([](double x) { return log_gamma(x); }, 0.5, 1e-5)).epsilon(1e-6));
  CHECK_THROWS_AS(digamma(0.0), std::domain_error);
}

TEST_CASE("digamma recurrence on [0.1, 100]") {
  for (double x = 0.1; x <= 100.0; x += 0.37) {
    CAPTURE(x);
    CHECK(std::abs(digamma(x + 1.0) - digamma(x) - 1.0 / x) <= 1e-10);
  }
}

TEST_CASE("digamma is the derivative of log_gamma") {
  for (double x : {0.2, 0.5, 0.8, 1.3, 2.0, 4.75, 9.5, 33.0, 250.0}) {
    CAPTURE(x);
    const double fd = oracle::central_difference([](double t) { return log_gamma(t); }, x, 1e-5);
    CHECK(std::abs(digamma(x) - fd) <= 1e-6 * std::abs(fd));
  }
}

TEST_CASE("log_gamma_shift keeps an inexact offset exact") {
  // ln G(T + rho) - ln G(T + 1) as a long-double running sum of logs.
  for (double rho : {0.1, 0.3, 0.9}) {
    long double acc = 0.0L;
    for (int T = 1; T <= 2048; ++T) {
      acc += std::log((T - 1 + static_cast<long double>(rho)) / T);
      if (T % 256 != 0) continue;
      const double lg = log_gamma_shift(T + 1.0, rho - 1.0) - log_gamma(rho);
      CAPTURE(rho);
      CAPTURE(T);
      CHECK(std::abs(lg - static_cast<double>(acc)) <= 1e-13);
    }
  }
  CHECK(log_gamma_shift(5.0, 0.0) == 0.0);
  CHECK(log_gamma_ratio(7.5, 3.25) == log_gamma_shift(3.25, 4.25));
}
