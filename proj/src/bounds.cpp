#include "pboost/bounds.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pboost/specfun.hpp"

namespace pboost::bounds {
namespace {

[[noreturn]] void domain_fail(const std::string& fn, const std::string& what) {
  throw std::domain_error(fn + ": " + what);
}

void check_rho(const char* fn, double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) domain_fail(fn, "rho must lie in [0, 1), got " + std::to_string(rho));
}

void check_open_rho(const char* fn, double rho) {
  if (!(rho > 0.0 && rho < 1.0)) domain_fail(fn, "rho must lie in (0, 1), got " + std::to_string(rho));
}

void check_size(const char* fn, double T) {
  if (!(T >= 1.0) || !std::isfinite(T)) domain_fail(fn, "size must be a finite real >= 1, got " + std::to_string(T));
}

}  // namespace

EdgeParams EdgeParams::from_epsilon(double epsilon) { return {epsilon, rho_from_epsilon(epsilon)}; }

EdgeParams EdgeParams::from_rho(double rho) { return {epsilon_from_rho(rho), rho}; }

void BoundCurve::add(double size, double bound) {
  if (!points_.empty() && !(size > points_.back().size)) {
    throw std::invalid_argument("BoundCurve '" + label_ + "': sizes must be strictly increasing");
  }
  if (!(bound >= 0.0 && bound <= 1.0)) {
    throw std::invalid_argument("BoundCurve '" + label_ + "': bound outside [0, 1]: " + std::to_string(bound));
  }
  points_.push_back({size, bound});
}

double rho_from_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 0.5)) {
    domain_fail("rho_from_epsilon", "epsilon must lie in (0, 1/2], got " + std::to_string(epsilon));
  }
  // sqrt((1 - 2 eps)(1 + 2 eps)) is exact at eps = 1/2.
  return std::sqrt((1.0 - 2.0 * epsilon) * (1.0 + 2.0 * epsilon));
}

double epsilon_from_rho(double rho) {
  check_rho("epsilon_from_rho", rho);
  return 0.5 * std::sqrt((1.0 - rho) * (1.0 + rho));
}

double bound_adaboost(std::int64_t T, double rho) {
  if (T < 1) domain_fail("bound_adaboost", "T must be >= 1");
  check_rho("bound_adaboost", rho);
  return std::pow(rho, static_cast<double>(T));
}

double bound_F(double T, double rho) {
  check_size("bound_F", T);
  check_rho("bound_F", rho);
  if (rho == 0.0) return 0.0;
  if (T == 1.0) return rho;
  return std::exp(specfun::log_gamma_shift(T + 1.0, rho - 1.0) - specfun::log_gamma(rho));
}

double bound_F_asymptotic(double T, double rho) {
  check_size("bound_F_asymptotic", T);
  check_open_rho("bound_F_asymptotic", rho);
  return std::exp((rho - 1.0) * std::log(T) - specfun::log_gamma(rho));
}

double bound_nested(std::int64_t T, double T1, double rho) {
  if (T < 1) domain_fail("bound_nested", "T must be >= 1");
  if (!(T1 >= 1.0 && T1 <= static_cast<double>(T))) {
    domain_fail("bound_nested", "T1 must lie in [1, T], got " + std::to_string(T1));
  }
  check_rho("bound_nested", rho);
  const double outer = (T1 == static_cast<double>(T)) ? 1.0 : static_cast<double>(T) / T1;
  return bound_F(outer, bound_F(T1, rho));
}

double bound_iso_nested(std::int64_t T, int L, double rho) {
  if (T < 1) domain_fail("bound_iso_nested", "T must be >= 1");
  if (L < 1) domain_fail("bound_iso_nested", "L must be >= 1");
  check_rho("bound_iso_nested", rho);
  const double size = (L == 1) ? static_cast<double>(T) : std::pow(static_cast<double>(T), 1.0 / L);
  double x = rho;
  for (int level = 0; level < L; ++level) x = bound_F(size, x);
  return x;
}

double bound_nested_sizes(const std::vector<double>& sizes, double rho) {
  check_rho("bound_nested_sizes", rho);
  double x = rho;
  for (double size : sizes) x = bound_F(size, x);
  return x;
}

double bound_M2(std::int64_t T, double rho) {
  if (T < 1 || !std::has_single_bit(static_cast<std::uint64_t>(T))) {
    domain_fail("bound_M2", "T must be a power of two, got " + std::to_string(T));
  }
  check_rho("bound_M2", rho);
  const int levels = std::countr_zero(static_cast<std::uint64_t>(T));
  double x = rho;
  for (int level = 0; level < levels; ++level) x = x * (1.0 + x) / 2.0;
  return x;
}

double dF_dT(double T, double rho) {
  check_size("dF_dT", T);
  check_open_rho("dF_dT", rho);
  return -bound_F(T, rho) * (1.0 / T + specfun::digamma(T) - specfun::digamma(T + rho));
}

double dF_drho(double T, double rho) {
  check_size("dF_drho", T);
  check_open_rho("dF_drho", rho);
  return -bound_F(T, rho) * (specfun::digamma(rho) - specfun::digamma(T + rho));
}

double rate_matryoshka(double C, double T) {
  if (!(C > 0.0 && C <= 1.0)) domain_fail("rate_matryoshka", "C must lie in (0, 1], got " + std::to_string(C));
  check_size("rate_matryoshka", T);
  return (C / T) * (specfun::kEulerGamma + specfun::digamma(C) + 1.0 / C - 1.0);
}

double rate_simple(double C_prev, double C_next) {
  if (!(C_prev >= 0.0 && C_prev <= 1.0) || !(C_next >= 0.0 && C_next <= 1.0)) {
    domain_fail("rate_simple", "bounds must lie in [0, 1]");
  }
  return (C_next - C_prev) / 2.0;
}

double majority_vote_error(int draws, double p_correct) {
  if (draws < 1) domain_fail("majority_vote_error", "draws must be >= 1");
  if (!(p_correct >= 0.0 && p_correct <= 1.0)) domain_fail("majority_vote_error", "p_correct must lie in [0, 1]");
  // Sum over k correct votes with 2k <= draws; coefficient built incrementally.
  double total = 0.0;
  double coefficient = 1.0;
  for (int k = 0; 2 * k <= draws; ++k) {
    if (k > 0) coefficient = coefficient * (draws - k + 1) / k;
    total += coefficient * std::pow(p_correct, k) * std::pow(1.0 - p_correct, draws - k);
  }
  return total;
}

}  // namespace pboost::bounds
