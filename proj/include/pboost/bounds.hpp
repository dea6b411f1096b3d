#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

// Training-error bounds for probabilistic boosting ensembles.
//
// Notation: rho = sqrt(1 - 4 eps^2) is the per-stage factor of a weak learner
// with edge eps; T counts weak classifiers (or inner tree nodes).
//
//   bound_adaboost(T, rho)    rho^T
//   bound_F(T, rho)           prod_{t<T} (t + rho) / (t + 1) = 1 / (T B(T, rho))
//   bound_nested(T, T1, rho)  F(T / T1, F(T1, rho))
//   bound_iso_nested(T, L)    L-fold composition of F(T^{1/L}, .)
//   bound_M2(2^L, rho)        L-fold composition of x -> x (1 + x) / 2
//
// Every function validates its domain and throws std::domain_error.

namespace pboost::bounds {

/// Edge/factor pair. Holds rho = sqrt(1 - 4 eps^2) by construction.
class EdgeParams {
 public:
  static EdgeParams from_epsilon(double epsilon);
  static EdgeParams from_rho(double rho);

  double epsilon() const { return epsilon_; }
  double rho() const { return rho_; }

 private:
  EdgeParams(double epsilon, double rho) : epsilon_(epsilon), rho_(rho) {}
  double epsilon_;
  double rho_;
};

struct CurvePoint {
  double size;
  double bound;
};

/// A labelled (size, bound) series with sizes strictly increasing and bounds in [0, 1].
class BoundCurve {
 public:
  explicit BoundCurve(std::string label) : label_(std::move(label)) {}

  /// Throws std::invalid_argument if the point breaks the ordering or range invariant.
  void add(double size, double bound);

  const std::string& label() const { return label_; }
  const std::vector<CurvePoint>& points() const { return points_; }

 private:
  std::string label_;
  std::vector<CurvePoint> points_;
};

double rho_from_epsilon(double epsilon);
double epsilon_from_rho(double rho);

double bound_adaboost(std::int64_t T, double rho);

/// Boosted-tree bound, defined for real T >= 1 through the Gamma form.
/// F(T, 0) = 0 and F(1, rho) = rho.
double bound_F(double T, double rho);

/// Large-T approximation T^{rho-1} / Gamma(rho); rho must be in (0, 1).
double bound_F_asymptotic(double T, double rho);

double bound_nested(std::int64_t T, double T1, double rho);
double bound_iso_nested(std::int64_t T, int L, double rho);

/// Nested bound with explicit level sizes, innermost first:
/// F(sizes[n-1], ... F(sizes[0], rho)).
double bound_nested_sizes(const std::vector<double>& sizes, double rho);

/// Throws std::domain_error unless T is a power of two.
double bound_M2(std::int64_t T, double rho);

/// Partial derivatives of F; both need rho in (0, 1).
double dF_dT(double T, double rho);
double dF_drho(double T, double rho);

/// d/dt F(t / T, C) at t = T: (C / T)(gamma + psi(C) + 1/C - 1).
double rate_matryoshka(double C, double T);

/// Central-difference decrease rate (C_next - C_prev) / 2.
double rate_simple(double C_prev, double C_next);

/// Probability that a majority vote of `draws` independent +-1 votes, each
/// correct with probability p_correct, is wrong. Ties count as wrong.
double majority_vote_error(int draws, double p_correct);

}  // namespace pboost::bounds
