#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pboost/dataset.hpp"
#include "pboost/weak_learner.hpp"

namespace pboost {

enum class Estimator { kMap, kMl };
enum class Strategy { kA, kB };

/// count / R. Throws std::invalid_argument when R = 0 or count is outside [0, R].
double ml_estimate(std::int64_t count, std::int64_t R);

/// (1 + count) / (R + 2): posterior mean under a uniform prior.
double map_estimate(std::int64_t count, std::int64_t R);

struct EstimationConfig {
  Estimator estimator = Estimator::kMap;
  Strategy strategy = Strategy::kA;
  bool exact_q = false;  // use true_q instead of sampling
  std::int64_t r_min = 2;
  std::int64_t r_max = 10000;
  std::uint64_t seed = 0;
};

/// Running +1 counts of an oracle over the examples of a dataset; every
/// example has been observed the same number of times.
class OracleEstimate {
 public:
  explicit OracleEstimate(std::size_t examples) : plus_counts_(examples, 0) {}

  /// Adds one observation (+1 or -1) per example.
  void add_round(std::span<const int> outcomes);

  std::int64_t rounds() const { return rounds_; }
  std::int64_t plus_count(std::size_t n) const { return plus_counts_[n]; }
  std::int64_t minus_count(std::size_t n) const { return rounds_ - plus_counts_[n]; }

  std::vector<double> q_plus(Estimator estimator) const;

 private:
  std::vector<std::int64_t> plus_counts_;
  std::int64_t rounds_ = 0;
};

/// One oracle call per example. Round r of unit `unit` draws from the stream
/// (seed, purpose_tag(unit), n, r).
std::vector<int> sample_round(const ProbClassifier& classifier, const Dataset& data, std::uint64_t seed,
                              std::string_view unit, std::int64_t round);

struct QEstimate {
  std::vector<double> q_plus;
  std::int64_t rounds = 0;  // observations behind q_plus; 0 for exact q
  bool capped = false;      // R_max reached without a stop
  std::vector<double> z_trace;  // Z estimate after each sampled round
};

/// true_q for every example; throws std::invalid_argument if the classifier has none.
QEstimate exact_q_table(const ProbClassifier& classifier, const Dataset& data);

/// Samples one round at a time and recomputes the Z estimate at the optimal
/// alphas of the current estimates. Stops at the first round whose Z is
/// strictly larger than the previous round's, provided the previous round
/// had at least r_min observations, and returns the previous round's
/// estimates. Returns the r_max-round estimates if no increase shows up.
QEstimate estimate_q_strategy_A(const ProbClassifier& classifier, const Dataset& data,
                                std::span<const double> weights, const EstimationConfig& config,
                                std::string_view unit);

/// exact_q_table when config.exact_q, otherwise Strategy A.
QEstimate estimate_q(const ProbClassifier& classifier, const Dataset& data, std::span<const double> weights,
                     const EstimationConfig& config, std::string_view unit);

enum class StrategyBChoice { kTrainNext, kResample };

/// Compares log(z_next)/S_A with log(z_ratio)/S_B and picks the smaller
/// (train the next classifier on ties). Nonpositive durations count as the
/// smallest positive double.
StrategyBChoice choose_strategy_b(double z_next, double seconds_a, double z_ratio, double seconds_b);

}  // namespace pboost
