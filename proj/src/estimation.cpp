#include "pboost/estimation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "pboost/weighted_stats.hpp"

namespace pboost {

double ml_estimate(std::int64_t count, std::int64_t R) {
  if (R <= 0) throw std::invalid_argument("ml_estimate: no observations");
  if (count < 0 || count > R) throw std::invalid_argument("ml_estimate: count outside [0, R]");
  return static_cast<double>(count) / static_cast<double>(R);
}

double map_estimate(std::int64_t count, std::int64_t R) {
  if (R < 0 || count < 0 || count > R) throw std::invalid_argument("map_estimate: count outside [0, R]");
  return static_cast<double>(1 + count) / static_cast<double>(R + 2);
}

void OracleEstimate::add_round(std::span<const int> outcomes) {
  if (outcomes.size() != plus_counts_.size()) throw std::invalid_argument("OracleEstimate: round size mismatch");
  for (std::size_t n = 0; n < outcomes.size(); ++n) {
    if (outcomes[n] > 0) ++plus_counts_[n];
  }
  ++rounds_;
}

std::vector<double> OracleEstimate::q_plus(Estimator estimator) const {
  std::vector<double> q(plus_counts_.size());
  for (std::size_t n = 0; n < q.size(); ++n) {
    q[n] = estimator == Estimator::kMap ? map_estimate(plus_counts_[n], rounds_) : ml_estimate(plus_counts_[n], rounds_);
  }
  return q;
}

std::vector<int> sample_round(const ProbClassifier& classifier, const Dataset& data, std::uint64_t seed,
                              std::string_view unit, std::int64_t round) {
  const std::uint64_t tag = purpose_tag(unit);
  std::vector<int> out(data.size());
  for (std::size_t n = 0; n < data.size(); ++n) {
    RandomStream stream(seed, tag, n, static_cast<std::uint64_t>(round));
    out[n] = classifier.sample(data.row(n), stream);
  }
  return out;
}

QEstimate exact_q_table(const ProbClassifier& classifier, const Dataset& data) {
  QEstimate est;
  est.q_plus.resize(data.size());
  for (std::size_t n = 0; n < data.size(); ++n) {
    auto q = classifier.true_q(data.row(n));
    if (!q) throw std::invalid_argument("exact q requested for a classifier without a closed-form q");
    est.q_plus[n] = *q;
  }
  return est;
}

QEstimate estimate_q_strategy_A(const ProbClassifier& classifier, const Dataset& data,
                                std::span<const double> weights, const EstimationConfig& config,
                                std::string_view unit) {
  if (config.r_max < 1 || config.r_min < 1) throw std::invalid_argument("Strategy A: r_min and r_max must be >= 1");
  OracleEstimate counts(data.size());
  QEstimate prev;
  for (std::int64_t r = 1; r <= config.r_max; ++r) {
    counts.add_round(sample_round(classifier, data, config.seed, unit, r - 1));
    QEstimate cur;
    cur.q_plus = counts.q_plus(config.estimator);
    cur.rounds = r;
    const WStatistics w = w_statistics(weights, data.labels(), cur.q_plus);
    const double z = z_value(w, optimal_alphas(w));
    cur.z_trace = std::move(prev.z_trace);
    cur.z_trace.push_back(z);
    if (r > 1 && prev.rounds >= config.r_min && z > cur.z_trace[cur.z_trace.size() - 2]) {
      prev.z_trace = std::move(cur.z_trace);
      return prev;
    }
    prev = std::move(cur);
  }
  prev.capped = true;
  return prev;
}

QEstimate estimate_q(const ProbClassifier& classifier, const Dataset& data, std::span<const double> weights,
                     const EstimationConfig& config, std::string_view unit) {
  if (config.exact_q) return exact_q_table(classifier, data);
  return estimate_q_strategy_A(classifier, data, weights, config, unit);
}

StrategyBChoice choose_strategy_b(double z_next, double seconds_a, double z_ratio, double seconds_b) {
  const double tiny = std::numeric_limits<double>::min();
  const double sa = seconds_a > 0.0 ? seconds_a : tiny;
  const double sb = seconds_b > 0.0 ? seconds_b : tiny;
  const double rate_a = std::log(z_next) / sa;
  const double rate_b = std::log(z_ratio) / sb;
  return rate_a <= rate_b ? StrategyBChoice::kTrainNext : StrategyBChoice::kResample;
}

}  // namespace pboost
