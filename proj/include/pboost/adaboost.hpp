#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pboost/dataset.hpp"
#include "pboost/estimation.hpp"
#include "pboost/weak_learner.hpp"
#include "pboost/weighted_stats.hpp"

namespace pboost {

struct AdaboostStage {
  ClassifierPtr classifier;
  Alphas alphas;
  double z = 1.0;
  WStatistics w;
  std::vector<double> q_plus;  // q estimate used in training, per example
  std::int64_t rounds = 0;     // oracle calls per example behind q_plus
};

/// H(X) = sum_t alpha_{t, h_t(X)} h_t(X).
struct AdaboostModel {
  std::vector<AdaboostStage> stages;

  std::size_t size() const { return stages.size(); }
  /// prod_t Z_t.
  double recorded_bound() const;
};

/// Runs T rounds: train on the current weights, estimate q, set the optimal
/// alphas, reweight. With Strategy B the stopwatch times the two options;
/// a null stopwatch means wall-clock time.
AdaboostModel train_adaboost(const Dataset& data, WeakLearner& learner, int T, const EstimationConfig& config,
                             Stopwatch* stopwatch = nullptr);

enum class QSource { kRecorded, kTrue };

/// Largest T for the enumeration routines.
inline constexpr std::size_t kEnumerationCap = 20;

/// sum_n D(n) E(exp(-y_n H(X_n))) by enumerating all 2^T output vectors.
double exact_expected_bound(const AdaboostModel& model, const Dataset& data, QSource source = QSource::kRecorded);

/// sum_n D(n) P(y_n H(X_n) <= 0) by the same enumeration; |H| <= 1e-12 is an error.
double exact_misclassification(const AdaboostModel& model, const Dataset& data,
                               QSource source = QSource::kRecorded);

struct McResult {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t trials = 0;
};

/// Tie tolerance on the score: |H| <= kScoreTie predicts neither class.
inline constexpr double kScoreTie = 1e-12;

/// Weighted 0/1 loss averaged over `trials` independent passes that sample
/// every stage oracle; ties count as errors.
McResult mc_misclassification(const AdaboostModel& model, const Dataset& data, std::int64_t trials,
                              std::uint64_t seed);

/// Score of one sampled pass over all stages.
double sample_adaboost_score(const AdaboostModel& model, std::span<const double> x, std::uint64_t seed,
                             std::uint64_t index, std::uint64_t call);

/// `round,Z,alpha_plus,alpha_minus,bound_so_far`.
std::string adaboost_z_log_csv(const AdaboostModel& model);

}  // namespace pboost
