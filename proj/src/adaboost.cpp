#include "pboost/adaboost.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pboost/csv.hpp"

namespace pboost {
namespace {

std::string stage_unit(std::size_t t) { return "adaboost/stage/" + std::to_string(t); }

std::uint64_t predict_tag(std::size_t t) { return purpose_tag("predict/adaboost/" + std::to_string(t)); }

struct StageDraft {
  AdaboostStage stage;
  std::vector<double> next_weights;
};

StageDraft finish_stage(ClassifierPtr classifier, QEstimate estimate, const Dataset& data,
                        std::span<const double> weights) {
  StageDraft d;
  d.stage.classifier = std::move(classifier);
  d.stage.w = w_statistics(weights, data.labels(), estimate.q_plus);
  d.stage.alphas = optimal_alphas(d.stage.w);
  WeightUpdate up = update_weights(weights, data.labels(), estimate.q_plus, d.stage.alphas);
  d.stage.z = up.z;
  d.stage.q_plus = std::move(estimate.q_plus);
  d.stage.rounds = estimate.rounds;
  d.next_weights = std::move(up.weights);
  return d;
}

ClassifierPtr train_stage(WeakLearner& learner, const Dataset& data, std::span<const double> weights,
                          std::size_t t) {
  try {
    return learner.train(data, weights);
  } catch (const std::exception& e) {
    throw std::runtime_error("adaboost round " + std::to_string(t) + ": " + e.what());
  }
}

std::vector<std::vector<double>> q_tables(const AdaboostModel& model, const Dataset& data, QSource source) {
  std::vector<std::vector<double>> out;
  for (const auto& s : model.stages) {
    if (source == QSource::kRecorded) {
      if (s.q_plus.size() != data.size()) throw std::invalid_argument("recorded q table does not match the dataset");
      out.push_back(s.q_plus);
    } else {
      out.push_back(exact_q_table(*s.classifier, data).q_plus);
    }
  }
  return out;
}

// Calls f(probability, score) for every output vector of every example.
template <typename F>
void enumerate_outputs(const AdaboostModel& model, const std::vector<std::vector<double>>& q, std::size_t n, F f) {
  const std::size_t T = model.size();
  if (T > kEnumerationCap) throw std::invalid_argument("enumeration over more than 2^20 output vectors");
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << T); ++mask) {
    double p = 1.0;
    double h = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
      if (mask >> t & 1U) {
        p *= q[t][n];
        h += model.stages[t].alphas.plus;
      } else {
        p *= 1.0 - q[t][n];
        h -= model.stages[t].alphas.minus;
      }
    }
    f(p, h);
  }
}

}  // namespace

double AdaboostModel::recorded_bound() const {
  double b = 1.0;
  for (const auto& s : stages) b *= s.z;
  return b;
}

AdaboostModel train_adaboost(const Dataset& data, WeakLearner& learner, int T, const EstimationConfig& config,
                             Stopwatch* stopwatch) {
  if (T < 1) throw std::invalid_argument("train_adaboost: T must be >= 1");
  AdaboostModel model;
  std::vector<double> weights = data.weights();

  if (config.strategy == Strategy::kA || config.exact_q) {
    for (int t = 1; t <= T; ++t) {
      ClassifierPtr h = train_stage(learner, data, weights, static_cast<std::size_t>(t));
      QEstimate est = estimate_q(*h, data, weights, config, stage_unit(static_cast<std::size_t>(t)));
      StageDraft d = finish_stage(std::move(h), std::move(est), data, weights);
      model.stages.push_back(std::move(d.stage));
      weights = std::move(d.next_weights);
    }
    return model;
  }

  // Strategy B: after each decision either a new stage is committed or the
  // last stage gets one more sampling pass.
  SteadyStopwatch wall;
  Stopwatch& clock = stopwatch ? *stopwatch : wall;

  auto sampled_stage = [&](ClassifierPtr h, OracleEstimate& counts, std::span<const double> w, std::size_t t) {
    counts.add_round(sample_round(*h, data, config.seed, stage_unit(t), counts.rounds()));
    QEstimate est;
    est.q_plus = counts.q_plus(config.estimator);
    est.rounds = counts.rounds();
    return finish_stage(std::move(h), std::move(est), data, w);
  };

  std::vector<double> last_weights = weights;
  OracleEstimate last_counts(data.size());
  StageDraft last = sampled_stage(train_stage(learner, data, weights, 1), last_counts, last_weights, 1);

  while (model.stages.size() + 1 < static_cast<std::size_t>(T)) {
    const std::size_t t_next = model.stages.size() + 2;

    const double a0 = clock.now();
    OracleEstimate cand_counts(data.size());
    StageDraft cand =
        sampled_stage(train_stage(learner, data, last.next_weights, t_next), cand_counts, last.next_weights, t_next);
    const double a1 = clock.now();

    const double b0 = clock.now();
    OracleEstimate refreshed_counts = last_counts;
    StageDraft refreshed = sampled_stage(last.stage.classifier, refreshed_counts, last_weights, t_next - 1);
    const double b1 = clock.now();

    const bool forced = last_counts.rounds() >= config.r_max;
    const StrategyBChoice choice = forced ? StrategyBChoice::kTrainNext
                                          : choose_strategy_b(cand.stage.z, a1 - a0, refreshed.stage.z / last.stage.z,
                                                              b1 - b0);
    if (choice == StrategyBChoice::kTrainNext) {
      last_weights = last.next_weights;
      model.stages.push_back(std::move(last.stage));
      last = std::move(cand);
      last_counts = std::move(cand_counts);
    } else {
      last = std::move(refreshed);
      last_counts = std::move(refreshed_counts);
    }
  }
  model.stages.push_back(std::move(last.stage));
  return model;
}

double exact_expected_bound(const AdaboostModel& model, const Dataset& data, QSource source) {
  const auto q = q_tables(model, data, source);
  double total = 0.0;
  for (std::size_t n = 0; n < data.size(); ++n) {
    const double y = data.label(n);
    double e = 0.0;
    enumerate_outputs(model, q, n, [&](double p, double h) { e += p * std::exp(-y * h); });
    total += data.weights()[n] * e;
  }
  return total;
}

double exact_misclassification(const AdaboostModel& model, const Dataset& data, QSource source) {
  const auto q = q_tables(model, data, source);
  double total = 0.0;
  for (std::size_t n = 0; n < data.size(); ++n) {
    const double y = data.label(n);
    double e = 0.0;
    enumerate_outputs(model, q, n, [&](double p, double h) {
      if (std::abs(h) <= kScoreTie || y * h < 0.0) e += p;
    });
    total += data.weights()[n] * e;
  }
  return total;
}

double sample_adaboost_score(const AdaboostModel& model, std::span<const double> x, std::uint64_t seed,
                             std::uint64_t index, std::uint64_t call) {
  double h = 0.0;
  for (std::size_t t = 0; t < model.size(); ++t) {
    RandomStream stream(seed, predict_tag(t + 1), index, call);
    const auto& s = model.stages[t];
    h += s.classifier->sample(x, stream) > 0 ? s.alphas.plus : -s.alphas.minus;
  }
  return h;
}

McResult mc_misclassification(const AdaboostModel& model, const Dataset& data, std::int64_t trials,
                              std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("mc_misclassification: trials must be >= 1");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::int64_t k = 0; k < trials; ++k) {
    double loss = 0.0;
    for (std::size_t n = 0; n < data.size(); ++n) {
      const double h = sample_adaboost_score(model, data.row(n), seed, n, static_cast<std::uint64_t>(k));
      if (std::abs(h) <= kScoreTie || data.label(n) * h < 0.0) loss += data.weights()[n];
    }
    sum += loss;
    sum_sq += loss * loss;
  }
  McResult r;
  r.trials = trials;
  r.mean = sum / static_cast<double>(trials);
  if (trials > 1) {
    const double var = std::max(0.0, (sum_sq - sum * r.mean) / static_cast<double>(trials - 1));
    r.std_error = std::sqrt(var / static_cast<double>(trials));
  }
  return r;
}

std::string adaboost_z_log_csv(const AdaboostModel& model) {
  std::ostringstream out;
  out << "round,Z,alpha_plus,alpha_minus,bound_so_far\n";
  double bound = 1.0;
  for (std::size_t t = 0; t < model.size(); ++t) {
    const auto& s = model.stages[t];
    bound *= s.z;
    out << t + 1 << ',' << csv_number(s.z) << ',' << csv_number(s.alphas.plus) << ',' << csv_number(s.alphas.minus)
        << ',' << csv_number(bound) << '\n';
  }
  return out.str();
}

}  // namespace pboost
