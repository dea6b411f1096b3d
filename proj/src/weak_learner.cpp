#include "pboost/weak_learner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pboost {
namespace {

void require_weights(const Dataset& data, std::span<const double> weights) {
  if (weights.size() != data.size()) {
    throw std::invalid_argument("weak learner: weight vector has " + std::to_string(weights.size()) +
                                " entries for " + std::to_string(data.size()) + " examples");
  }
}

}  // namespace

ConstantEdgeClassifier::ConstantEdgeClassifier(double epsilon, std::map<std::vector<double>, int> memory)
    : epsilon_(epsilon), memory_(std::move(memory)) {
  if (!(epsilon > 0.0 && epsilon <= 0.5)) throw std::domain_error("constant-edge oracle: epsilon must be in (0, 1/2]");
}

std::optional<double> ConstantEdgeClassifier::true_q(std::span<const double> x) const {
  auto it = memory_.find(std::vector<double>(x.begin(), x.end()));
  if (it == memory_.end()) return 0.5;
  return it->second > 0 ? 0.5 + epsilon_ : 0.5 - epsilon_;
}

int ConstantEdgeClassifier::sample(std::span<const double> x, RandomStream& stream) const {
  return stream.bernoulli(*true_q(x)) ? 1 : -1;
}

nlohmann::json ConstantEdgeClassifier::to_json() const {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& [x, y] : memory_) points.push_back({{"x", x}, {"y", y}});
  return {{"type", "constant_edge"}, {"epsilon", epsilon_}, {"memory", points}};
}

ConstantEdgeOracle::ConstantEdgeOracle(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 0.5)) throw std::domain_error("constant-edge oracle: epsilon must be in (0, 1/2]");
}

ClassifierPtr ConstantEdgeOracle::train(const Dataset& data, std::span<const double> weights) {
  require_weights(data, weights);
  const std::uint64_t fp = data.fingerprint();
  if (cached_ && fp == cached_fingerprint_) return cached_;

  std::map<std::vector<double>, int> memory;
  for (std::size_t n = 0; n < data.size(); ++n) {
    auto row = data.row(n);
    auto [it, inserted] = memory.emplace(std::vector<double>(row.begin(), row.end()), data.label(n));
    if (!inserted && it->second != data.label(n)) {
      throw std::invalid_argument("constant-edge oracle: example " + std::to_string(n) +
                                  " repeats an input with the opposite label");
    }
  }
  cached_ = std::make_shared<ConstantEdgeClassifier>(epsilon_, std::move(memory));
  cached_fingerprint_ = fp;
  return cached_;
}

NoisyStumpClassifier::NoisyStumpClassifier(int feature, double threshold, int polarity, double p_flip)
    : feature_(feature), threshold_(threshold), polarity_(polarity), p_flip_(p_flip) {
  if (polarity != 1 && polarity != -1) throw std::invalid_argument("stump: polarity must be +1 or -1");
  if (!(p_flip >= 0.0 && p_flip <= 1.0)) throw std::domain_error("stump: p_flip must be in [0, 1]");
}

int NoisyStumpClassifier::decide(std::span<const double> x) const {
  if (feature_ < 0) return polarity_;
  if (static_cast<std::size_t>(feature_) >= x.size()) {
    throw std::invalid_argument("stump: input has " + std::to_string(x.size()) + " features, needs feature " +
                                std::to_string(feature_));
  }
  return x[static_cast<std::size_t>(feature_)] > threshold_ ? polarity_ : -polarity_;
}

std::optional<double> NoisyStumpClassifier::true_q(std::span<const double> x) const {
  return decide(x) > 0 ? 1.0 - p_flip_ : p_flip_;
}

int NoisyStumpClassifier::sample(std::span<const double> x, RandomStream& stream) const {
  const int d = decide(x);
  return stream.bernoulli(p_flip_) ? -d : d;
}

nlohmann::json NoisyStumpClassifier::to_json() const {
  return {{"type", "stump"},
          {"feature", feature_},
          {"threshold", threshold_},
          {"polarity", polarity_},
          {"p_flip", p_flip_}};
}

NoisyStumpLearner::NoisyStumpLearner(double p_flip) : p_flip_(p_flip) {
  if (!(p_flip >= 0.0 && p_flip <= 1.0)) throw std::domain_error("stump: p_flip must be in [0, 1]");
}

ClassifierPtr NoisyStumpLearner::train(const Dataset& data, std::span<const double> weights) {
  require_weights(data, weights);
  double plus_mass = 0.0;
  double minus_mass = 0.0;
  for (std::size_t n = 0; n < data.size(); ++n) (data.label(n) > 0 ? plus_mass : minus_mass) += weights[n];

  // Constant stumps first so that they win ties against splits.
  int best_feature = -1;
  double best_threshold = 0.0;
  int best_polarity = minus_mass <= plus_mass ? 1 : -1;
  double best_error = std::min(plus_mass, minus_mass);

  std::vector<std::size_t> order(data.size());
  for (std::size_t j = 0; j < data.dimension(); ++j) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return data.row(a)[j] < data.row(b)[j]; });
    // Errors with the threshold below every point; then move points below it one at a time.
    double err_up = minus_mass;   // polarity +1: predict + above
    double err_down = plus_mass;  // polarity -1: predict - above
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      const std::size_t n = order[i];
      if (data.label(n) > 0) {
        err_up += weights[n];
        err_down -= weights[n];
      } else {
        err_up -= weights[n];
        err_down += weights[n];
      }
      const double lo = data.row(n)[j];
      const double hi = data.row(order[i + 1])[j];
      if (!(lo < hi)) continue;
      const double threshold = lo + (hi - lo) / 2.0;
      if (err_up < best_error) {
        best_error = err_up;
        best_feature = static_cast<int>(j);
        best_threshold = threshold;
        best_polarity = 1;
      }
      if (err_down < best_error) {
        best_error = err_down;
        best_feature = static_cast<int>(j);
        best_threshold = threshold;
        best_polarity = -1;
      }
    }
  }
  return std::make_shared<NoisyStumpClassifier>(best_feature, best_threshold, best_polarity, p_flip_);
}

double stump_weighted_error(const NoisyStumpClassifier& stump, const Dataset& data, std::span<const double> weights) {
  require_weights(data, weights);
  double err = 0.0;
  for (std::size_t n = 0; n < data.size(); ++n) {
    if (stump.decide(data.row(n)) != data.label(n)) err += weights[n];
  }
  return err;
}

ConstantProbabilityClassifier::ConstantProbabilityClassifier(double q_plus) : q_plus_(q_plus) {
  if (!(q_plus >= 0.0 && q_plus <= 1.0)) throw std::domain_error("constant classifier: q must be in [0, 1]");
}

int ConstantProbabilityClassifier::sample(std::span<const double>, RandomStream& stream) const {
  return stream.bernoulli(q_plus_) ? 1 : -1;
}

std::optional<double> ConstantProbabilityClassifier::true_q(std::span<const double>) const { return q_plus_; }

nlohmann::json ConstantProbabilityClassifier::to_json() const {
  return {{"type", "constant_probability"}, {"q_plus", q_plus_}};
}

ClassifierPtr CountingLearner::train(const Dataset& data, std::span<const double> weights) {
  ++calls_;
  return inner_.train(data, weights);
}

double SteadyStopwatch::now() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

ScriptedStopwatch::ScriptedStopwatch(std::vector<double> readings) : readings_(std::move(readings)) {
  if (readings_.empty()) throw std::invalid_argument("ScriptedStopwatch: no readings");
  for (std::size_t i = 1; i < readings_.size(); ++i) {
    if (readings_[i] < readings_[i - 1]) throw std::invalid_argument("ScriptedStopwatch: readings must not decrease");
  }
}

double ScriptedStopwatch::now() {
  const double t = readings_[std::min(next_, readings_.size() - 1)];
  ++next_;
  return t;
}

}  // namespace pboost
