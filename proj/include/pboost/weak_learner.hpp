#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "json.hpp"
#include "pboost/dataset.hpp"
#include "pboost/random_stream.hpp"

namespace pboost {

class TreeModel;

/// A trained probabilistic classifier: for fixed X its output is a Bernoulli
/// draw on {-1, +1} with parameter q(+, X).
class ProbClassifier {
 public:
  virtual ~ProbClassifier() = default;

  /// One oracle call. Consumes draws from `stream` only.
  virtual int sample(std::span<const double> x, RandomStream& stream) const = 0;

  /// q(+, X) when it is known in closed form, otherwise nullopt.
  virtual std::optional<double> true_q(std::span<const double> x) const = 0;

  virtual nlohmann::json to_json() const = 0;

  /// Inner tree of a collected (composite) node; null for plain classifiers.
  virtual std::shared_ptr<const TreeModel> nested_tree() const { return nullptr; }
};

using ClassifierPtr = std::shared_ptr<const ProbClassifier>;

class WeakLearner {
 public:
  virtual ~WeakLearner() = default;
  virtual ClassifierPtr train(const Dataset& data, std::span<const double> weights) = 0;
};

/// Outputs the memorized label of X with probability 1/2 + epsilon, whatever
/// the training weights. Unseen inputs get q = 1/2.
class ConstantEdgeClassifier final : public ProbClassifier {
 public:
  ConstantEdgeClassifier(double epsilon, std::map<std::vector<double>, int> memory);

  int sample(std::span<const double> x, RandomStream& stream) const override;
  std::optional<double> true_q(std::span<const double> x) const override;
  nlohmann::json to_json() const override;

  double epsilon() const { return epsilon_; }

 private:
  double epsilon_;
  std::map<std::vector<double>, int> memory_;
};

class ConstantEdgeOracle final : public WeakLearner {
 public:
  explicit ConstantEdgeOracle(double epsilon);
  ClassifierPtr train(const Dataset& data, std::span<const double> weights) override;

 private:
  double epsilon_;
  std::uint64_t cached_fingerprint_ = 0;
  ClassifierPtr cached_;
};

/// Axis-aligned stump whose decision is flipped with probability p_flip.
///
/// feature < 0 is the constant stump that always decides `polarity`.
/// Otherwise the decision is `polarity` when x[feature] > threshold and
/// -polarity below it.
class NoisyStumpClassifier final : public ProbClassifier {
 public:
  NoisyStumpClassifier(int feature, double threshold, int polarity, double p_flip);

  int decide(std::span<const double> x) const;

  int sample(std::span<const double> x, RandomStream& stream) const override;
  std::optional<double> true_q(std::span<const double> x) const override;
  nlohmann::json to_json() const override;

  int feature() const { return feature_; }
  double threshold() const { return threshold_; }
  int polarity() const { return polarity_; }
  double p_flip() const { return p_flip_; }

 private:
  int feature_;
  double threshold_;
  int polarity_;
  double p_flip_;
};

/// Exhaustive stump search over midpoints of sorted distinct feature values,
/// both polarities, plus the constant stumps.
class NoisyStumpLearner final : public WeakLearner {
 public:
  explicit NoisyStumpLearner(double p_flip = 0.1);
  ClassifierPtr train(const Dataset& data, std::span<const double> weights) override;

 private:
  double p_flip_;
};

/// Weighted 0/1 error of the noiseless decision of `stump`.
double stump_weighted_error(const NoisyStumpClassifier& stump, const Dataset& data,
                            std::span<const double> weights);

/// q(+, X) = q for every X.
class ConstantProbabilityClassifier final : public ProbClassifier {
 public:
  explicit ConstantProbabilityClassifier(double q_plus);

  int sample(std::span<const double> x, RandomStream& stream) const override;
  std::optional<double> true_q(std::span<const double> x) const override;
  nlohmann::json to_json() const override;

 private:
  double q_plus_;
};

/// Counts calls to train() on the wrapped learner.
class CountingLearner final : public WeakLearner {
 public:
  explicit CountingLearner(WeakLearner& inner) : inner_(inner) {}
  ClassifierPtr train(const Dataset& data, std::span<const double> weights) override;
  std::int64_t calls() const { return calls_; }

 private:
  WeakLearner& inner_;
  std::int64_t calls_ = 0;
};

class Stopwatch {
 public:
  virtual ~Stopwatch() = default;
  /// Seconds; nondecreasing.
  virtual double now() = 0;
};

class SteadyStopwatch final : public Stopwatch {
 public:
  double now() override;
};

/// Returns the scripted readings in order, then repeats the last one.
class ScriptedStopwatch final : public Stopwatch {
 public:
  explicit ScriptedStopwatch(std::vector<double> readings);
  double now() override;

 private:
  std::vector<double> readings_;
  std::size_t next_ = 0;
};

}  // namespace pboost
