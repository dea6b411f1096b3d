#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "pboost/estimation.hpp"
#include "pboost/path_index.hpp"
#include "pboost/ptree.hpp"
#include "pboost/weak_learner.hpp"

namespace pboost {

/// A collected subtree acting as one Bernoulli node: it walks the inner tree
/// and outputs the sign of the inner score, ties (|H| <= 1e-12) giving +1.
class CompositeClassifier final : public ProbClassifier {
 public:
  explicit CompositeClassifier(std::shared_ptr<const TreeModel> inner);

  int sample(std::span<const double> x, RandomStream& stream) const override;
  /// Leaf-enumeration q(+, X); nullopt when some inner node has no closed-form q.
  std::optional<double> true_q(std::span<const double> x) const override;
  nlohmann::json to_json() const override;
  std::shared_ptr<const TreeModel> nested_tree() const override { return inner_; }

 private:
  std::shared_ptr<const TreeModel> inner_;
};

ClassifierPtr collect_leaves(TreeModel subtree);

/// Probability that `composite` outputs +1 at x. Throws std::invalid_argument
/// for a non-composite classifier or an inner node without closed-form q.
double exact_composite_q(const ProbClassifier& composite, std::span<const double> x);

/// Weak learner whose classifiers are collected two-node trees grown with
/// `inner` on the weights passed to train().
class NestedUnitLearner final : public WeakLearner {
 public:
  NestedUnitLearner(WeakLearner& inner, const EstimationConfig& config, std::string unit);
  ClassifierPtr train(const Dataset& data, std::span<const double> weights) override;

 private:
  WeakLearner& inner_;
  EstimationConfig config_;
  std::string unit_;
  std::int64_t built_ = 0;
};

/// Two-node tree of level-(L-1) units (raw classifiers for L = 1), left
/// uncollected. Uses 2^L raw weak classifiers.
TreeModel build_fixed_2_matryoshka(const Dataset& data, WeakLearner& learner, int L, const EstimationConfig& config);

enum class RateBasis { kPerNode, kPerSecond };

struct CollectDecision {
  bool considered = false;  // the history is long enough to evaluate both rates
  bool collect = false;
  double rate_simple = 0.0;
  double rate_matryoshka = 0.0;
};

/// `history[k]` is the subtree's bound after k raw nodes (history[0] = 1) and
/// `seconds[k-1]` the time spent on node k. With n = history.size() - 1 >= 2
/// nodes both rates are taken at T = n - 1: the simple rate is
/// (C(n) - C(n-2)) / 2 and the matryoshka rate is rate_matryoshka(C(n-1), n-1).
/// Per second, the simple rate is divided by the last node's time and the
/// matryoshka rate by the mean time per node. Collect when the matryoshka
/// rate is strictly smaller.
CollectDecision collect_decision(std::span<const double> history, std::span<const double> seconds, RateBasis basis);

struct BuildLogEntry {
  std::int64_t step = 0;
  PathIndex subtree;
  std::string action;  // grow | collect
  double c = 0.0;
  std::int64_t t = 0;
  double rate_simple = 0.0;
  double rate_matryoshka = 0.0;
};

struct GreedyBuild {
  TreeModel tree;
  std::vector<BuildLogEntry> log;
  std::int64_t raw_nodes = 0;
};

/// Greedy growth with raw classifiers. After each node, the subtrees that
/// contain it are scanned from the root down and the first one whose
/// collect_decision says so is collected; at most one collection per step.
/// `stop.max_nodes` counts raw classifiers.
GreedyBuild build_greedy_matryoshka(const Dataset& data, WeakLearner& learner, const GrowthStop& stop,
                                    const EstimationConfig& config, RateBasis basis, Stopwatch& stopwatch);

/// `step,subtree,action,C,T,rate_simple,rate_matryoshka`; rates are empty on grow rows.
std::string build_log_csv(const std::vector<BuildLogEntry>& log);

}  // namespace pboost
