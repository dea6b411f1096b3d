#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pboost/adaboost.hpp"
#include "pboost/dataset.hpp"
#include "pboost/estimation.hpp"
#include "pboost/path_index.hpp"
#include "pboost/weak_learner.hpp"
#include "pboost/weighted_stats.hpp"

namespace pboost {

/// Unnormalized child mass below which a branch is dead.
inline constexpr double kDeadMass = 1e-300;

/// One node of a probabilistic tree. A node with a classifier is inner and
/// has both children; a node without one is a leaf.
///
/// A plain inner node adds alpha_{s+} or -alpha_{s-} to the score when its
/// sampled output selects child s+ or s-. A composite inner node (classifier
/// with a nested tree) walks its inner tree, branches on the sign of the inner
/// score and adds that score; its children carry alpha = 0.
struct TreeNode {
  double alpha = 0.0;    // alpha_s, applied with sign s-dot when s is entered
  double z = 1.0;        // Z_s; 1 at the root
  double product = 1.0;  // prod_{r <= s} Z_r
  bool dead = false;
  std::int64_t order = 0;  // growth step at which the node was trained; 0 for leaves

  ClassifierPtr classifier;
  std::vector<double> q_plus;  // recorded q estimate per training example (plain inner nodes)
  std::int64_t rounds = 0;

  bool is_leaf() const { return classifier == nullptr; }
  bool is_composite() const { return classifier && classifier->nested_tree() != nullptr; }
};

struct ChildStats {
  double alpha = 0.0;
  double z = 0.0;
  bool dead = false;
};

class TreeModel {
 public:
  /// Root-only tree: one leaf, C = 1.
  TreeModel();

  /// Rebuilds a tree from stored nodes; checks prefix closure, binary inner
  /// nodes, leaf/inner consistency and the stored products.
  static TreeModel from_parts(std::map<PathIndex, TreeNode> nodes, std::vector<double> trajectory);

  bool contains(const PathIndex& s) const { return nodes_.count(s) != 0; }
  const TreeNode& node(const PathIndex& s) const;
  const std::map<PathIndex, TreeNode>& nodes() const { return nodes_; }

  std::vector<PathIndex> leaves() const;
  std::size_t inner_count() const;

  /// C after each growth step; front() is C(0) = 1.
  const std::vector<double>& trajectory() const { return trajectory_; }
  double recorded_bound() const { return trajectory_.back(); }

  /// sum over leaves of the stored products.
  double leaf_sum() const;

  /// 1 for a tree of plain nodes, 1 + the deepest inner level otherwise.
  int level() const;

  /// Trains leaf `leaf`: it becomes inner with `classifier` and two new
  /// leaves; appends C + P_leaf (Z_+ + Z_- - 1) to the trajectory.
  void split(const PathIndex& leaf, ClassifierPtr classifier, std::vector<double> q_plus, std::int64_t rounds,
             const ChildStats& plus, const ChildStats& minus);

  /// Copy of the subtree under `root` with paths relative to it.
  TreeModel extract(const PathIndex& root, std::vector<double> trajectory) const;

  /// Replaces everything below `root` by a single inner node holding
  /// `classifier` and two fresh leaves. The trajectory is left unchanged.
  void collapse(const PathIndex& root, ClassifierPtr classifier, const ChildStats& plus, const ChildStats& minus);

 private:
  void set_children(const PathIndex& s, const ChildStats& plus, const ChildStats& minus);

  std::map<PathIndex, TreeNode> nodes_;
  std::vector<double> trajectory_;
};

/// H_l = sum over non-root r <= l of alpha_r * r-dot. Throws
/// std::invalid_argument for unknown paths and paths below a composite node.
double leaf_value(const TreeModel& tree, const PathIndex& l);

struct ChildWeights {
  std::vector<double> plus_weights;  // empty when the branch is dead
  std::vector<double> minus_weights;
  double z_plus = 0.0;
  double z_minus = 0.0;
  bool plus_dead = false;
  bool minus_dead = false;
};

/// D_{sa}(n) proportional to D_s(n) q(a, X_n) exp(-a alpha_{sa} y_n).
ChildWeights children_weights(std::span<const double> weights, std::span<const int> labels,
                              std::span<const double> q_plus, const Alphas& alphas);

/// Splits D_s by arbitrary per-example branch factors g_a(n); Z_a = sum D_s g_a.
ChildWeights split_weights(std::span<const double> weights, std::span<const double> g_plus,
                           std::span<const double> g_minus);

/// Optimal alphas from the W statistics at the node's weights.
Alphas node_alphas(std::span<const double> weights, std::span<const int> labels, std::span<const double> q_plus);

/// Live leaf with the largest product; ties go to the smaller path
/// (shorter first, '+' before '-'). nullopt when every leaf is dead.
std::optional<PathIndex> select_growth_leaf(const TreeModel& tree);

/// Calls visit(leaf, probability, score) for every walk of example n with
/// nonzero probability. kRecorded reads the stored q tables (n indexes the
/// training set), kTrue asks the classifiers for q(+, x).
void enumerate_walks(const TreeModel& tree, std::size_t n, std::span<const double> x, QSource source,
                     const std::function<void(const PathIndex&, double, double)>& visit);

/// sum_n D(n) sum_l p(l, X_n) exp(-y_n H) by full enumeration.
double exact_tree_bound(const TreeModel& tree, const Dataset& data, QSource source = QSource::kRecorded);

/// sum_n D(n) P(y_n H <= 0) by full enumeration; ties are errors.
double exact_tree_misclassification(const TreeModel& tree, const Dataset& data, QSource source = QSource::kRecorded);

/// p(l, X_n) for every leaf (leaves that cannot be reached are listed with 0).
std::map<PathIndex, double> leaf_reach_probabilities(const TreeModel& tree, std::size_t n, std::span<const double> x,
                                                     QSource source);

struct TreePrediction {
  double score = 0.0;
  PathIndex leaf;
};

/// One sampled walk from the root.
TreePrediction predict_tree(const TreeModel& tree, std::span<const double> x, RandomStream& stream);

McResult mc_tree_misclassification(const TreeModel& tree, const Dataset& data, std::int64_t trials,
                                   std::uint64_t seed);

struct GrowthStop {
  std::int64_t max_nodes = 0;          // 0 means no node limit
  std::optional<double> target_bound;  // stop once C <= target
};

/// Incremental greedy growth. Keeps the weight vector of every node.
class TreeGrower {
 public:
  /// Empty `root_weights` means the dataset weights. `unit` prefixes the
  /// random-stream tags of every node.
  TreeGrower(const Dataset& data, WeakLearner& learner, const EstimationConfig& config,
             std::vector<double> root_weights = {}, std::string unit = "tree");

  /// Trains the selected leaf. Returns its path, or nullopt if every leaf is dead.
  std::optional<PathIndex> step();

  /// Replaces the subtree under `root` by `composite`, whose nested tree must
  /// have been built on this node's weights.
  void collect(const PathIndex& root, ClassifierPtr composite);

  const TreeModel& tree() const { return tree_; }
  TreeModel release() { return std::move(tree_); }
  const std::vector<double>& weights_at(const PathIndex& s) const;

 private:
  void split_with(const PathIndex& leaf, ClassifierPtr h);
  ChildWeights composite_split(const PathIndex& s, const TreeModel& inner) const;

  const Dataset& data_;
  WeakLearner& learner_;
  EstimationConfig config_;
  std::string unit_;
  TreeModel tree_;
  std::map<PathIndex, std::vector<double>> weights_;
};

TreeModel grow_tree(const Dataset& data, WeakLearner& learner, const GrowthStop& stop, const EstimationConfig& config,
                    std::vector<double> root_weights = {}, const std::string& unit = "tree");

/// `step,leaf,Z_plus,Z_minus,C`, one row per trained node in growth order.
std::string tree_growth_log_csv(const TreeModel& tree);

}  // namespace pboost
