#include "pboost/ptree.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pboost/csv.hpp"

namespace pboost {
namespace {

bool branch_plus(double score) { return score >= -kScoreTie; }

void walk(const TreeModel& tree, const PathIndex& s, std::size_t n, std::span<const double> x, QSource source,
          double prob, double score, const std::function<void(const PathIndex&, double, double)>& visit) {
  const TreeNode& node = tree.node(s);
  if (node.is_leaf()) {
    visit(s, prob, score);
    return;
  }
  if (auto inner = node.classifier->nested_tree()) {
    enumerate_walks(*inner, n, x, source, [&](const PathIndex&, double p, double h) {
      if (p == 0.0) return;
      walk(tree, s.child(branch_plus(h) ? Sign::kPlus : Sign::kMinus), n, x, source, prob * p, score + h, visit);
    });
    return;
  }
  double q = 0.0;
  if (source == QSource::kRecorded) {
    if (n >= node.q_plus.size()) throw std::invalid_argument("no recorded q for example " + std::to_string(n));
    q = node.q_plus[n];
  } else {
    auto tq = node.classifier->true_q(x);
    if (!tq) throw std::invalid_argument("node '" + s.to_string() + "' has no closed-form q");
    q = *tq;
  }
  const PathIndex plus = s.child(Sign::kPlus);
  const PathIndex minus = s.child(Sign::kMinus);
  if (q != 0.0) walk(tree, plus, n, x, source, prob * q, score + tree.node(plus).alpha, visit);
  if (q != 1.0) walk(tree, minus, n, x, source, prob * (1.0 - q), score - tree.node(minus).alpha, visit);
}

std::string node_unit(const std::string& unit, const PathIndex& s) { return unit + "/" + s.to_string(); }

}  // namespace

TreeModel::TreeModel() : trajectory_{1.0} { nodes_.emplace(PathIndex(), TreeNode()); }

const TreeNode& TreeModel::node(const PathIndex& s) const {
  auto it = nodes_.find(s);
  if (it == nodes_.end()) throw std::invalid_argument("tree has no node '" + s.to_string() + "'");
  return it->second;
}

std::vector<PathIndex> TreeModel::leaves() const {
  std::vector<PathIndex> out;
  for (const auto& [s, node] : nodes_) {
    if (node.is_leaf()) out.push_back(s);
  }
  return out;
}

std::size_t TreeModel::inner_count() const { return nodes_.size() / 2; }

double TreeModel::leaf_sum() const {
  double c = 0.0;
  for (const auto& [s, node] : nodes_) {
    if (node.is_leaf()) c += node.product;
  }
  return c;
}

int TreeModel::level() const {
  int inner_level = 0;
  for (const auto& [s, node] : nodes_) {
    if (node.is_composite()) inner_level = std::max(inner_level, node.classifier->nested_tree()->level());
  }
  return inner_level + 1;
}

void TreeModel::set_children(const PathIndex& s, const ChildStats& plus, const ChildStats& minus) {
  const double parent_product = nodes_.at(s).product;
  for (const auto& [sign, stats] : {std::pair{Sign::kPlus, plus}, std::pair{Sign::kMinus, minus}}) {
    TreeNode child;
    child.alpha = stats.alpha;
    child.z = stats.z;
    child.product = parent_product * stats.z;
    child.dead = stats.dead;
    nodes_[s.child(sign)] = std::move(child);
  }
}

void TreeModel::split(const PathIndex& leaf, ClassifierPtr classifier, std::vector<double> q_plus,
                      std::int64_t rounds, const ChildStats& plus, const ChildStats& minus) {
  auto it = nodes_.find(leaf);
  if (it == nodes_.end() || !it->second.is_leaf()) {
    throw std::invalid_argument("split: '" + leaf.to_string() + "' is not a leaf");
  }
  if (!classifier) throw std::invalid_argument("split: null classifier");
  TreeNode& node = it->second;
  node.classifier = std::move(classifier);
  node.q_plus = std::move(q_plus);
  node.rounds = rounds;
  node.order = static_cast<std::int64_t>(trajectory_.size());
  const double product = node.product;
  set_children(leaf, plus, minus);
  trajectory_.push_back(trajectory_.back() + product * (plus.z + minus.z - 1.0));
}

TreeModel TreeModel::from_parts(std::map<PathIndex, TreeNode> nodes, std::vector<double> trajectory) {
  if (trajectory.empty()) throw std::invalid_argument("tree: empty trajectory");
  if (!nodes.count(PathIndex())) throw std::invalid_argument("tree: missing root");
  for (const auto& [s, node] : nodes) {
    if (!s.is_root()) {
      auto parent = nodes.find(s.parent());
      if (parent == nodes.end() || parent->second.is_leaf()) {
        throw std::invalid_argument("tree: node '" + s.to_string() + "' has no inner parent");
      }
      if (node.product != parent->second.product * node.z) {
        throw std::invalid_argument("tree: stored product of '" + s.to_string() + "' is inconsistent");
      }
    }
    if (!node.is_leaf() && (!nodes.count(s.child(Sign::kPlus)) || !nodes.count(s.child(Sign::kMinus)))) {
      throw std::invalid_argument("tree: inner node '" + s.to_string() + "' lacks a child");
    }
    if (!std::isfinite(node.alpha) || !std::isfinite(node.z)) {
      throw std::invalid_argument("tree: non-finite statistic at '" + s.to_string() + "'");
    }
  }
  TreeModel t;
  t.nodes_ = std::move(nodes);
  t.trajectory_ = std::move(trajectory);
  return t;
}

TreeModel TreeModel::extract(const PathIndex& root, std::vector<double> trajectory) const {
  if (!contains(root)) throw std::invalid_argument("extract: no node '" + root.to_string() + "'");
  if (trajectory.empty()) trajectory.push_back(1.0);
  std::map<PathIndex, TreeNode> nodes;
  for (const auto& [s, node] : nodes_) {
    if (!root.is_prefix_of(s)) continue;
    TreeNode copy = node;
    if (s == root) {
      copy.alpha = 0.0;
      copy.z = 1.0;
      copy.dead = false;
    }
    nodes.emplace(s.relative_to(root), std::move(copy));
  }
  // Products restart at the new root; map order visits parents first.
  for (auto& [s, node] : nodes) node.product = s.is_root() ? 1.0 : nodes.at(s.parent()).product * node.z;
  return from_parts(std::move(nodes), std::move(trajectory));
}

void TreeModel::collapse(const PathIndex& root, ClassifierPtr classifier, const ChildStats& plus,
                         const ChildStats& minus) {
  if (!contains(root)) throw std::invalid_argument("collapse: no node '" + root.to_string() + "'");
  for (auto it = nodes_.begin(); it != nodes_.end();) {
    if (it->first != root && root.is_prefix_of(it->first)) {
      it = nodes_.erase(it);
    } else {
      ++it;
    }
  }
  TreeNode& node = nodes_.at(root);
  node.classifier = std::move(classifier);
  node.q_plus.clear();
  node.rounds = 0;
  set_children(root, plus, minus);
}

double leaf_value(const TreeModel& tree, const PathIndex& l) {
  tree.node(l);
  double h = 0.0;
  PathIndex s = l;
  while (!s.is_root()) {
    const PathIndex parent = s.parent();
    if (tree.node(parent).is_composite()) {
      throw std::invalid_argument("leaf value of '" + l.to_string() + "' depends on a nested walk");
    }
    h += tree.node(s).alpha * to_int(s.last());
    s = parent;
  }
  return h;
}

ChildWeights split_weights(std::span<const double> weights, std::span<const double> g_plus,
                           std::span<const double> g_minus) {
  if (g_plus.size() != weights.size() || g_minus.size() != weights.size()) {
    throw std::invalid_argument("split_weights: size mismatch");
  }
  std::vector<double> raw_plus(weights.size());
  std::vector<double> raw_minus(weights.size());
  ChildWeights out;
  for (std::size_t n = 0; n < weights.size(); ++n) {
    raw_plus[n] = weights[n] * g_plus[n];
    raw_minus[n] = weights[n] * g_minus[n];
    out.z_plus += raw_plus[n];
    out.z_minus += raw_minus[n];
  }
  out.plus_dead = !(out.z_plus >= kDeadMass);
  out.minus_dead = !(out.z_minus >= kDeadMass);
  if (!out.plus_dead) out.plus_weights = normalize_weights(raw_plus);
  if (!out.minus_dead) out.minus_weights = normalize_weights(raw_minus);
  return out;
}

ChildWeights children_weights(std::span<const double> weights, std::span<const int> labels,
                              std::span<const double> q_plus, const Alphas& alphas) {
  if (labels.size() != weights.size() || q_plus.size() != weights.size()) {
    throw std::invalid_argument("children_weights: size mismatch");
  }
  std::vector<double> g_plus(weights.size());
  std::vector<double> g_minus(weights.size());
  for (std::size_t n = 0; n < weights.size(); ++n) {
    const double y = labels[n];
    g_plus[n] = q_plus[n] * std::exp(-alphas.plus * y);
    g_minus[n] = (1.0 - q_plus[n]) * std::exp(alphas.minus * y);
  }
  return split_weights(weights, g_plus, g_minus);
}

Alphas node_alphas(std::span<const double> weights, std::span<const int> labels, std::span<const double> q_plus) {
  return optimal_alphas(w_statistics(weights, labels, q_plus));
}

std::optional<PathIndex> select_growth_leaf(const TreeModel& tree) {
  std::optional<PathIndex> best;
  double best_product = -1.0;
  for (const auto& [s, node] : tree.nodes()) {
    if (!node.is_leaf() || node.dead) continue;
    if (node.product > best_product) {
      best_product = node.product;
      best = s;
    }
  }
  return best;
}

void enumerate_walks(const TreeModel& tree, std::size_t n, std::span<const double> x, QSource source,
                     const std::function<void(const PathIndex&, double, double)>& visit) {
  walk(tree, PathIndex(), n, x, source, 1.0, 0.0, visit);
}

double exact_tree_bound(const TreeModel& tree, const Dataset& data, QSource source) {
  double total = 0.0;
  for (std::size_t n = 0; n < data.size(); ++n) {
    const double y = data.label(n);
    double e = 0.0;
    enumerate_walks(tree, n, data.row(n), source, [&](const PathIndex&, double p, double h) { e += p * std::exp(-y * h); });
    total += data.weights()[n] * e;
  }
  return total;
}

double exact_tree_misclassification(const TreeModel& tree, const Dataset& data, QSource source) {
  double total = 0.0;
  for (std::size_t n = 0; n < data.size(); ++n) {
    const double y = data.label(n);
    double e = 0.0;
    enumerate_walks(tree, n, data.row(n), source, [&](const PathIndex&, double p, double h) {
      if (std::abs(h) <= kScoreTie || y * h < 0.0) e += p;
    });
    total += data.weights()[n] * e;
  }
  return total;
}

std::map<PathIndex, double> leaf_reach_probabilities(const TreeModel& tree, std::size_t n, std::span<const double> x,
                                                     QSource source) {
  std::map<PathIndex, double> out;
  for (const auto& l : tree.leaves()) out[l] = 0.0;
  enumerate_walks(tree, n, x, source, [&](const PathIndex& l, double p, double) { out[l] += p; });
  return out;
}

TreePrediction predict_tree(const TreeModel& tree, std::span<const double> x, RandomStream& stream) {
  TreePrediction out;
  for (;;) {
    const TreeNode& node = tree.node(out.leaf);
    if (node.is_leaf()) return out;
    if (auto inner = node.classifier->nested_tree()) {
      const double h = predict_tree(*inner, x, stream).score;
      out.score += h;
      out.leaf = out.leaf.child(branch_plus(h) ? Sign::kPlus : Sign::kMinus);
    } else {
      const Sign s = node.classifier->sample(x, stream) > 0 ? Sign::kPlus : Sign::kMinus;
      out.leaf = out.leaf.child(s);
      out.score += tree.node(out.leaf).alpha * to_int(s);
    }
  }
}

McResult mc_tree_misclassification(const TreeModel& tree, const Dataset& data, std::int64_t trials,
                                   std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("mc_tree_misclassification: trials must be >= 1");
  const std::uint64_t tag = purpose_tag("predict/tree");
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::int64_t k = 0; k < trials; ++k) {
    double loss = 0.0;
    for (std::size_t n = 0; n < data.size(); ++n) {
      RandomStream stream(seed, tag, n, static_cast<std::uint64_t>(k));
      const double h = predict_tree(tree, data.row(n), stream).score;
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

TreeGrower::TreeGrower(const Dataset& data, WeakLearner& learner, const EstimationConfig& config,
                       std::vector<double> root_weights, std::string unit)
    : data_(data), learner_(learner), config_(config), unit_(std::move(unit)) {
  if (config.strategy == Strategy::kB && !config.exact_q) {
    throw std::invalid_argument("tree growth supports Strategy A or exact q only");
  }
  if (root_weights.empty()) root_weights = data.weights();
  if (root_weights.size() != data.size()) throw std::invalid_argument("tree: root weight count mismatch");
  weights_[PathIndex()] = std::move(root_weights);
}

const std::vector<double>& TreeGrower::weights_at(const PathIndex& s) const {
  auto it = weights_.find(s);
  if (it == weights_.end()) throw std::invalid_argument("no weights kept for node '" + s.to_string() + "'");
  return it->second;
}

ChildWeights TreeGrower::composite_split(const PathIndex& s, const TreeModel& inner) const {
  std::vector<double> g_plus(data_.size(), 0.0);
  std::vector<double> g_minus(data_.size(), 0.0);
  for (std::size_t n = 0; n < data_.size(); ++n) {
    const double y = data_.label(n);
    enumerate_walks(inner, n, data_.row(n), QSource::kRecorded, [&](const PathIndex&, double p, double h) {
      (branch_plus(h) ? g_plus : g_minus)[n] += p * std::exp(-y * h);
    });
  }
  return split_weights(weights_at(s), g_plus, g_minus);
}

void TreeGrower::split_with(const PathIndex& leaf, ClassifierPtr h) {
  const std::vector<double>& w = weights_at(leaf);
  ChildWeights cw;
  ChildStats plus;
  ChildStats minus;
  std::vector<double> q_plus;
  std::int64_t rounds = 0;
  if (auto inner = h->nested_tree()) {
    cw = composite_split(leaf, *inner);
  } else {
    QEstimate est = estimate_q(*h, data_, w, config_, node_unit(unit_, leaf));
    const Alphas a = node_alphas(w, data_.labels(), est.q_plus);
    cw = children_weights(w, data_.labels(), est.q_plus, a);
    plus.alpha = a.plus;
    minus.alpha = a.minus;
    q_plus = std::move(est.q_plus);
    rounds = est.rounds;
  }
  plus.z = cw.z_plus;
  plus.dead = cw.plus_dead;
  minus.z = cw.z_minus;
  minus.dead = cw.minus_dead;
  tree_.split(leaf, std::move(h), std::move(q_plus), rounds, plus, minus);
  weights_[leaf.child(Sign::kPlus)] = std::move(cw.plus_weights);
  weights_[leaf.child(Sign::kMinus)] = std::move(cw.minus_weights);
}

std::optional<PathIndex> TreeGrower::step() {
  auto leaf = select_growth_leaf(tree_);
  if (!leaf) return std::nullopt;
  ClassifierPtr h;
  try {
    h = learner_.train(data_, weights_at(*leaf));
  } catch (const std::exception& e) {
    throw std::runtime_error("training node '" + leaf->to_string() + "': " + e.what());
  }
  split_with(*leaf, std::move(h));
  return leaf;
}

void TreeGrower::collect(const PathIndex& root, ClassifierPtr composite) {
  auto inner = composite ? composite->nested_tree() : nullptr;
  if (!inner) throw std::invalid_argument("collect: classifier has no nested tree");
  ChildWeights cw = composite_split(root, *inner);
  tree_.collapse(root, std::move(composite), ChildStats{0.0, cw.z_plus, cw.plus_dead},
                 ChildStats{0.0, cw.z_minus, cw.minus_dead});
  for (auto it = weights_.begin(); it != weights_.end();) {
    if (it->first != root && root.is_prefix_of(it->first)) {
      it = weights_.erase(it);
    } else {
      ++it;
    }
  }
  weights_[root.child(Sign::kPlus)] = std::move(cw.plus_weights);
  weights_[root.child(Sign::kMinus)] = std::move(cw.minus_weights);
}

TreeModel grow_tree(const Dataset& data, WeakLearner& learner, const GrowthStop& stop, const EstimationConfig& config,
                    std::vector<double> root_weights, const std::string& unit) {
  if (stop.max_nodes < 0 || (stop.max_nodes == 0 && !stop.target_bound)) {
    throw std::invalid_argument("grow_tree: needs a node limit or a target bound");
  }
  TreeGrower grower(data, learner, config, std::move(root_weights), unit);
  while (true) {
    const TreeModel& t = grower.tree();
    if (stop.max_nodes > 0 && static_cast<std::int64_t>(t.inner_count()) >= stop.max_nodes) break;
    if (stop.target_bound && t.recorded_bound() <= *stop.target_bound) break;
    if (!grower.step()) break;
  }
  return grower.release();
}

std::string tree_growth_log_csv(const TreeModel& tree) {
  std::vector<std::pair<std::int64_t, PathIndex>> inner;
  for (const auto& [s, node] : tree.nodes()) {
    if (!node.is_leaf()) inner.emplace_back(node.order, s);
  }
  std::sort(inner.begin(), inner.end());
  std::ostringstream out;
  out << "step,leaf,Z_plus,Z_minus,C\n";
  for (const auto& [order, s] : inner) {
    const auto idx = static_cast<std::size_t>(order);
    const double c = idx < tree.trajectory().size() ? tree.trajectory()[idx] : tree.recorded_bound();
    out << order << ',' << s.to_string() << ',' << csv_number(tree.node(s.child(Sign::kPlus)).z) << ','
        << csv_number(tree.node(s.child(Sign::kMinus)).z) << ',' << csv_number(c) << '\n';
  }
  return out.str();
}

}  // namespace pboost
