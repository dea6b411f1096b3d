#include "pboost/matryoshka.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "pboost/bounds.hpp"
#include "pboost/csv.hpp"
#include "pboost/persistence.hpp"

namespace pboost {

CompositeClassifier::CompositeClassifier(std::shared_ptr<const TreeModel> inner) : inner_(std::move(inner)) {
  if (!inner_) throw std::invalid_argument("composite node: null inner tree");
}

int CompositeClassifier::sample(std::span<const double> x, RandomStream& stream) const {
  return predict_tree(*inner_, x, stream).score >= -kScoreTie ? 1 : -1;
}

std::optional<double> CompositeClassifier::true_q(std::span<const double> x) const {
  double q = 0.0;
  try {
    enumerate_walks(*inner_, 0, x, QSource::kTrue, [&](const PathIndex&, double p, double h) {
      if (h >= -kScoreTie) q += p;
    });
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
  return q;
}

nlohmann::json CompositeClassifier::to_json() const { return {{"type", "composite"}, {"tree", tree_to_json(*inner_)}}; }

ClassifierPtr collect_leaves(TreeModel subtree) {
  return std::make_shared<CompositeClassifier>(std::make_shared<const TreeModel>(std::move(subtree)));
}

double exact_composite_q(const ProbClassifier& composite, std::span<const double> x) {
  if (!composite.nested_tree()) throw std::invalid_argument("exact_composite_q: not a composite node");
  auto q = composite.true_q(x);
  if (!q) throw std::invalid_argument("exact_composite_q: inner q is only available by sampling");
  return *q;
}

NestedUnitLearner::NestedUnitLearner(WeakLearner& inner, const EstimationConfig& config, std::string unit)
    : inner_(inner), config_(config), unit_(std::move(unit)) {}

ClassifierPtr NestedUnitLearner::train(const Dataset& data, std::span<const double> weights) {
  GrowthStop stop;
  stop.max_nodes = 2;
  const std::string unit = unit_ + "/" + std::to_string(built_++);
  return collect_leaves(grow_tree(data, inner_, stop, config_, std::vector<double>(weights.begin(), weights.end()), unit));
}

TreeModel build_fixed_2_matryoshka(const Dataset& data, WeakLearner& learner, int L, const EstimationConfig& config) {
  if (L < 1) throw std::invalid_argument("fixed-2 matryoshka: L must be >= 1");
  std::vector<std::unique_ptr<NestedUnitLearner>> levels;
  WeakLearner* current = &learner;
  for (int k = 1; k < L; ++k) {
    levels.push_back(std::make_unique<NestedUnitLearner>(*current, config, "level" + std::to_string(k)));
    current = levels.back().get();
  }
  GrowthStop stop;
  stop.max_nodes = 2;
  return grow_tree(data, *current, stop, config);
}

CollectDecision collect_decision(std::span<const double> history, std::span<const double> seconds, RateBasis basis) {
  CollectDecision d;
  if (history.size() < 3) return d;
  const std::size_t n = history.size() - 1;
  const double c = history[n - 1];
  // Rounding can push a coin-flip subtree a few ulps above 1; such histories are skipped.
  auto in_range = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!(c > 0.0) || !in_range(c) || !in_range(history[n - 2]) || !in_range(history[n])) return d;
  d.considered = true;
  d.rate_simple = bounds::rate_simple(history[n - 2], history[n]);
  d.rate_matryoshka = bounds::rate_matryoshka(c, static_cast<double>(n - 1));
  if (basis == RateBasis::kPerSecond) {
    if (seconds.size() != n) throw std::invalid_argument("collect_decision: need one duration per node");
    const double tiny = std::numeric_limits<double>::min();
    const double last = seconds.back() > 0.0 ? seconds.back() : tiny;
    const double mean = std::accumulate(seconds.begin(), seconds.end(), 0.0) / static_cast<double>(n);
    d.rate_simple /= last;
    d.rate_matryoshka /= mean > 0.0 ? mean : tiny;
  }
  d.collect = d.rate_matryoshka < d.rate_simple;
  return d;
}

GreedyBuild build_greedy_matryoshka(const Dataset& data, WeakLearner& learner, const GrowthStop& stop,
                                    const EstimationConfig& config, RateBasis basis, Stopwatch& stopwatch) {
  if (stop.max_nodes < 0 || (stop.max_nodes == 0 && !stop.target_bound)) {
    throw std::invalid_argument("greedy matryoshka: needs a node limit or a target bound");
  }
  TreeGrower grower(data, learner, config);
  std::map<PathIndex, std::vector<double>> history{{PathIndex(), {1.0}}};
  std::map<PathIndex, std::vector<double>> seconds{{PathIndex(), {}}};
  GreedyBuild out;

  auto relative_bound = [&](const PathIndex& a) {
    const TreeModel& t = grower.tree();
    double c = 0.0;
    for (const auto& [s, node] : t.nodes()) {
      if (node.is_leaf() && a.is_prefix_of(s)) c += node.product;
    }
    return c / t.node(a).product;
  };
  auto drop_below = [](auto& table, const PathIndex& root) {
    for (auto it = table.begin(); it != table.end();) {
      if (it->first != root && root.is_prefix_of(it->first)) {
        it = table.erase(it);
      } else {
        ++it;
      }
    }
  };

  for (std::int64_t step = 1;; ++step) {
    if (stop.max_nodes > 0 && out.raw_nodes >= stop.max_nodes) break;
    if (stop.target_bound && grower.tree().recorded_bound() <= *stop.target_bound) break;
    const double t0 = stopwatch.now();
    auto leaf = grower.step();
    const double t1 = stopwatch.now();
    if (!leaf) break;
    ++out.raw_nodes;

    std::vector<PathIndex> scan;  // root first
    for (PathIndex a = *leaf;; a = a.parent()) {
      scan.insert(scan.begin(), a);
      if (a.is_root()) break;
    }
    for (const auto& a : scan) {
      history[a].push_back(relative_bound(a));
      seconds[a].push_back(t1 - t0);
    }
    for (Sign s : {Sign::kPlus, Sign::kMinus}) {
      history[leaf->child(s)] = {1.0};
      seconds[leaf->child(s)] = {};
    }
    out.log.push_back({step, *leaf, "grow", grower.tree().recorded_bound(), out.raw_nodes, 0.0, 0.0});

    for (const auto& a : scan) {
      const CollectDecision d = collect_decision(history[a], seconds[a], basis);
      if (!d.collect) continue;
      grower.collect(a, collect_leaves(grower.tree().extract(a, history[a])));
      drop_below(history, a);
      drop_below(seconds, a);
      for (Sign s : {Sign::kPlus, Sign::kMinus}) {
        history[a.child(s)] = {1.0};
        seconds[a.child(s)] = {};
      }
      out.log.push_back({step, a, "collect", history[a].back(), static_cast<std::int64_t>(history[a].size()) - 1,
                         d.rate_simple, d.rate_matryoshka});
      break;
    }
  }
  out.tree = grower.release();
  return out;
}

std::string build_log_csv(const std::vector<BuildLogEntry>& log) {
  std::ostringstream out;
  out << "step,subtree,action,C,T,rate_simple,rate_matryoshka\n";
  for (const auto& e : log) {
    out << e.step << ',' << e.subtree.to_string() << ',' << e.action << ',' << csv_number(e.c) << ',' << e.t << ',';
    if (e.action == "collect") out << csv_number(e.rate_simple) << ',' << csv_number(e.rate_matryoshka);
    else out << ',';
    out << '\n';
  }
  return out.str();
}

}  // namespace pboost
