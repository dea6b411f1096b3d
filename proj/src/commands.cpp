#include "pboost/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <memory>
#include <ostream>
#include <stdexcept>

#include "pboost/adaboost.hpp"
#include "pboost/dataset.hpp"
#include "pboost/figures.hpp"
#include "pboost/matryoshka.hpp"
#include "pboost/persistence.hpp"
#include "pboost/ptree.hpp"

namespace pboost::cli {
namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

Dataset load_or_make(const std::string& path, bool weight_column, std::int64_t n, std::int64_t dimension,
                     std::uint64_t seed) {
  if (!path.empty()) return load_csv(path, weight_column);
  return make_synthetic_dataset(static_cast<std::size_t>(n), static_cast<std::size_t>(dimension), seed);
}

EstimationConfig estimation_config(const TrainOptions& o) {
  EstimationConfig c;
  c.estimator = o.estimator == "ml" ? Estimator::kMl : Estimator::kMap;
  c.strategy = o.strategy == "B" ? Strategy::kB : Strategy::kA;
  c.exact_q = o.exact_q;
  c.r_min = o.r_min;
  c.r_max = o.r_max;
  c.seed = o.seed;
  return c;
}

void print_mc(std::ostream& report, const char* label, const McResult& mc) {
  report << label << ": " << mc.mean << " +/- " << mc.std_error << " (" << mc.trials << " trials)\n";
}

McResult model_mc(const ModelRecord& record, const Dataset& data, std::int64_t trials, std::uint64_t seed) {
  if (record.adaboost) return mc_misclassification(*record.adaboost, data, trials, seed);
  return mc_tree_misclassification(*record.tree, data, trials, seed);
}

double model_recorded_bound(const ModelRecord& record) {
  return record.adaboost ? record.adaboost->recorded_bound() : record.tree->recorded_bound();
}

}  // namespace

void validate(const TrainOptions& o) {
  auto one_of = [](const std::string& v, std::initializer_list<const char*> allowed, const char* flag) {
    for (const char* a : allowed) {
      if (v == a) return;
    }
    throw std::invalid_argument(std::string("invalid value '") + v + "' for " + flag);
  };
  one_of(o.algo, {"adaboost", "ptree", "matryoshka"}, "--algo");
  one_of(o.oracle, {"stump", "constant-edge"}, "--oracle");
  one_of(o.mode, {"fixed2", "greedy"}, "--mode");
  one_of(o.rate_basis, {"node", "second"}, "--rate-basis");
  one_of(o.estimator, {"map", "ml"}, "--estimator");
  one_of(o.strategy, {"A", "B"}, "--strategy");
  if (!(o.epsilon > 0.0 && o.epsilon <= 0.5)) throw std::invalid_argument("--epsilon must be in (0, 0.5]");
  if (!(o.p_flip >= 0.0 && o.p_flip <= 1.0)) throw std::invalid_argument("--p-flip must be in [0, 1]");
  if (o.T < 1) throw std::invalid_argument("--T must be >= 1");
  if (o.L < 1 || o.L > 20) throw std::invalid_argument("--L must be in [1, 20]");
  if (o.r_min < 1 || o.r_max < 1) throw std::invalid_argument("--r-min and --r-max must be >= 1");
  if (o.n < 1 || o.dimension < 1) throw std::invalid_argument("--n and --dim must be >= 1");
  if (o.trials < 1) throw std::invalid_argument("--trials must be >= 1");
  if (o.strategy == "B" && o.algo != "adaboost" && !o.exact_q) {
    throw std::invalid_argument("--strategy B is only available for --algo adaboost");
  }
}

void cmd_bounds_figure(const std::string& name, const std::string& out, std::ostream& report) {
  const std::string csv = figures::figure_csv(name);
  if (out.empty()) {
    report << csv;
  } else {
    write_text(out, csv);
    report << "wrote " << name << " to " << out << '\n';
  }
}

void cmd_train(const TrainOptions& o, std::ostream& report) {
  validate(o);
  const Dataset data = load_or_make(o.data, o.weight_column, o.n, o.dimension, o.seed);
  if (!o.save_data.empty()) save_csv(data, o.save_data);

  std::unique_ptr<WeakLearner> raw;
  if (o.oracle == "stump") {
    raw = std::make_unique<NoisyStumpLearner>(o.p_flip);
  } else {
    raw = std::make_unique<ConstantEdgeOracle>(o.epsilon);
  }
  CountingLearner learner(*raw);
  const EstimationConfig config = estimation_config(o);

  ModelRecord record;
  record.kind = o.algo;
  std::string log;
  if (o.algo == "adaboost") {
    record.adaboost = train_adaboost(data, learner, static_cast<int>(o.T), config);
    log = adaboost_z_log_csv(*record.adaboost);
  } else if (o.algo == "ptree") {
    GrowthStop stop;
    stop.max_nodes = o.T;
    record.tree = grow_tree(data, learner, stop, config);
    log = tree_growth_log_csv(*record.tree);
  } else if (o.mode == "fixed2") {
    record.tree = build_fixed_2_matryoshka(data, learner, o.L, config);
    log = tree_growth_log_csv(*record.tree);
  } else {
    GrowthStop stop;
    stop.max_nodes = o.T;
    SteadyStopwatch clock;
    GreedyBuild build = build_greedy_matryoshka(data, learner, stop, config,
                                                o.rate_basis == "second" ? RateBasis::kPerSecond : RateBasis::kPerNode,
                                                clock);
    record.tree = std::move(build.tree);
    log = build_log_csv(build.log);
  }

  record.metadata = {{"seed", o.seed},
                     {"dataset_fingerprint", hex64(data.fingerprint())},
                     {"dataset_size", data.size()},
                     {"dimension", data.dimension()},
                     {"weak_learner_calls", learner.calls()},
                     {"parameters",
                      {{"algo", o.algo},
                       {"oracle", o.oracle},
                       {"epsilon", o.epsilon},
                       {"p_flip", o.p_flip},
                       {"T", o.T},
                       {"L", o.L},
                       {"mode", o.mode},
                       {"rate_basis", o.rate_basis},
                       {"estimator", o.estimator},
                       {"strategy", o.strategy},
                       {"exact_q", o.exact_q},
                       {"r_min", o.r_min},
                       {"r_max", o.r_max},
                       {"data", o.data},
                       {"weight_column", o.weight_column},
                       {"n", o.n},
                       {"dim", o.dimension}}}};

  if (!o.out.empty()) save_model(record, o.out);
  if (!o.log.empty()) write_text(o.log, log);

  report << std::setprecision(12);
  report << "recorded bound: " << model_recorded_bound(record) << '\n';
  print_mc(report, "mc training error", model_mc(record, data, o.trials, o.seed));
  report << "weak-learner calls: " << learner.calls() << '\n';
  if (!o.out.empty()) report << "model: " << o.out << '\n';
}

void cmd_eval(const EvalOptions& o, std::ostream& report) {
  if (o.trials < 1) throw std::invalid_argument("--trials must be >= 1");
  const ModelRecord record = load_model(o.model);
  const auto& meta = record.metadata;
  const auto& params = meta.at("parameters");
  const std::uint64_t seed = o.seed.value_or(meta.at("seed").get<std::uint64_t>());

  Dataset data = o.data.empty() ? load_or_make(params.at("data").get<std::string>(),
                                               params.at("weight_column").get<bool>(), params.at("n").get<std::int64_t>(),
                                               params.at("dim").get<std::int64_t>(), meta.at("seed").get<std::uint64_t>())
                                : load_csv(o.data, o.weight_column);
  const auto dimension = meta.at("dimension").get<std::size_t>();
  if (data.dimension() != dimension) {
    throw std::invalid_argument("dataset has " + std::to_string(data.dimension()) + " features, model expects " +
                                std::to_string(dimension));
  }
  const bool training_set = hex64(data.fingerprint()) == meta.at("dataset_fingerprint").get<std::string>();

  report << std::setprecision(12);
  print_mc(report, "mc loss", model_mc(record, data, o.trials, seed));

  const QSource source = training_set ? QSource::kRecorded : QSource::kTrue;
  try {
    double exact = 0.0;
    if (record.adaboost) {
      exact = exact_expected_bound(*record.adaboost, data, source);
    } else {
      exact = exact_tree_bound(*record.tree, data, source);
    }
    report << "exact bound: " << exact << (training_set ? " (recorded q)" : " (closed-form q)") << '\n';
  } catch (const std::invalid_argument& e) {
    report << "exact bound: unavailable (" << e.what() << ")\n";
  }
  report << "recorded bound: " << model_recorded_bound(record) << '\n';
}

}  // namespace pboost::cli
