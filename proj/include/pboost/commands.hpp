#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace pboost::cli {

struct TrainOptions {
  std::string algo = "adaboost";      // adaboost | ptree | matryoshka
  std::string oracle = "stump";       // stump | constant-edge
  double epsilon = 0.2;
  double p_flip = 0.1;
  std::int64_t T = 8;                 // rounds, tree nodes, or greedy raw-node budget
  int L = 2;                          // fixed2 levels
  std::string mode = "fixed2";        // fixed2 | greedy
  std::string rate_basis = "node";    // node | second
  std::string estimator = "map";      // map | ml
  std::string strategy = "A";         // A | B
  bool exact_q = false;
  std::int64_t r_min = 2;
  std::int64_t r_max = 10000;
  std::uint64_t seed = 1;
  std::string data;                   // CSV path; synthetic data when empty
  bool weight_column = false;
  std::int64_t n = 64;                // synthetic size
  std::int64_t dimension = 2;         // synthetic dimension
  std::string save_data;
  std::string out;                    // model path
  std::string log;                    // training log CSV path
  std::int64_t trials = 1000;
};

struct EvalOptions {
  std::string model;
  std::string data;
  bool weight_column = false;
  std::int64_t trials = 1000;
  std::optional<std::uint64_t> seed;
};

/// Validates every option before training; throws std::invalid_argument.
void validate(const TrainOptions& options);

/// Writes the named figure to `out`, or to `report` when out is empty.
void cmd_bounds_figure(const std::string& name, const std::string& out, std::ostream& report);

void cmd_train(const TrainOptions& options, std::ostream& report);

void cmd_eval(const EvalOptions& options, std::ostream& report);

}  // namespace pboost::cli
