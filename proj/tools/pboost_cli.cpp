#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "pboost/commands.hpp"
#include "pboost/figures.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Probabilistic boosting: AdaBoost, boosted trees, matryoshka trees and their bounds"};
  app.require_subcommand(1);

  std::string figure;
  std::string figure_out;
  auto* fig = app.add_subcommand("bounds-figure", "Write a bound curve as CSV");
  fig->add_option("name", figure, "Figure name")->required()->check(CLI::IsMember(pboost::figures::figure_names()));
  fig->add_option("--out", figure_out, "Output CSV (stdout when omitted)");

  pboost::cli::TrainOptions t;
  auto* train = app.add_subcommand("train", "Train a model");
  train->add_option("--algo", t.algo, "adaboost | ptree | matryoshka")->capture_default_str();
  train->add_option("--oracle", t.oracle, "stump | constant-edge")->capture_default_str();
  train->add_option("--epsilon", t.epsilon, "Edge of the constant-edge oracle")->capture_default_str();
  train->add_option("--p-flip", t.p_flip, "Noise of the stump learner")->capture_default_str();
  train->add_option("--T", t.T, "Rounds (adaboost), inner nodes (ptree) or raw-node budget (greedy)")
      ->capture_default_str();
  train->add_option("--L", t.L, "Levels of a fixed2 matryoshka")->capture_default_str();
  train->add_option("--mode", t.mode, "fixed2 | greedy")->capture_default_str();
  train->add_option("--rate-basis", t.rate_basis, "node | second (greedy matryoshka)")->capture_default_str();
  train->add_option("--estimator", t.estimator, "map | ml")->capture_default_str();
  train->add_option("--strategy", t.strategy, "A | B")->capture_default_str();
  train->add_flag("--exact-q", t.exact_q, "Use closed-form q instead of sampling");
  train->add_option("--r-min", t.r_min, "Minimum sampling rounds")->capture_default_str();
  train->add_option("--r-max", t.r_max, "Maximum sampling rounds")->capture_default_str();
  train->add_option("--seed", t.seed, "Random seed")->envname("MATRYOSHKA_SEED")->capture_default_str();
  train->add_option("--data", t.data, "CSV dataset (synthetic when omitted)");
  train->add_flag("--weights", t.weight_column, "The CSV has a trailing weight column");
  train->add_option("--n", t.n, "Synthetic dataset size")->capture_default_str();
  train->add_option("--dim", t.dimension, "Synthetic dataset dimension")->capture_default_str();
  train->add_option("--save-data", t.save_data, "Write the training set as CSV");
  train->add_option("--out", t.out, "Model file");
  train->add_option("--log", t.log, "Training log CSV");
  train->add_option("--trials", t.trials, "Monte-Carlo passes for the training error")->capture_default_str();

  pboost::cli::EvalOptions e;
  std::uint64_t eval_seed = 0;
  auto* eval = app.add_subcommand("eval", "Evaluate a saved model");
  eval->add_option("model", e.model, "Model file")->required();
  eval->add_option("--data", e.data, "CSV dataset (the training data when omitted)");
  eval->add_flag("--weights", e.weight_column, "The CSV has a trailing weight column");
  eval->add_option("--trials", e.trials, "Monte-Carlo passes")->capture_default_str();
  auto* seed_opt = eval->add_option("--seed", eval_seed, "Sampling seed (model seed when omitted)")
                       ->envname("MATRYOSHKA_SEED");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*fig) {
      pboost::cli::cmd_bounds_figure(figure, figure_out, std::cout);
    } else if (*train) {
      pboost::cli::cmd_train(t, std::cout);
    } else if (*eval) {
      if (seed_opt->count() > 0) e.seed = eval_seed;
      pboost::cli::cmd_eval(e, std::cout);
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}
