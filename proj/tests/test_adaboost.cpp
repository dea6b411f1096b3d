#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "doctest.h"
#include "pboost/adaboost.hpp"
#include "pboost/bounds.hpp"
#include "pboost/weighted_stats.hpp"

using namespace pboost;

namespace {

const std::vector<int> kPM{1, -1};

AdaboostModel one_stage(ClassifierPtr h, Alphas a) {
  AdaboostModel m;
  AdaboostStage s;
  s.classifier = std::move(h);
  s.alphas = a;
  m.stages.push_back(s);
  return m;
}

}  // namespace

TEST_CASE("w_statistics examples") {
  const std::vector<double> half{0.5, 0.5};
  const auto a = w_statistics(half, kPM, std::vector<double>{1.0, 0.0});
  CHECK(a.pp == 0.5);
  CHECK(a.mm == 0.5);
  CHECK(a.pm == 0.0);
  CHECK(a.mp == 0.0);
  const auto b = w_statistics(half, kPM, std::vector<double>{0.5, 0.5});
  CHECK(b.pp == 0.25);
  CHECK(b.pm == 0.25);
  CHECK(b.mp == 0.25);
  CHECK(b.mm == 0.25);
  const auto c = w_statistics(std::vector<double>{0.5, 0.25, 0.25}, std::vector<int>{1, 1, -1},
                              std::vector<double>{0.8, 0.6, 0.3});
  CHECK(c.pp == doctest::Approx(0.55));
  CHECK(c.mp == doctest::Approx(0.20));
  CHECK(c.pm == doctest::Approx(0.075));
  CHECK(c.mm == doctest::Approx(0.175));
  CHECK(c.total() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("optimal_alphas examples") {
  const auto a = optimal_alphas({0.25, 0.25, 0.25, 0.25});
  CHECK(a.plus == 0.0);
  CHECK(a.minus == 0.0);
  const auto b = optimal_alphas({0.4, 0.1, 0.1, 0.4});
  CHECK(b.plus == doctest::Approx(0.6931471805599453).epsilon(1e-7));
  CHECK(b.minus == doctest::Approx(0.6931471805599453).epsilon(1e-7));
  const auto c = optimal_alphas({0.4, 0.0, 0.1, 0.5});
  CHECK(std::isfinite(c.plus));
  CHECK(c.plus > 0.0);
  CHECK(c.plus == doctest::Approx(0.5 * std::log((0.4 + kAlphaSmoothing) / kAlphaSmoothing)).epsilon(1e-14));
}

TEST_CASE("z_value examples") {
  CHECK(z_value({0.25, 0.25, 0.25, 0.25}, {0.0, 0.0}) == 1.0);
  const WStatistics w{0.45, 0.05, 0.05, 0.45};
  CHECK(z_value(w, optimal_alphas(w)) == doctest::Approx(0.6).epsilon(1e-7));
  const auto [zp, zm] = z_branches(w, optimal_alphas(w));
  CHECK(zp + zm == doctest::Approx(z_value(w, optimal_alphas(w))).epsilon(1e-15));
}

TEST_CASE("optimal alphas beat every grid perturbation") {
  RandomStream stream(8, purpose_tag("grid"), 0, 0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> raw(4);
    for (auto& v : raw) v = stream.next_uniform() + 1e-3;
    double s = raw[0] + raw[1] + raw[2] + raw[3];
    const WStatistics w{raw[0] / s, raw[1] / s, raw[2] / s, raw[3] / s};
    const Alphas best = optimal_alphas(w);
    const double z = z_value(w, best);
    CHECK(z == doctest::Approx(2 * std::sqrt(w.pp * w.pm) + 2 * std::sqrt(w.mp * w.mm)).epsilon(1e-6));
    for (double dp : {-0.1, 0.0, 0.1}) {
      for (double dm : {-0.1, 0.0, 0.1}) {
        if (dp == 0.0 && dm == 0.0) continue;
        CHECK(z <= z_value(w, {best.plus + dp, best.minus + dm}));
      }
    }
  }
}

TEST_CASE("update_weights examples") {
  const std::vector<double> half{0.5, 0.5};
  SUBCASE("deterministic correct classifier with equal alphas leaves D unchanged") {
    const auto u = update_weights(half, kPM, std::vector<double>{1.0, 0.0}, {0.7, 0.7});
    CHECK(u.weights[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(u.weights[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(u.z == doctest::Approx(std::exp(-0.7)).epsilon(1e-15));
  }
  SUBCASE("hand-evaluated two-example update") {
    const auto u = update_weights(half, kPM, std::vector<double>{0.9, 0.2}, {0.5, 0.5});
    CHECK(u.weights[0] == doctest::Approx(0.4658459077107449).epsilon(1e-13));
    CHECK(u.weights[1] == doctest::Approx(0.5341540922892551).epsilon(1e-13));
    CHECK(u.z == doctest::Approx(0.7628592513607577).epsilon(1e-13));
  }
  SUBCASE("crisp outputs give the classical AdaBoost step") {
    // Outputs (+, -, -) on labels (+, +, -): one mistake, error 1/3, alpha = ln(2)/2.
    const double alpha = 0.5 * std::log(2.0);
    const auto u = update_weights(std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3}, std::vector<int>{1, 1, -1},
                                  std::vector<double>{1.0, 0.0, 0.0}, {alpha, alpha});
    CHECK(u.weights[0] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(u.weights[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(u.weights[2] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(u.z == doctest::Approx(2 * std::sqrt(2.0) / 3).epsilon(1e-14));
  }
}

TEST_CASE("exact_expected_bound on hand-built models") {
  const Dataset d({0.0, 1.0}, 1, kPM);
  CHECK(exact_expected_bound(AdaboostModel{}, d) == 1.0);

  // One stage with the q table of the hand-evaluated update: the bound is Z_1.
  auto m = one_stage(std::make_shared<ConstantProbabilityClassifier>(0.5), {0.5, 0.5});
  m.stages[0].q_plus = {0.9, 0.2};
  CHECK(exact_expected_bound(m, d) == doctest::Approx(0.7628592513607577).epsilon(1e-13));
  CHECK(exact_expected_bound(m, d, QSource::kTrue) == doctest::Approx(std::cosh(0.5)).epsilon(1e-14));
}

TEST_CASE("coin-flip stage misclassifies half the time") {
  const Dataset d({0.0, 1.0, 2.0, 3.0}, 1, {1, -1, 1, -1});
  auto m = one_stage(std::make_shared<ConstantProbabilityClassifier>(0.5), {0.4, 0.4});
  const McResult r = mc_misclassification(m, d, 4000, 1);
  CHECK(std::abs(r.mean - 0.5) <= 3 * r.std_error);
  CHECK(exact_misclassification(m, d, QSource::kTrue) == doctest::Approx(0.5));
}

TEST_CASE("perfect stage on separable data") {
  const Dataset d({0.1, 0.2, 0.7, 0.8}, 1, {-1, -1, 1, 1});
  NoisyStumpLearner learner(0.0);
  EstimationConfig config;
  config.exact_q = true;
  const auto m = train_adaboost(d, learner, 1, config);
  CHECK(m.stages[0].z < 1e-3);
  CHECK(m.recorded_bound() < 1e-3);
  CHECK(mc_misclassification(m, d, 100, 3).mean == 0.0);
  CHECK(exact_misclassification(m, d) == 0.0);
}

TEST_CASE("telescoping identity on trained models") {
  NoisyStumpLearner learner(0.15);
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const Dataset d = make_synthetic_dataset(24, 2, seed);
    EstimationConfig config;
    config.seed = seed;
    config.r_max = 200;
    const int T = 2 + static_cast<int>(seed % 11);
    const auto m = train_adaboost(d, learner, T, config);
    CAPTURE(seed);
    REQUIRE(m.size() == static_cast<std::size_t>(T));
    CHECK(std::abs(exact_expected_bound(m, d) - m.recorded_bound()) <= 1e-10);
    const McResult mc = mc_misclassification(m, d, 400, seed);
    CHECK(mc.mean <= exact_expected_bound(m, d, QSource::kTrue) + 3 * mc.std_error);
    CHECK(exact_misclassification(m, d, QSource::kTrue) <= exact_expected_bound(m, d, QSource::kTrue) + 1e-12);
  }
}

TEST_CASE("weak-learner bound with the constant-edge oracle and exact q") {
  const Dataset d = make_synthetic_dataset(20, 2, 7);
  for (double eps : {0.1, 0.2, 0.3, 0.43}) {
    ConstantEdgeOracle oracle(eps);
    EstimationConfig config;
    config.exact_q = true;
    const int T = 10;
    const auto m = train_adaboost(d, oracle, T, config);
    const double rho = bounds::rho_from_epsilon(eps);
    CAPTURE(eps);
    for (const auto& s : m.stages) CHECK(s.z <= rho + 1e-12);
    CHECK(m.recorded_bound() <= bounds::bound_adaboost(T, rho) + 1e-12);
  }
}

TEST_CASE("sampled constant-edge stages stay near rho") {
  // Enough rounds that MAP shrinkage is below the 0.02 tolerance.
  const Dataset d = make_synthetic_dataset(32, 2, 9);
  ConstantEdgeOracle oracle(0.3);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    EstimationConfig config;
    config.seed = seed;
    config.r_min = 2000;
    const auto m = train_adaboost(d, oracle, 5, config);
    for (const auto& s : m.stages) {
      CAPTURE(seed);
      CAPTURE(s.rounds);
      CHECK(s.z <= 0.8 + 0.02);
    }
  }
}

TEST_CASE("short Strategy A runs carry MAP shrinkage into Z") {
  const Dataset d = make_synthetic_dataset(32, 2, 9);
  ConstantEdgeOracle oracle(0.3);
  EstimationConfig config;
  config.seed = 1;
  const auto m = train_adaboost(d, oracle, 5, config);
  for (const auto& s : m.stages) {
    CAPTURE(s.rounds);
    CHECK(s.rounds < 50);
    CHECK(s.z > 0.8);
    CHECK(s.z < 1.0);
  }
}

TEST_CASE("training is deterministic") {
  const Dataset d = make_synthetic_dataset(30, 2, 4);
  NoisyStumpLearner learner;
  EstimationConfig config;
  config.seed = 99;
  const auto a = train_adaboost(d, learner, 6, config);
  const auto b = train_adaboost(d, learner, 6, config);
  REQUIRE(a.size() == b.size());
  for (std::size_t t = 0; t < a.size(); ++t) {
    CHECK(a.stages[t].z == b.stages[t].z);
    CHECK(a.stages[t].alphas.plus == b.stages[t].alphas.plus);
    CHECK(a.stages[t].q_plus == b.stages[t].q_plus);
    CHECK(a.stages[t].classifier->to_json() == b.stages[t].classifier->to_json());
  }
  CHECK(adaboost_z_log_csv(a) == adaboost_z_log_csv(b));
  CHECK(sample_adaboost_score(a, d.row(3), 5, 3, 0) == sample_adaboost_score(b, d.row(3), 5, 3, 0));
}

TEST_CASE("Strategy B with a scripted clock") {
  const Dataset d = make_synthetic_dataset(16, 2, 2);
  ConstantEdgeOracle oracle(0.2);
  EstimationConfig config;
  config.strategy = Strategy::kB;
  config.seed = 5;
  SUBCASE("expensive training favours resampling until the cap") {
    // Each decision reads a0, a1, b0, b1: training takes 1000 s, resampling 1 s.
    std::vector<double> readings;
    double t = 0.0;
    for (int i = 0; i < 4000; ++i) {
      readings.push_back(t);
      t += (i % 4 == 0) ? 1000.0 : (i % 4 == 2 ? 1.0 : 0.0);
    }
    ScriptedStopwatch clock(readings);
    config.r_max = 6;
    const auto m = train_adaboost(d, oracle, 3, config, &clock);
    REQUIRE(m.size() == 3);
    CHECK(m.stages[0].rounds >= 1);
    CHECK(m.stages[0].rounds <= config.r_max);
    CHECK(std::abs(exact_expected_bound(m, d) - m.recorded_bound()) <= 1e-10);
  }
  SUBCASE("a frozen clock trains one stage per decision") {
    ScriptedStopwatch clock({0.0});
    const auto m = train_adaboost(d, oracle, 4, config, &clock);
    REQUIRE(m.size() == 4);
    CHECK(std::abs(exact_expected_bound(m, d) - m.recorded_bound()) <= 1e-10);
  }
}

TEST_CASE("z log csv") {
  const Dataset d = make_synthetic_dataset(10, 2, 1);
  ConstantEdgeOracle oracle(0.25);
  EstimationConfig config;
  config.exact_q = true;
  const auto m = train_adaboost(d, oracle, 2, config);
  const auto csv = adaboost_z_log_csv(m);
  CHECK(csv.rfind("round,Z,alpha_plus,alpha_minus,bound_so_far\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}
