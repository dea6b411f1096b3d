#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "pboost/dataset.hpp"
#include "pboost/path_index.hpp"
#include "pboost/random_stream.hpp"

using namespace pboost;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("pboost_core_" + name);
  std::ofstream(path) << text;
  return path;
}

std::string error_of(const std::filesystem::path& path, bool weights) {
  try {
    load_csv(path, weights);
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("normalize_weights examples") {
  CHECK(normalize_weights(std::vector<double>{1, 1, 1, 1}) == std::vector<double>{0.25, 0.25, 0.25, 0.25});
  CHECK(normalize_weights(std::vector<double>{2, 0, 2}) == std::vector<double>{0.5, 0.0, 0.5});
  CHECK(normalize_weights(std::vector<double>{1e-300, 1e-300}) == std::vector<double>{0.5, 0.5});
  const auto tiny = normalize_weights(std::vector<double>{1e-320, 3e-320});
  CHECK(tiny[0] == doctest::Approx(0.25).epsilon(1e-3));
  CHECK(tiny[0] + tiny[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("normalize_weights errors") {
  CHECK_THROWS_AS(normalize_weights(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(normalize_weights(std::vector<double>{0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(normalize_weights(std::vector<double>{1, -1}), std::invalid_argument);
  CHECK_THROWS_AS(normalize_weights(std::vector<double>{1, std::nan("")}), std::invalid_argument);
}

TEST_CASE("normalize_weights is idempotent and proportional") {
  RandomStream stream(3, purpose_tag("normalize-test"), 0, 0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> raw(1 + trial % 17);
    for (auto& v : raw) v = stream.next_uniform() * std::pow(10.0, -static_cast<double>(trial % 300));
    raw[0] += 1e-300;
    const auto once = normalize_weights(raw);
    const auto twice = normalize_weights(once);
    CHECK(once == twice);
    CHECK(std::abs(std::accumulate(once.begin(), once.end(), 0.0) - 1.0) <= 1e-12);
    for (std::size_t i = 1; i < raw.size(); ++i) {
      if (raw[i] > 0) CHECK(once[i] / once[0] == doctest::Approx(raw[i] / raw[0]).epsilon(1e-12));
    }
  }
}

TEST_CASE("Dataset validation") {
  CHECK_NOTHROW(Dataset({0.0, 1.0}, 1, {1, -1}));
  CHECK_THROWS_AS(Dataset({}, 1, {}), std::invalid_argument);
  CHECK_THROWS_AS(Dataset({0.0, 1.0}, 1, {1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Dataset({0.0, 1.0, 2.0}, 2, {1, -1}), std::invalid_argument);
  CHECK_THROWS_AS(Dataset({0.0, 1.0}, 1, {1, -1}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(Dataset({0.0, std::nan("")}, 1, {1, -1}), std::invalid_argument);
  const Dataset d({0.0, 1.0}, 1, {1, -1}, {3, 1});
  CHECK(d.weights() == std::vector<double>{0.75, 0.25});
  CHECK(d.fingerprint() != Dataset({0.0, 1.0}, 1, {1, -1}).fingerprint());
  CHECK(d.fingerprint() == Dataset({0.0, 1.0}, 1, {1, -1}, {0.75, 0.25}).fingerprint());
}

TEST_CASE("load_csv examples") {
  const auto plain = write_temp("plain.csv", "f0,f1,label\n0.5,1,1\n-2,3e-1,-1\n");
  const Dataset d = load_csv(plain, false);
  CHECK(d.size() == 2);
  CHECK(d.dimension() == 2);
  CHECK(d.weights() == std::vector<double>{0.5, 0.5});
  CHECK(d.labels() == std::vector<int>{1, -1});
  CHECK(d.row(1)[1] == 0.3);

  const auto weighted = write_temp("weighted.csv", "f0,label,weight\n1,1,3\n2,-1,1\n");
  CHECK(load_csv(weighted, true).weights() == std::vector<double>{0.75, 0.25});
}

TEST_CASE("load_csv errors name the line") {
  const auto zero = write_temp("zero.csv", "f0,label\n1,1\n2,0\n");
  CHECK(error_of(zero, false).find("line 3") != std::string::npos);
  const auto ragged = write_temp("ragged.csv", "f0,f1,label\n1,2,1\n2,-1\n");
  CHECK(error_of(ragged, false).find("line 3") != std::string::npos);
  const auto junk = write_temp("junk.csv", "f0,label\n1,1\nx,1\n");
  CHECK(error_of(junk, false).find("line 3") != std::string::npos);
  const auto empty = write_temp("empty.csv", "");
  CHECK(!error_of(empty, false).empty());
  const auto header_only = write_temp("header.csv", "f0,label\n");
  CHECK(!error_of(header_only, false).empty());
  const auto bad_header = write_temp("badheader.csv", "a,label\n1,1\n");
  CHECK(!error_of(bad_header, false).empty());
  CHECK(!error_of(std::filesystem::temp_directory_path() / "pboost_core_missing.csv", false).empty());
}

TEST_CASE("save_csv round-trips") {
  const Dataset d = make_synthetic_dataset(13, 3, 5);
  const auto path = std::filesystem::temp_directory_path() / "pboost_core_roundtrip.csv";
  save_csv(d, path);
  const Dataset back = load_csv(path, true);
  CHECK(back.features() == d.features());
  CHECK(back.labels() == d.labels());
  CHECK(back.weights() == d.weights());
  CHECK(back.fingerprint() == d.fingerprint());
}

TEST_CASE("synthetic dataset") {
  const Dataset a = make_synthetic_dataset(64, 2, 1);
  const Dataset b = make_synthetic_dataset(64, 2, 1);
  CHECK(a.fingerprint() == b.fingerprint());
  CHECK(a.fingerprint() != make_synthetic_dataset(64, 2, 2).fingerprint());
  int balance = 0;
  for (int y : a.labels()) balance += y;
  CHECK(balance == 0);
  for (double v : a.features()) {
    CHECK(v >= 0.0);
    CHECK(v < 1.0);
  }
}

TEST_CASE("path parent and last") {
  const auto s = PathIndex::parse("++-");
  CHECK(s.parent() == PathIndex::parse("++"));
  CHECK(s.last() == Sign::kMinus);
  CHECK(s.parent().child(s.last()) == s);
  const auto one = PathIndex::parse("+");
  CHECK(one.parent().is_root());
  CHECK(one.last() == Sign::kPlus);
  CHECK_THROWS_AS(PathIndex().parent(), std::logic_error);
  CHECK_THROWS_AS(PathIndex().last(), std::logic_error);
  CHECK_THROWS_AS(PathIndex::parse("+x"), std::invalid_argument);
}

TEST_CASE("path helpers") {
  const auto a = PathIndex::parse("+-");
  const auto b = PathIndex::parse("+-+-");
  CHECK(a.is_prefix_of(b));
  CHECK(a.is_prefix_of(a));
  CHECK_FALSE(b.is_prefix_of(a));
  CHECK(PathIndex().is_prefix_of(a));
  CHECK(b.relative_to(a) == PathIndex::parse("+-"));
  CHECK(a.append(PathIndex::parse("--")).to_string() == "+---");
  CHECK(PathIndex::parse(b.to_string()) == b);
  CHECK(PathIndex().to_string().empty());
}

TEST_CASE("path ordering is shorter first then plus first") {
  std::set<PathIndex> s;
  for (const char* t : {"-", "", "+-", "+", "--", "-+", "++"}) s.insert(PathIndex::parse(t));
  std::vector<std::string> order;
  for (const auto& p : s) order.push_back(p.to_string());
  CHECK(order == std::vector<std::string>{"", "+", "-", "++", "+-", "-+", "--"});
}

TEST_CASE("RandomStream reproducibility and independence") {
  RandomStream a(42, purpose_tag("x"), 7, 3);
  RandomStream b(42, purpose_tag("x"), 7, 3);
  for (int i = 0; i < 100; ++i) CHECK(a.next_bits() == b.next_bits());
  RandomStream c(42, purpose_tag("x"), 7, 3);
  CHECK(c.bits_at(57) == a.bits_at(57));
  CHECK(RandomStream(42, purpose_tag("x"), 8, 3).bits_at(0) != c.bits_at(0));
  CHECK(RandomStream(42, purpose_tag("y"), 7, 3).bits_at(0) != c.bits_at(0));
  CHECK(RandomStream(43, purpose_tag("x"), 7, 3).bits_at(0) != c.bits_at(0));
  CHECK(RandomStream(42, purpose_tag("x"), 7, 4).bits_at(0) != c.bits_at(0));
  CHECK(purpose_tag("") == 0xcbf29ce484222325ULL);

  RandomStream u(1, purpose_tag("uniform-test"), 0, 0);
  const int n = 100000;
  double mean = 0.0;
  int hits = 0;
  for (int i = 0; i < n; ++i) {
    const double v = u.next_uniform();
    CHECK_UNARY(v >= 0.0 && v < 1.0);
    mean += v / n;
    if (u.bernoulli(0.3)) ++hits;
  }
  CHECK(std::abs(mean - 0.5) < 5 * std::sqrt(1.0 / 12.0 / n));
  CHECK(std::abs(hits / static_cast<double>(n) - 0.3) < 5 * std::sqrt(0.21 / n));
}
