#include "pboost/figures.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pboost/bounds.hpp"
#include "pboost/csv.hpp"

namespace pboost::figures {
namespace {

constexpr double kNestingRho = 31.0 / 32.0;

double ipow(double base, int exp) {
  double r = 1.0;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

std::vector<double> figure_rhos() { return {31.0 / 32.0, 7.0 / 8.0, 3.0 / 4.0, 1.0 / 2.0, 1.0 / 4.0}; }

std::string adaboost_vs_tree_vs_m2_csv() {
  std::ostringstream out;
  out << "rho,T,F,rho_pow_T,M2\n";
  for (double rho : figure_rhos()) {
    for (int k = 0; k <= 10; ++k) {
      const std::int64_t T = std::int64_t{1} << k;
      out << csv_number(rho) << ',' << T << ',' << csv_number(bounds::bound_F(static_cast<double>(T), rho)) << ','
          << csv_number(bounds::bound_adaboost(T, rho)) << ',' << csv_number(bounds::bound_M2(T, rho)) << '\n';
    }
  }
  return out.str();
}

std::string tree_of_trees_csv() {
  std::ostringstream out;
  out << "T,T1,nested,F,is_divisor\n";
  for (std::int64_t T : {64, 256, 1024}) {
    const double f = bounds::bound_F(static_cast<double>(T), kNestingRho);
    for (std::int64_t T1 = 1; T1 <= T; ++T1) {
      out << T << ',' << T1 << ',' << csv_number(bounds::bound_nested(T, static_cast<double>(T1), kNestingRho)) << ','
          << csv_number(f) << ',' << (T % T1 == 0 ? 1 : 0) << '\n';
    }
  }
  return out.str();
}

std::vector<double> integer_level_sizes(std::int64_t T, int L) {
  if (T < 1 || L < 1) throw std::invalid_argument("integer_level_sizes: T and L must be >= 1");
  const double target = static_cast<double>(T);
  auto m = static_cast<std::int64_t>(std::floor(std::pow(target, 1.0 / L)));
  if (m < 1) m = 1;
  while (ipow(static_cast<double>(m + 1), L) <= target) ++m;
  while (m > 1 && ipow(static_cast<double>(m), L) > target) --m;
  int big = 0;
  while (big < L && ipow(static_cast<double>(m + 1), big) * ipow(static_cast<double>(m), L - big) < target) ++big;
  std::vector<double> sizes;
  for (int i = 0; i < big; ++i) sizes.push_back(static_cast<double>(m + 1));
  for (int i = big; i < L; ++i) sizes.push_back(static_cast<double>(m));
  return sizes;
}

std::string nesting_levels_csv() {
  std::ostringstream out;
  out << "T,L,iso,integer,F\n";
  for (std::int64_t T : {1024, 65536}) {
    const int levels = 2 * std::countr_zero(static_cast<std::uint64_t>(T));
    const double f = bounds::bound_F(static_cast<double>(T), kNestingRho);
    for (int L = 1; L <= levels; ++L) {
      out << T << ',' << L << ',' << csv_number(bounds::bound_iso_nested(T, L, kNestingRho)) << ','
          << csv_number(bounds::bound_nested_sizes(integer_level_sizes(T, L), kNestingRho)) << ',' << csv_number(f)
          << '\n';
    }
  }
  return out.str();
}

std::string rate_comparison_csv() {
  std::ostringstream out;
  out << "rho,T,C,rate_simple,rate_matryoshka\n";
  for (double rho : figure_rhos()) {
    auto C = [&](int T) { return T == 0 ? 1.0 : bounds::bound_F(static_cast<double>(T), rho); };
    for (int T = 1; T <= 64; ++T) {
      out << csv_number(rho) << ',' << T << ',' << csv_number(C(T)) << ','
          << csv_number(bounds::rate_simple(C(T - 1), C(T + 1))) << ','
          << csv_number(bounds::rate_matryoshka(C(T), static_cast<double>(T))) << '\n';
    }
  }
  return out.str();
}

std::vector<std::string> figure_names() {
  return {"adaboost-vs-tree-vs-m2", "tree-of-trees", "nesting-levels", "rate-comparison"};
}

std::string figure_csv(std::string_view name) {
  if (name == "adaboost-vs-tree-vs-m2") return adaboost_vs_tree_vs_m2_csv();
  if (name == "tree-of-trees") return tree_of_trees_csv();
  if (name == "nesting-levels") return nesting_levels_csv();
  if (name == "rate-comparison") return rate_comparison_csv();
  throw std::invalid_argument("unknown figure '" + std::string(name) + "'");
}

}  // namespace pboost::figures
