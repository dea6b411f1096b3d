#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pboost::figures {

/// rho values of the bound-comparison figure, top curve first.
std::vector<double> figure_rhos();

/// `rho,T,F,rho_pow_T,M2` for T = 2^0 .. 2^10.
std::string adaboost_vs_tree_vs_m2_csv();

/// `T,T1,nested,F,is_divisor` for T in {64, 256, 1024}, T1 = 1..T, rho = 31/32.
std::string tree_of_trees_csv();

/// Level sizes for an L-level nesting of T nodes with integer sizes: each is
/// m = floor(T^{1/L}) or m + 1, with as few m + 1 as needed for the product
/// to reach T. Innermost first, larger sizes innermost.
std::vector<double> integer_level_sizes(std::int64_t T, int L);

/// `T,L,iso,integer,F` for T in {1024, 65536}, L = 1..2 log2 T, rho = 31/32.
std::string nesting_levels_csv();

/// `rho,T,C,rate_simple,rate_matryoshka` along the curve C(T) = F(T, rho),
/// with C(0) = 1, T = 1..64.
std::string rate_comparison_csv();

std::vector<std::string> figure_names();

/// Dispatches on figure_names(); throws std::invalid_argument on unknown names.
std::string figure_csv(std::string_view name);

}  // namespace pboost::figures
