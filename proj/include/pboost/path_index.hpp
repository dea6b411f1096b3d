#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace pboost {

enum class Sign : int { kMinus = -1, kPlus = 1 };

constexpr int to_int(Sign s) { return static_cast<int>(s); }
constexpr Sign negate(Sign s) { return s == Sign::kPlus ? Sign::kMinus : Sign::kPlus; }
constexpr Sign sign_of_label(int y) { return y > 0 ? Sign::kPlus : Sign::kMinus; }

/// Address of a tree node: the signs followed from the root. Empty is the root.
///
/// Ordering is shorter-first, then lexicographic with '+' before '-'.
class PathIndex {
 public:
  PathIndex() = default;
  explicit PathIndex(std::vector<Sign> signs) : signs_(std::move(signs)) {}

  /// Parses "" / "+" / "+-+"; throws std::invalid_argument on other characters.
  static PathIndex parse(std::string_view text);

  bool is_root() const { return signs_.empty(); }
  std::size_t depth() const { return signs_.size(); }
  const std::vector<Sign>& signs() const { return signs_; }
  Sign operator[](std::size_t i) const { return signs_[i]; }

  /// Both throw std::logic_error on the root.
  PathIndex parent() const;
  Sign last() const;

  PathIndex child(Sign s) const;

  /// True when *this is an ancestor of, or equal to, other.
  bool is_prefix_of(const PathIndex& other) const;

  /// Drops the first `prefix.depth()` signs; requires prefix.is_prefix_of(*this).
  PathIndex relative_to(const PathIndex& prefix) const;

  /// Concatenation.
  PathIndex append(const PathIndex& tail) const;

  std::string to_string() const;

  friend bool operator==(const PathIndex&, const PathIndex&) = default;
  friend std::strong_ordering operator<=>(const PathIndex& a, const PathIndex& b);

 private:
  std::vector<Sign> signs_;
};

}  // namespace pboost
