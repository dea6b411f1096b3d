#include "pboost/path_index.hpp"

#include <stdexcept>

namespace pboost {

PathIndex PathIndex::parse(std::string_view text) {
  std::vector<Sign> signs;
  signs.reserve(text.size());
  for (char c : text) {
    if (c == '+') {
      signs.push_back(Sign::kPlus);
    } else if (c == '-') {
      signs.push_back(Sign::kMinus);
    } else {
      throw std::invalid_argument("PathIndex: invalid character '" + std::string(1, c) + "' in \"" +
                                  std::string(text) + "\"");
    }
  }
  return PathIndex(std::move(signs));
}

PathIndex PathIndex::parent() const {
  if (is_root()) throw std::logic_error("PathIndex: the root has no parent");
  return PathIndex(std::vector<Sign>(signs_.begin(), signs_.end() - 1));
}

Sign PathIndex::last() const {
  if (is_root()) throw std::logic_error("PathIndex: the root has no last edge");
  return signs_.back();
}

PathIndex PathIndex::child(Sign s) const {
  auto signs = signs_;
  signs.push_back(s);
  return PathIndex(std::move(signs));
}

bool PathIndex::is_prefix_of(const PathIndex& other) const {
  if (signs_.size() > other.signs_.size()) return false;
  for (std::size_t i = 0; i < signs_.size(); ++i) {
    if (signs_[i] != other.signs_[i]) return false;
  }
  return true;
}

PathIndex PathIndex::relative_to(const PathIndex& prefix) const {
  if (!prefix.is_prefix_of(*this)) {
    throw std::invalid_argument("PathIndex: '" + prefix.to_string() + "' is not a prefix of '" + to_string() + "'");
  }
  return PathIndex(std::vector<Sign>(signs_.begin() + static_cast<std::ptrdiff_t>(prefix.depth()), signs_.end()));
}

PathIndex PathIndex::append(const PathIndex& tail) const {
  auto signs = signs_;
  signs.insert(signs.end(), tail.signs_.begin(), tail.signs_.end());
  return PathIndex(std::move(signs));
}

std::string PathIndex::to_string() const {
  std::string out;
  out.reserve(signs_.size());
  for (Sign s : signs_) out.push_back(s == Sign::kPlus ? '+' : '-');
  return out;
}

std::strong_ordering operator<=>(const PathIndex& a, const PathIndex& b) {
  if (auto c = a.signs_.size() <=> b.signs_.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.signs_.size(); ++i) {
    if (a.signs_[i] != b.signs_[i]) {
      // '+' sorts first.
      return a.signs_[i] == Sign::kPlus ? std::strong_ordering::less : std::strong_ordering::greater;
    }
  }
  return std::strong_ordering::equal;
}

}  // namespace pboost
