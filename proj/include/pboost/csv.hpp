#pragma once

#include <charconv>
#include <string>

namespace pboost {

/// Shortest decimal text that reads back to the same double.
inline std::string csv_number(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace pboost
