#include "pboost/random_stream.hpp"

namespace pboost {
namespace {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t purpose_tag(std::string_view purpose) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : purpose) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t RandomStream::bits_at(std::uint64_t draw) const {
  std::uint64_t h = mix64(seed_);
  h = mix64(h ^ purpose_);
  h = mix64(h ^ index_);
  h = mix64(h ^ call_);
  return mix64(h ^ draw);
}

}  // namespace pboost
