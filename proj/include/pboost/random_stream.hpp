#pragma once

#include <cstdint>
#include <string_view>

namespace pboost {

/// Stable 64-bit tag for a stream purpose string (FNV-1a).
std::uint64_t purpose_tag(std::string_view purpose);

/// Counter-based random stream.
///
/// A stream is identified by (seed, purpose, index, call); its k-th draw is a
/// pure hash of those four values and k, so any draw can be reproduced
/// without replaying the others and streams for distinct examples never
/// share state.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t purpose, std::uint64_t index, std::uint64_t call)
      : seed_(seed), purpose_(purpose), index_(index), call_(call) {}

  std::uint64_t bits_at(std::uint64_t draw) const;

  std::uint64_t next_bits() { return bits_at(draw_++); }

  /// Uniform on [0, 1) with 53 random bits.
  double next_uniform() { return static_cast<double>(next_bits() >> 11) * 0x1.0p-53; }

  /// True with probability p.
  bool bernoulli(double p) { return next_uniform() < p; }

  std::uint64_t draws() const { return draw_; }

 private:
  std::uint64_t seed_;
  std::uint64_t purpose_;
  std::uint64_t index_;
  std::uint64_t call_;
  std::uint64_t draw_ = 0;
};

}  // namespace pboost
