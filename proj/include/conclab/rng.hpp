#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace conclab {

/// 64-bit FNV-1a over raw bytes.
constexpr std::uint64_t fnv1a(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based stream key: the same (seed, tag, index) always yields the
/// same engine state, independent of which worker asks for it.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag,
                                    std::uint64_t index) noexcept {
  return splitmix64(splitmix64(seed ^ fnv1a(tag)) + splitmix64(index));
}

/// A per-task random stream. Carries its provenance so sampled objects can
/// record where they came from.
class Stream {
 public:
  using Engine = std::mt19937_64;

  Stream(std::uint64_t seed, std::string_view tag, std::uint64_t index)
      : engine_(derive_seed(seed, tag, index)), seed_(seed), index_(index), tag_hash_(fnv1a(tag)) {}

  explicit Stream(std::uint64_t seed) : Stream(seed, "root", 0) {}

  Engine& engine() noexcept { return engine_; }
  std::uint64_t bits() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
  }

  double normal() { return normal_(engine_); }

  /// +1 or -1 with equal probability.
  double sign() { return (engine_() >> 63) ? 1.0 : -1.0; }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t index() const noexcept { return index_; }
  std::uint64_t tag_hash() const noexcept { return tag_hash_; }

 private:
  Engine engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uint64_t seed_;
  std::uint64_t index_;
  std::uint64_t tag_hash_;
};

}  // namespace conclab
