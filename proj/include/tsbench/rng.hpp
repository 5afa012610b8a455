// Copyright the tsbench authors. Licensed under the terms of the Apache 2.0 license.
// See LICENSE in the project root.
#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace tsbench {

// splitmix64 finalizer. All seed derivation and counter-based randomness in the
// project goes through this mixer so that independent streams stay independent
// and reproducible across platforms.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of an independent substream identified by (seed, parts...). Insensitive
// to the order streams are created or consumed in.
constexpr std::uint64_t stream_seed(std::uint64_t seed) { return mix64(seed); }

template <typename... Rest>
constexpr std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t part, Rest... rest) {
  return stream_seed(mix64(seed ^ mix64(part + 0x632be59bd9b4e019ULL)), rest...);
}

// Counter-based uniform in [0,1): a pure function of (seed, a, b). Used for
// per-timestamp noise so values do not depend on evaluation order.
inline std::uint64_t hash_bits(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t h = seed;
  h = mix64(h ^ (a + 0x9e3779b97f4a7c15ULL));
  h = mix64(h ^ (b + 0x517cc1b727220a95ULL));
  return h;
}

constexpr double unit_interval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;  // [0,1)
}

inline double hash01(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  return unit_interval(hash_bits(seed, a, b));
}

// Sequential stream. The engine is std::mt19937_64 (bit-identical everywhere by
// the standard); the distributions are ours because the stdlib ones are
// implementation-defined and would break cross-platform determinism.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  double uniform01() { return unit_interval(next_u64()); }  // [0,1)

  // Uniform integer in [0, n). Fixed-point multiply; bias is < n/2^64.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  // Uniform integer in [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  template <typename T>
  void shuffle(std::span<T> v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace tsbench
