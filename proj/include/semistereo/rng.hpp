// Copyright (c) 2026 the semistereo authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string_view>

namespace semistereo {

// splitmix64 step (Vigna, public domain). Used to derive child seeds so that
// nearby seeds do not produce correlated mt19937_64 streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Mix a master seed with a salt (frame index, purpose tag, ...) into an
// independent child seed. Two rounds of splitmix64 over seed^f(salt).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t s = seed ^ (salt * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull);
  splitmix64(s);
  return splitmix64(s);
}

// FNV-1a over a byte string. Stable across platforms; used to fingerprint
// resolved configs in dataset manifests.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// Deterministic random stream. The engine is mt19937_64, whose output
// sequence is fixed by the standard; every distribution on top of it is
// spelled out here instead of using std::uniform_*_distribution, whose
// algorithms vary between standard libraries.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : seed_(seed), eng_(seed) {}

  std::uint64_t seed() const { return seed_; }

  // Child stream whose seed depends only on this stream's seed and the salt,
  // not on how much of this stream has been consumed.
  RandomStream fork(std::uint64_t salt) const {
    return RandomStream(mix_seed(seed_, salt));
  }

  std::uint64_t next_u64() { return eng_(); }

  // Uniform double in [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  // Uniform double in [lo, hi). Degenerate ranges return lo exactly.
  double uniform(double lo, double hi) {
    return lo + uniform01() * (hi - lo);
  }

  // Unbiased integer in [0, n), by rejection.
  std::uint64_t uniform_index(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index: n must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return x % n;
  }

  // Uniform integer in [lo, hi) on int64 range.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    if (lo >= hi) throw std::invalid_argument("uniform_int: empty range");
    return lo + static_cast<std::int64_t>(
                    uniform_index(static_cast<std::uint64_t>(hi - lo)));
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 eng_;
};

// Salts for the independent sub-streams of one scene build. Arbitrary but
// frozen values; changing them changes every dataset.
enum : std::uint64_t {
  kSeedPatches = 0x70617463u,
  kSeedSpawn = 0x7370776eu,
  kSeedTextures = 0x74657875u,
};

}  // namespace semistereo
