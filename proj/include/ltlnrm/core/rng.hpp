#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace ltlnrm {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// FNV-1a over the bytes of `text`.
std::uint64_t fnv1a(std::string_view text) noexcept;

/// Counter-based stream splitting: every (root, stream, counter) triple
/// names an independent seed, so components never share a generator.
std::uint64_t derive_seed(std::uint64_t root, std::string_view stream,
                          std::uint64_t counter = 0) noexcept;

inline Rng make_rng(std::uint64_t root, std::string_view stream, std::uint64_t counter = 0) {
  return Rng(derive_seed(root, stream, counter));
}

/// Uniform integer in [lo, hi].
inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double uniform_real(Rng& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline bool bernoulli(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

}  // namespace ltlnrm
