#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace ndp {

using Rng = std::mt19937_64;

/// SplitMix64 finaliser; used to derive independent stream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed derived from an ordered tuple of integers, e.g. (master, generation, index).
/// Order-sensitive and independent of evaluation order or thread count.
inline std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0x6a09e667f3bcc908ULL;
  for (auto p : parts) h = mix64(h ^ mix64(p));
  return h;
}

// Stream tags so different consumers of the same (seed, index) never collide.
enum class Stream : std::uint64_t {
  Ask = 1,
  Candidate = 2,
  Episode = 3,
  Develop = 4,
  Eval = 5,
  Diversity = 6,
};

inline std::uint64_t derive_seed(std::uint64_t master, Stream s, std::uint64_t a, std::uint64_t b = 0) {
  return derive_seed({master, static_cast<std::uint64_t>(s), a, b});
}

}  // namespace ndp
