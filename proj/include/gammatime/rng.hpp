#pragma once

#include <cstdint>
#include <string_view>

namespace gammatime {

// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

// Seed of replicate stream i: mix64(master + gamma * (i + 1)).  Injective in
// i for a fixed master because gamma is odd and mix64 is a bijection.
constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master + kGoldenGamma * (index + 1));
}

// 64-bit FNV-1a, used to give every named check its own seed.
constexpr std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Counter-based SplitMix64 stream.  All variates below are built from the
// raw words with portable arithmetic, so a seed gives the same numbers on
// every platform and standard library.
class Rng {
 public:
  explicit constexpr Rng(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next_u64() {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  // Uniform on the open interval (0, 1).
  double uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }
  double exponential();
  double normal();
  // Gamma(shape, 1) by Marsaglia-Tsang; shape < 1 uses the U^{1/shape} boost.
  double gamma(double shape);
  // Lomax (Pareto type II) on [0, inf) with density (p-1)(1+u)^{-p}, p > 1.
  double lomax(double p);

 private:
  std::uint64_t state_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace gammatime
