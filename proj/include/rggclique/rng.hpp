#pragma once

#include <cstdint>
#include <random>

namespace rggclique {

// SplitMix64 finalizer. Used both as a seed splitter and as the mixing
// function of the counter-based per-pair stream.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Maps 64 random bits to a double in [0, 1) using the top 53 bits.
constexpr double unit_double(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Derives an independent child seed from (seed, stream).
constexpr std::uint64_t derive_seed(std::uint64_t seed,
                                    std::uint64_t stream) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

// Uniform draw in [0,1) for the unordered pair {u, v} under `seed`.
// The value depends only on (seed, min(u,v), max(u,v)), never on the order in
// which pairs are visited.
constexpr double pair_uniform(std::uint64_t seed, std::uint32_t u,
                              std::uint32_t v) noexcept {
  if (u > v) {
    std::uint32_t t = u;
    u = v;
    v = t;
  }
  const std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | v;
  return unit_double(splitmix64(splitmix64(seed) ^ splitmix64(key)));
}

// Sequential stream with a standard-defined engine, so sampled values are
// bit-identical across platforms.
class SeqRng {
 public:
  explicit SeqRng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return unit_double(engine_()); }
  bool bernoulli(double p) { return uniform() < p; }
  std::uint64_t bits() { return engine_(); }

  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(uniform() * static_cast<double>(bound));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rggclique
