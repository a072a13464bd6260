#pragma once

#include <cstdint>
#include <random>

namespace hetero2st {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; full-period bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derive an independent stream seed from a master seed and a stream index.
/// Results are stable across platforms and thread counts, which is what makes
/// parallel Monte Carlo loops reproducible: every unit of work owns the RNG
/// derived from (seed, its index), never a shared generator.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return mix64(mix64(master) ^ (0x632be59bd9b4e019ULL * (stream + 1)));
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                    std::uint64_t b) {
  return derive_seed(derive_seed(master, a), b);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                    std::uint64_t b, std::uint64_t c) {
  return derive_seed(derive_seed(master, a, b), c);
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

}  // namespace hetero2st
