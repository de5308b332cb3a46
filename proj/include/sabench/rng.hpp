#ifndef SABENCH_RNG_HPP
#define SABENCH_RNG_HPP

#include <cstdint>
#include <random>

namespace sabench {

/// Random generator used throughout. Chains and replicates never share a
/// generator; they derive independent ones via sub_rng.
using Rng = std::mt19937_64;

/// Deterministically derive an independent generator from (seed, stream).
inline Rng sub_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

}  // namespace sabench

#endif
