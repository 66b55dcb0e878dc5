#pragma once

#include <cstdint>
#include <random>

namespace probust {

/// All sampling uses this engine. Its output sequence is fixed by the standard,
/// so seeded runs reproduce across platforms.
using Rng = std::mt19937_64;

/// Independent stream for task `index` under `master`. Seeds through
/// std::seed_seq, whose mixing is also fixed by the standard.
inline Rng derive_stream(std::uint64_t master, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                      0x70726f62u};
    return Rng(seq);
}

/// Uniform double on [0,1) from the top 53 bits. std::uniform_real_distribution
/// is implementation-defined, which would break cross-toolchain reproducibility.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// True with probability `p`; p >= 1 always fires, p <= 0 never does.
inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

}  // namespace probust
