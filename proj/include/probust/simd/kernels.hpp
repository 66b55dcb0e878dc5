#pragma once

// Word-parallel kernels behind realizations, adjacency bitsets and probability
// tables. Every kernel has a scalar reference implementation and, where the
// build target allows it, an AVX2 variant. The active table is chosen once at
// first use from CPUID; PROBUST_SIMD=scalar in the environment forces the
// reference path.
//
// abs_diff_sum is bit-identical across variants: the scalar reference
// accumulates in four interleaved lanes and folds them in the same order as
// the vector code.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace probust::simd {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;

struct KernelTable {
    Isa isa;
    void (*or_words)(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out, std::size_t n);
    void (*and_words)(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out, std::size_t n);
    // out = a & ~b
    void (*andnot_words)(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out, std::size_t n);
    std::uint64_t (*popcount)(const std::uint64_t* a, std::size_t n);
    std::uint64_t (*and_popcount)(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
    double (*abs_diff_sum)(const double* a, const double* b, std::size_t n);
};

/// True if this build contains the variant and the CPU can run it.
bool isa_supported(Isa isa) noexcept;

/// Table for a specific variant. Throws DomainError if unsupported.
const KernelTable& kernels_for(Isa isa);

/// The table selected for this process.
const KernelTable& kernels() noexcept;

inline Isa active_isa() noexcept { return kernels().isa; }

// Span wrappers over the active table. Lengths must match.

inline void or_into(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                    std::span<std::uint64_t> out) noexcept {
    kernels().or_words(a.data(), b.data(), out.data(), out.size());
}

inline void and_into(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                     std::span<std::uint64_t> out) noexcept {
    kernels().and_words(a.data(), b.data(), out.data(), out.size());
}

inline void andnot_into(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                        std::span<std::uint64_t> out) noexcept {
    kernels().andnot_words(a.data(), b.data(), out.data(), out.size());
}

inline std::uint64_t popcount(std::span<const std::uint64_t> a) noexcept {
    return kernels().popcount(a.data(), a.size());
}

inline std::uint64_t and_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) noexcept {
    return kernels().and_popcount(a.data(), b.data(), a.size());
}

inline double abs_diff_sum(std::span<const double> a, std::span<const double> b) noexcept {
    return kernels().abs_diff_sum(a.data(), b.data(), a.size());
}

namespace detail {
extern const KernelTable scalar_table;
#if PROBUST_HAVE_AVX2
extern const KernelTable avx2_table;
#endif
}  // namespace detail

}  // namespace probust::simd
