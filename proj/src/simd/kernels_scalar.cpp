#include "probust/simd/kernels.hpp"

#include <bit>
#include <cmath>

namespace probust::simd {
namespace {

void or_words(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] | b[i];
}

void and_words(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] & b[i];
}

void andnot_words(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] & ~b[i];
}

std::uint64_t popcount(const std::uint64_t* a, std::size_t n) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(a[i]));
    return total;
}

std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
    return total;
}

// Four-lane accumulation, folded as (l0 + l1) + (l2 + l3), then the tail in order.
double abs_diff_sum(const double* a, const double* b, std::size_t n) {
    double lane[4] = {0.0, 0.0, 0.0, 0.0};
    const std::size_t blocks = n / 4 * 4;
    for (std::size_t i = 0; i < blocks; i += 4) {
        for (std::size_t j = 0; j < 4; ++j) lane[j] += std::fabs(a[i + j] - b[i + j]);
    }
    double total = (lane[0] + lane[1]) + (lane[2] + lane[3]);
    for (std::size_t i = blocks; i < n; ++i) total += std::fabs(a[i] - b[i]);
    return total;
}

}  // namespace

namespace detail {
const KernelTable scalar_table{Isa::scalar, or_words, and_words, andnot_words, popcount, and_popcount, abs_diff_sum};
}

}  // namespace probust::simd
