// Compiled with -mavx2 only; never called unless CPUID reports AVX2.

#include "probust/simd/kernels.hpp"

#include <immintrin.h>

#include <bit>
#include <cmath>

namespace probust::simd {
namespace {

inline __m256i load(const std::uint64_t* p) { return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p)); }
inline void store(std::uint64_t* p, __m256i v) { _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v); }

void or_words(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) store(out + i, _mm256_or_si256(load(a + i), load(b + i)));
    for (; i < n; ++i) out[i] = a[i] | b[i];
}

void and_words(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) store(out + i, _mm256_and_si256(load(a + i), load(b + i)));
    for (; i < n; ++i) out[i] = a[i] & b[i];
}

void andnot_words(const std::uint64_t* a, const std::uint64_t* b, std::uint64_t* out, std::size_t n) {
    std::size_t i = 0;
    // _mm256_andnot_si256(x, y) computes ~x & y
    for (; i + 4 <= n; i += 4) store(out + i, _mm256_andnot_si256(load(b + i), load(a + i)));
    for (; i < n; ++i) out[i] = a[i] & ~b[i];
}

// Per-byte popcount via nibble lookup, summed into 64-bit lanes with SAD.
inline __m256i popcount_bytes_to_u64(__m256i v) {
    const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                         0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low_mask = _mm256_set1_epi8(0x0f);
    const __m256i lo = _mm256_and_si256(v, low_mask);
    const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
    const __m256i counts = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
    return _mm256_sad_epu8(counts, _mm256_setzero_si256());
}

inline std::uint64_t horizontal_sum(__m256i v) {
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
    return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

std::uint64_t popcount(const std::uint64_t* a, std::size_t n) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_epi64(acc, popcount_bytes_to_u64(load(a + i)));
    std::uint64_t total = horizontal_sum(acc);
    for (; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(a[i]));
    return total;
}

std::uint64_t and_popcount(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_add_epi64(acc, popcount_bytes_to_u64(_mm256_and_si256(load(a + i), load(b + i))));
    std::uint64_t total = horizontal_sum(acc);
    for (; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
    return total;
}

double abs_diff_sum(const double* a, const double* b, std::size_t n) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    const std::size_t blocks = n / 4 * 4;
    for (std::size_t i = 0; i < blocks; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign, d));
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    double total = (lane[0] + lane[1]) + (lane[2] + lane[3]);
    for (std::size_t i = blocks; i < n; ++i) total += std::fabs(a[i] - b[i]);
    return total;
}

}  // namespace

namespace detail {
const KernelTable avx2_table{Isa::avx2, or_words, and_words, andnot_words, popcount, and_popcount, abs_diff_sum};
}

}  // namespace probust::simd
