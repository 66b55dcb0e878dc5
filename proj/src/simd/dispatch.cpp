#include "probust/errors.hpp"
#include "probust/simd/kernels.hpp"

#include <cstdlib>
#include <string>

namespace probust::simd {

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
    }
    return "unknown";
}

bool isa_supported(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return true;
        case Isa::avx2:
#if PROBUST_HAVE_AVX2
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
    }
    return false;
}

const KernelTable& kernels_for(Isa isa) {
    if (!isa_supported(isa)) throw DomainError("SIMD variant not available: " + std::string(isa_name(isa)));
#if PROBUST_HAVE_AVX2
    if (isa == Isa::avx2) return detail::avx2_table;
#endif
    return detail::scalar_table;
}

namespace {

const KernelTable& select() noexcept {
    if (const char* forced = std::getenv("PROBUST_SIMD"); forced && std::string_view(forced) == "scalar")
        return detail::scalar_table;
#if PROBUST_HAVE_AVX2
    if (isa_supported(Isa::avx2)) return detail::avx2_table;
#endif
    return detail::scalar_table;
}

}  // namespace

const KernelTable& kernels() noexcept {
    static const KernelTable& table = select();
    return table;
}

}  // namespace probust::simd
