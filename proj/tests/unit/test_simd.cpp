#include "probust/errors.hpp"
#include "probust/rng.hpp"
#include "probust/simd/kernels.hpp"

#include <doctest.h>

#include <bit>
#include <cmath>
#include <cstring>
#include <vector>

using namespace probust;
using namespace probust::simd;

namespace {

std::vector<std::uint64_t> random_words(std::size_t n, Rng& rng) {
    std::vector<std::uint64_t> w(n);
    for (auto& x : w) x = rng();
    return w;
}

std::vector<double> random_probs(std::size_t n, Rng& rng) {
    std::vector<double> v(n);
    for (auto& x : v) x = uniform01(rng) * std::pow(10.0, -static_cast<double>(rng() % 12));
    return v;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("scalar kernels match plain loops") {
    const KernelTable& k = kernels_for(Isa::scalar);
    Rng rng(21);
    for (std::size_t n = 0; n < 70; ++n) {
        const auto a = random_words(n, rng);
        const auto b = random_words(n, rng);
        std::vector<std::uint64_t> out(n);
        std::uint64_t pop = 0, and_pop = 0;
        k.or_words(a.data(), b.data(), out.data(), n);
        for (std::size_t i = 0; i < n; ++i) REQUIRE(out[i] == (a[i] | b[i]));
        k.and_words(a.data(), b.data(), out.data(), n);
        for (std::size_t i = 0; i < n; ++i) REQUIRE(out[i] == (a[i] & b[i]));
        k.andnot_words(a.data(), b.data(), out.data(), n);
        for (std::size_t i = 0; i < n; ++i) REQUIRE(out[i] == (a[i] & ~b[i]));
        for (std::size_t i = 0; i < n; ++i) {
            pop += static_cast<std::uint64_t>(std::popcount(a[i]));
            and_pop += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
        }
        REQUIRE(k.popcount(a.data(), n) == pop);
        REQUIRE(k.and_popcount(a.data(), b.data(), n) == and_pop);

        const auto x = random_probs(n, rng);
        const auto y = random_probs(n, rng);
        double direct = 0.0;
        for (std::size_t i = 0; i < n; ++i) direct += std::abs(x[i] - y[i]);
        REQUIRE(k.abs_diff_sum(x.data(), y.data(), n) == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("vector kernels are bit-identical to the scalar reference") {
    if (!isa_supported(Isa::avx2)) {
        MESSAGE("AVX2 not available in this build or CPU; equivalence not exercised");
        CHECK_THROWS_AS(kernels_for(Isa::avx2), DomainError);
        return;
    }
    const KernelTable& s = kernels_for(Isa::scalar);
    const KernelTable& v = kernels_for(Isa::avx2);
    CHECK(v.isa == Isa::avx2);
    Rng rng(22);
    for (int trial = 0; trial < 400; ++trial) {
        const std::size_t n = trial < 70 ? static_cast<std::size_t>(trial) : rng() % 300;
        const auto a = random_words(n, rng);
        const auto b = random_words(n, rng);
        std::vector<std::uint64_t> out_s(n), out_v(n);
        s.or_words(a.data(), b.data(), out_s.data(), n);
        v.or_words(a.data(), b.data(), out_v.data(), n);
        REQUIRE(out_s == out_v);
        s.and_words(a.data(), b.data(), out_s.data(), n);
        v.and_words(a.data(), b.data(), out_v.data(), n);
        REQUIRE(out_s == out_v);
        s.andnot_words(a.data(), b.data(), out_s.data(), n);
        v.andnot_words(a.data(), b.data(), out_v.data(), n);
        REQUIRE(out_s == out_v);
        REQUIRE(s.popcount(a.data(), n) == v.popcount(a.data(), n));
        REQUIRE(s.and_popcount(a.data(), b.data(), n) == v.and_popcount(a.data(), b.data(), n));

        const auto x = random_probs(n, rng);
        const auto y = random_probs(n, rng);
        REQUIRE(same_bits(s.abs_diff_sum(x.data(), y.data(), n), v.abs_diff_sum(x.data(), y.data(), n)));
    }
}

TEST_CASE("kernels handle dense and sparse words") {
    for (const Isa isa : {Isa::scalar, Isa::avx2}) {
        if (!isa_supported(isa)) continue;
        const KernelTable& k = kernels_for(isa);
        const std::vector<std::uint64_t> ones(37, ~std::uint64_t{0});
        const std::vector<std::uint64_t> zeros(37, 0);
        CHECK(k.popcount(ones.data(), ones.size()) == 37 * 64);
        CHECK(k.popcount(zeros.data(), zeros.size()) == 0);
        CHECK(k.and_popcount(ones.data(), zeros.data(), 37) == 0);
    }
}

TEST_CASE("active table is one of the supported variants") {
    CHECK(isa_supported(active_isa()));
    CHECK((isa_name(active_isa()) == "scalar" || isa_name(active_isa()) == "avx2"));
}
