#include "probust/graph.hpp"

#include "probust/errors.hpp"
#include "probust/simd/kernels.hpp"

#include <bit>
#include <cmath>

namespace probust {
namespace {

// Number of pairs whose first vertex is below u.
std::size_t row_offset(std::size_t n, std::size_t u) { return u * (2 * n - u - 1) / 2; }

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

std::size_t hex_digits(std::size_t m) { return m == 0 ? 1 : (m + 3) / 4; }

std::string words_to_hex(std::span<const std::uint64_t> words, std::size_t m) {
    static constexpr char digits[] = "0123456789abcdef";
    const std::size_t count = hex_digits(m);
    std::string out(count, '0');
    for (std::size_t d = 0; d < count; ++d) {
        const std::size_t bit = 4 * d;
        const unsigned nibble = bit / 64 < words.size() ? (words[bit / 64] >> (bit % 64)) & 0xf : 0;
        out[count - 1 - d] = digits[nibble];
    }
    return out;
}

void check_same_space(const Realization& a, const Realization& b) {
    if (!(a.space() == b.space())) throw DomainError("realizations belong to different edge spaces");
}

}  // namespace

EdgeSpace::EdgeSpace(int n) : n_(n), m_(0) {
    if (n < 1) throw DomainError("vertex count must be >= 1, got " + std::to_string(n));
    m_ = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
}

EdgeIndex EdgeSpace::edge_index(Vertex u, Vertex v) const {
    if (u == v) throw DomainError("edge endpoints must differ");
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
        throw DomainError("vertex out of range for n=" + std::to_string(n_));
    if (u > v) std::swap(u, v);
    const auto uu = static_cast<std::size_t>(u);
    return row_offset(static_cast<std::size_t>(n_), uu) + static_cast<std::size_t>(v - u);
}

VertexPair EdgeSpace::index_to_edge(EdgeIndex i) const {
    if (i < 1 || i > m_) throw DomainError("edge index " + std::to_string(i) + " out of range 1.." + std::to_string(m_));
    const std::size_t k = i - 1;
    const auto n = static_cast<std::size_t>(n_);
    // Largest u with row_offset(u) <= k, from the quadratic, then nudged for rounding.
    const double b = 2.0 * static_cast<double>(n) - 1.0;
    auto u = static_cast<std::size_t>(std::max(0.0, std::floor((b - std::sqrt(b * b - 8.0 * static_cast<double>(k))) / 2.0)));
    while (u > 0 && row_offset(n, u) > k) --u;
    while (u + 1 < n && row_offset(n, u + 1) <= k) ++u;
    const std::size_t v = u + 1 + (k - row_offset(n, u));
    return {static_cast<Vertex>(u), static_cast<Vertex>(v)};
}

Realization::Realization(EdgeSpace space) : space_(space), words_(space.words(), 0) {}

Realization Realization::complete(EdgeSpace space) {
    Realization r(space);
    for (auto& w : r.words_) w = ~std::uint64_t{0};
    if (const std::size_t tail = space.m() % 64; tail != 0) r.words_.back() = (std::uint64_t{1} << tail) - 1;
    return r;
}

Realization Realization::from_integer(EdgeSpace space, std::uint64_t bits) {
    if (space.m() > 64) throw DomainError("from_integer requires m <= 64");
    if (space.m() < 64 && (bits >> space.m()) != 0) throw DomainError("bits set beyond edge count");
    Realization r(space);
    if (!r.words_.empty()) r.words_[0] = bits;
    return r;
}

Realization Realization::from_bit_string(EdgeSpace space, std::string_view bits) {
    if (bits.size() != space.m())
        throw DomainError("bit string length " + std::to_string(bits.size()) + " != m=" + std::to_string(space.m()));
    Realization r(space);
    for (std::size_t j = 0; j < bits.size(); ++j) {
        if (bits[j] == '1') r.set(j + 1);
        else if (bits[j] != '0') throw DomainError("bit string may contain only '0' and '1'");
    }
    return r;
}

Realization Realization::from_hex(EdgeSpace space, std::string_view hex) {
    if (hex.size() != hex_digits(space.m()))
        throw DomainError("hex realization for m=" + std::to_string(space.m()) + " needs " +
                          std::to_string(hex_digits(space.m())) + " digits, got " + std::to_string(hex.size()));
    Realization r(space);
    for (std::size_t d = 0; d < hex.size(); ++d) {
        const int value = hex_value(hex[hex.size() - 1 - d]);
        if (value < 0) throw DomainError("invalid hex digit in realization");
        for (int b = 0; b < 4; ++b) {
            if (((value >> b) & 1) == 0) continue;
            const std::size_t edge = 4 * d + static_cast<std::size_t>(b) + 1;
            if (edge > space.m()) throw DomainError("hex realization sets bits beyond m");
            r.set(edge);
        }
    }
    return r;
}

bool Realization::test(EdgeIndex i) const {
    if (i < 1 || i > space_.m()) throw DomainError("edge index " + std::to_string(i) + " out of range");
    return (words_[(i - 1) / 64] >> ((i - 1) % 64)) & 1u;
}

void Realization::set(EdgeIndex i, bool present) {
    if (i < 1 || i > space_.m()) throw DomainError("edge index " + std::to_string(i) + " out of range");
    const std::uint64_t mask = std::uint64_t{1} << ((i - 1) % 64);
    if (present) words_[(i - 1) / 64] |= mask;
    else words_[(i - 1) / 64] &= ~mask;
}

std::size_t Realization::edge_count() const noexcept { return simd::popcount(words_); }

bool Realization::is_subset_of(const Realization& other) const {
    check_same_space(*this, other);
    for (std::size_t w = 0; w < words_.size(); ++w)
        if ((words_[w] & ~other.words_[w]) != 0) return false;
    return true;
}

std::uint64_t Realization::to_integer() const {
    if (space_.m() > 64) throw DomainError("to_integer requires m <= 64");
    return words_.empty() ? 0 : words_[0];
}

std::string Realization::to_hex() const { return words_to_hex(words_, space_.m()); }

std::string Realization::to_bit_string() const {
    std::string out(space_.m(), '0');
    for (std::size_t j = 0; j < out.size(); ++j)
        if (test(j + 1)) out[j] = '1';
    return out;
}

SuffixHistory::SuffixHistory(const Realization& bits, EdgeIndex start) : bits_(&bits), start_(start) {
    if (start < 1 || start > bits.m() + 1) throw DomainError("history start out of range");
}

bool SuffixHistory::present(EdgeIndex j) const {
    if (j < start_) throw PreconditionError("edge " + std::to_string(j) + " is not yet decided");
    return bits_->test(j);
}

std::size_t SuffixHistory::present_count() const noexcept {
    const auto words = bits_->words();
    const std::size_t first_bit = start_ - 1;  // zero-based position of e_start
    const std::size_t first_word = first_bit / 64;
    if (first_word >= words.size()) return 0;
    std::size_t total = static_cast<std::size_t>(std::popcount(words[first_word] & (~std::uint64_t{0} << (first_bit % 64))));
    total += simd::popcount(words.subspan(first_word + 1));
    return total;
}

std::size_t SuffixHistory::adjacent_present_count(EdgeIndex i) const {
    const EdgeSpace& sp = space();
    const auto [u, v] = sp.index_to_edge(i);
    std::size_t count = 0;
    for (Vertex w = 0; w < sp.n(); ++w) {
        if (w == u || w == v) continue;
        for (const Vertex end : {u, v}) {
            const EdgeIndex j = sp.edge_index(end, w);
            if (j >= start_ && bits_->test(j)) ++count;
        }
    }
    return count;
}

std::string SuffixHistory::to_hex() const {
    Realization decided(space());
    for (EdgeIndex j = start_; j <= space().m(); ++j)
        if (bits_->test(j)) decided.set(j);
    return decided.to_hex();
}

Realization graph_union(const Realization& a, const Realization& b) {
    check_same_space(a, b);
    Realization out(a.space());
    simd::or_into(a.words(), b.words(), out.mutable_words());
    return out;
}

Realization complement(const Realization& g) {
    const Realization all = Realization::complete(g.space());
    Realization out(g.space());
    simd::andnot_into(all.words(), g.words(), out.mutable_words());
    return out;
}

std::size_t adjacent_present_count(const Realization& g, EdgeIndex i) {
    // Every edge of g has index >= 1, so the full graph is the history from 1.
    return SuffixHistory(g, 1).adjacent_present_count(i);
}

std::vector<std::size_t> degree_histogram(const Realization& g) {
    const int n = g.n();
    std::vector<std::size_t> degree(static_cast<std::size_t>(n), 0);
    EdgeIndex i = 1;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex v = u + 1; v < n; ++v, ++i) {
            if (g.test(i)) {
                ++degree[static_cast<std::size_t>(u)];
                ++degree[static_cast<std::size_t>(v)];
            }
        }
    }
    std::vector<std::size_t> counts(static_cast<std::size_t>(n), 0);
    for (const std::size_t d : degree) ++counts[d];
    return counts;
}

}  // namespace probust
