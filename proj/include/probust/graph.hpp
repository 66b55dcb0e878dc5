#pragma once

// Labeled graphs on n vertices as bit vectors over the m = n(n-1)/2 potential
// edges.
//
// Edge order is frozen: pairs (u, v) with u < v are numbered lexicographically
// starting at 1, so (0,1) -> 1, (0,2) -> 2, ..., (n-2,n-1) -> m. Samplers and
// the coupling decide edges from index m down to 1, and history-dependent
// models are defined relative to this order.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace probust {

using EdgeIndex = std::size_t;  // 1-based
using Vertex = int;              // 0-based

struct VertexPair {
    Vertex u;
    Vertex v;
    friend bool operator==(const VertexPair&, const VertexPair&) = default;
};

class EdgeSpace {
public:
    explicit EdgeSpace(int n);

    int n() const noexcept { return n_; }
    std::size_t m() const noexcept { return m_; }
    std::size_t words() const noexcept { return (m_ + 63) / 64; }

    /// Index of the unordered pair {u, v}; requires u != v, both in range.
    EdgeIndex edge_index(Vertex u, Vertex v) const;
    /// Inverse of edge_index; returns u < v.
    VertexPair index_to_edge(EdgeIndex i) const;

    friend bool operator==(const EdgeSpace&, const EdgeSpace&) = default;

private:
    int n_;
    std::size_t m_;
};

/// One outcome of a random graph: bit i set iff edge e_i is present.
/// Bits past m are always zero.
class Realization {
public:
    explicit Realization(EdgeSpace space);

    static Realization complete(EdgeSpace space);
    /// Low m bits of `bits`; requires m <= 64.
    static Realization from_integer(EdgeSpace space, std::uint64_t bits);
    /// Characters '0'/'1', position j holding edge j+1. Length must equal m.
    static Realization from_bit_string(EdgeSpace space, std::string_view bits);
    /// Lowercase hex, most significant digit first, least significant bit = edge 1.
    static Realization from_hex(EdgeSpace space, std::string_view hex);

    const EdgeSpace& space() const noexcept { return space_; }
    int n() const noexcept { return space_.n(); }
    std::size_t m() const noexcept { return space_.m(); }

    bool test(EdgeIndex i) const;
    bool has_edge(Vertex u, Vertex v) const { return test(space_.edge_index(u, v)); }
    void set(EdgeIndex i, bool present = true);

    std::size_t edge_count() const noexcept;
    bool is_subset_of(const Realization& other) const;

    std::span<const std::uint64_t> words() const noexcept { return words_; }
    std::span<std::uint64_t> mutable_words() noexcept { return words_; }
    /// Value of the bit vector; requires m <= 64.
    std::uint64_t to_integer() const;

    std::string to_hex() const;
    std::string to_bit_string() const;

    friend bool operator==(const Realization&, const Realization&) = default;

private:
    EdgeSpace space_;
    std::vector<std::uint64_t> words_;
};

/// Read-only view of the already decided edges e_{start}, ..., e_m while edge
/// start-1 is being decided. Does not own the bits; the viewed realization
/// must outlive it. start == m+1 means nothing has been decided yet.
class SuffixHistory {
public:
    SuffixHistory(const Realization& bits, EdgeIndex start);

    const EdgeSpace& space() const noexcept { return bits_->space(); }
    EdgeIndex start() const noexcept { return start_; }
    bool empty() const noexcept { return start_ == bits_->m() + 1; }

    /// Requires j >= start.
    bool present(EdgeIndex j) const;
    /// Number of decided edges that are present.
    std::size_t present_count() const noexcept;
    /// Decided present edges sharing exactly one endpoint with e_i.
    std::size_t adjacent_present_count(EdgeIndex i) const;

    /// Hex of the decided part (undecided positions reported as absent).
    std::string to_hex() const;

private:
    const Realization* bits_;
    EdgeIndex start_;
};

/// Bitwise OR; the merge rule for an edge present in both inputs.
Realization graph_union(const Realization& a, const Realization& b);
Realization complement(const Realization& g);

/// Present edges sharing exactly one endpoint with e_i (e_i itself excluded).
std::size_t adjacent_present_count(const Realization& g, EdgeIndex i);

/// counts[d] = number of vertices of degree d, for d in 0..n-1.
std::vector<std::size_t> degree_histogram(const Realization& g);

}  // namespace probust
