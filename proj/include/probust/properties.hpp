#pragma once

// Exact graph invariants and the thresholded monotone properties built on them.
//
// Conventions: the clique number of an edgeless graph on n >= 1 vertices is 1;
// diameter() is the largest diameter over connected components (a single
// vertex has diameter 0); longest_cycle_length() of an acyclic graph is 0.
// Algorithms with exponential cost carry a hard vertex cap and throw
// UnsupportedScale above it.

#include "probust/graph.hpp"
#include "probust/rng.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace probust {

/// Adjacency bitsets, one row of ceil(n/64) words per vertex.
class Graph {
public:
    explicit Graph(int n);
    explicit Graph(const Realization& g);

    int n() const noexcept { return n_; }
    std::size_t row_words() const noexcept { return row_words_; }
    std::span<const std::uint64_t> row(Vertex u) const noexcept {
        return {bits_.data() + static_cast<std::size_t>(u) * row_words_, row_words_};
    }
    bool adjacent(Vertex u, Vertex v) const noexcept {
        return (row(u)[static_cast<std::size_t>(v) / 64] >> (static_cast<std::size_t>(v) % 64)) & 1u;
    }
    void add_edge(Vertex u, Vertex v);
    std::size_t degree(Vertex u) const noexcept;
    std::size_t edge_count() const noexcept;

    Graph complement() const;
    /// Vertex i of the result is vertex order[i] of this graph.
    Graph relabeled(std::span<const Vertex> order) const;
    Realization to_realization() const;

private:
    std::uint64_t* row_ptr(Vertex u) noexcept { return bits_.data() + static_cast<std::size_t>(u) * row_words_; }

    int n_;
    std::size_t row_words_;
    std::vector<std::uint64_t> bits_;
};

inline constexpr int clique_cap = 512;
inline constexpr int chromatic_cap = 20;
inline constexpr int dominating_cap = 26;
inline constexpr int hamiltonian_cap = 20;
inline constexpr int matching_cap = 26;
inline constexpr int longest_cycle_cap = 16;

int max_clique_size(const Graph& g);
int max_independent_set_size(const Graph& g);
int chromatic_number(const Graph& g);
int min_dominating_set_size(const Graph& g);
int diameter(const Graph& g);
bool is_connected(const Graph& g);
bool has_hamiltonian_cycle(const Graph& g);
int max_matching_size(const Graph& g);
int longest_cycle_length(const Graph& g);

// Heuristics for scales where the exact routines are capped. Reporting only.
int greedy_clique_size(const Graph& g);           // lower bound on the clique number
int dsatur_color_count(const Graph& g);           // upper bound on the chromatic number
int greedy_dominating_set_size(const Graph& g);   // upper bound on the domination number

enum class Comparison { at_least, at_most };

/// A graph property with an exact decision procedure. Thresholded oracles
/// print as "<name>>=<k>" or "<name><=<k>"; boolean ones as a bare name.
class PropertyOracle {
public:
    using Decide = std::function<bool(const Graph&)>;

    PropertyOracle(std::string name, Decide decide, bool declared_monotone,
                   std::optional<std::pair<Comparison, int>> threshold = std::nullopt);

    bool decide(const Graph& g) const { return decide_(g); }
    bool decide(const Realization& g) const { return decide_(Graph(g)); }

    const std::string& name() const noexcept { return name_; }
    /// Closed under edge addition by construction. Certification can refute this.
    bool declared_monotone() const noexcept { return monotone_; }
    const std::optional<std::pair<Comparison, int>>& threshold() const noexcept { return threshold_; }
    std::string spec() const;

private:
    std::string name_;
    Decide decide_;
    bool monotone_;
    std::optional<std::pair<Comparison, int>> threshold_;
};

PropertyOracle clique_at_least(int k);
PropertyOracle chromatic_at_least(int k);
PropertyOracle matching_at_least(int k);
PropertyOracle longest_cycle_at_least(int k);
PropertyOracle edges_at_least(int k);
/// Connected with diameter <= k. A disconnected graph counts as infinite
/// diameter here, which keeps the property closed under edge addition.
PropertyOracle diameter_at_most(int k);
PropertyOracle dominating_set_at_most(int k);
PropertyOracle independent_set_at_most(int k);
PropertyOracle hamiltonian();
PropertyOracle connected();
PropertyOracle always_true();
/// Non-monotone on purpose; exists to exercise certification.
PropertyOracle exactly_edges(int k);

/// Parses the property grammar: "<name>>=<k>", "<name><=<k>", or a bare name.
/// Names: clique chrom match cycle edges diam domset indep; bare: ham connected
/// true exactly-<k>-edges. Throws DomainError on anything else.
PropertyOracle parse_property(std::string_view spec);

/// Every shipped monotone oracle that is meaningful at n vertices and within
/// all scale caps.
std::vector<PropertyOracle> monotone_oracles_for(int n);

struct MonotoneCounterexample {
    Realization before;
    Realization after;
    EdgeIndex added;
};

struct MonotoneCertificate {
    bool passed = true;
    std::uint64_t trials = 0;
    std::uint64_t satisfied_starts = 0;  // trials whose start graph had the property
    std::uint64_t additions = 0;          // edge additions checked
    std::optional<MonotoneCounterexample> counterexample;
};

/// Randomized check of closure under edge addition: draw a graph with a random
/// density; if it has the property, add absent edges one at a time in random
/// order and require the property to persist. Stops at the first violation.
MonotoneCertificate certify_monotone(const PropertyOracle& oracle, int n, std::uint64_t trials, Rng& rng);

}  // namespace probust
