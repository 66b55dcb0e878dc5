#include "probust/properties.hpp"

#include "probust/errors.hpp"
#include "probust/simd/kernels.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <limits>
#include <numeric>
#include <queue>

namespace probust {
namespace {

using Bits = std::vector<std::uint64_t>;

void require_cap(const Graph& g, int cap, const char* what) {
    if (g.n() > cap) throw UnsupportedScale(what, static_cast<std::size_t>(g.n()), static_cast<std::size_t>(cap));
}

bool any_bit(std::span<const std::uint64_t> b) {
    return std::any_of(b.begin(), b.end(), [](std::uint64_t w) { return w != 0; });
}

int first_bit(std::span<const std::uint64_t> b) {
    for (std::size_t w = 0; w < b.size(); ++w)
        if (b[w] != 0) return static_cast<int>(w * 64 + static_cast<std::size_t>(std::countr_zero(b[w])));
    return -1;
}

void clear_bit(Bits& b, int v) { b[static_cast<std::size_t>(v) / 64] &= ~(std::uint64_t{1} << (v % 64)); }
void set_bit(Bits& b, int v) { b[static_cast<std::size_t>(v) / 64] |= std::uint64_t{1} << (v % 64); }

/// Rows as 32-bit masks; only for graphs within the small-n caps.
std::vector<std::uint32_t> small_masks(const Graph& g) {
    std::vector<std::uint32_t> adj(static_cast<std::size_t>(g.n()));
    for (Vertex v = 0; v < g.n(); ++v) adj[static_cast<std::size_t>(v)] = static_cast<std::uint32_t>(g.row(v)[0]);
    return adj;
}

// ---- clique: bitset branch and bound with greedy-colouring bound ----

class CliqueSearch {
public:
    explicit CliqueSearch(const Graph& g) : g_(g), best_(1) {}

    int run() {
        Bits all(g_.row_words(), 0);
        for (Vertex v = 0; v < g_.n(); ++v) set_bit(all, v);
        expand(0, all);
        return best_;
    }

private:
    void expand(int size, Bits candidates) {
        // Colour classes in order; colour c bounds any clique drawn from classes <= c.
        std::vector<int> order;
        std::vector<int> colour;
        Bits uncoloured = candidates;
        Bits cls(candidates.size());
        int c = 0;
        const int threshold = best_ - size;  // vertices coloured below this cannot improve
        while (any_bit(uncoloured)) {
            ++c;
            cls = uncoloured;
            while (any_bit(cls)) {
                const int v = first_bit(cls);
                clear_bit(cls, v);
                clear_bit(uncoloured, v);
                simd::andnot_into(cls, g_.row(v), cls);
                if (c >= threshold) {
                    order.push_back(v);
                    colour.push_back(c);
                }
            }
        }
        Bits next(candidates.size());
        for (std::size_t idx = order.size(); idx-- > 0;) {
            if (size + colour[idx] <= best_) return;
            const int v = order[idx];
            simd::and_into(candidates, g_.row(v), next);
            if (!any_bit(next)) {
                best_ = std::max(best_, size + 1);
            } else {
                expand(size + 1, next);
            }
            clear_bit(candidates, v);
        }
    }

    const Graph& g_;
    int best_;
};

// ---- chromatic number: DSATUR branch and bound ----

class ColourSearch {
public:
    ColourSearch(const Graph& g, int lower, int upper)
        : adj_(small_masks(g)), n_(g.n()), lower_(lower), best_(upper), colour_(static_cast<std::size_t>(g.n()), -1) {}

    int run() {
        if (best_ > lower_) search(0, 0);
        return best_;
    }

private:
    std::uint32_t neighbour_colours(int v) const {
        std::uint32_t used = 0;
        for (std::uint32_t rest = adj_[static_cast<std::size_t>(v)]; rest; rest &= rest - 1) {
            const int c = colour_[static_cast<std::size_t>(std::countr_zero(rest))];
            if (c >= 0) used |= 1u << c;
        }
        return used;
    }

    int pick() const {
        int best_v = -1, best_sat = -1, best_deg = -1;
        for (int v = 0; v < n_; ++v) {
            if (colour_[static_cast<std::size_t>(v)] >= 0) continue;
            const int sat = std::popcount(neighbour_colours(v));
            int deg = 0;
            for (std::uint32_t rest = adj_[static_cast<std::size_t>(v)]; rest; rest &= rest - 1)
                if (colour_[static_cast<std::size_t>(std::countr_zero(rest))] < 0) ++deg;
            if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
                best_v = v;
                best_sat = sat;
                best_deg = deg;
            }
        }
        return best_v;
    }

    void search(int coloured, int used) {
        if (used >= best_) return;
        if (coloured == n_) {
            best_ = used;
            return;
        }
        const int v = pick();
        const std::uint32_t blocked = neighbour_colours(v);
        auto& slot = colour_[static_cast<std::size_t>(v)];
        for (int c = 0; c < used; ++c) {
            if (blocked & (1u << c)) continue;
            slot = c;
            search(coloured + 1, used);
            slot = -1;
            if (best_ == lower_) return;
        }
        if (used + 1 < best_) {
            slot = used;
            search(coloured + 1, used + 1);
            slot = -1;
        }
    }

    std::vector<std::uint32_t> adj_;
    int n_;
    int lower_;
    int best_;
    std::vector<int> colour_;
};

// ---- domination: iterative deepening over closed neighbourhoods ----

bool dominate(const std::vector<std::uint32_t>& closed, std::uint32_t full, std::uint32_t dominated, int budget) {
    if (dominated == full) return true;
    if (budget == 0) return false;
    const std::uint32_t open = full & ~dominated;
    int max_gain = 0;
    for (const std::uint32_t nb : closed) max_gain = std::max(max_gain, std::popcount(nb & open));
    if (max_gain * budget < std::popcount(open)) return false;
    // Branch on the undominated vertex with the fewest possible dominators.
    int target = -1, fewest = 64;
    for (std::uint32_t rest = open; rest; rest &= rest - 1) {
        const int v = std::countr_zero(rest);
        const int options = std::popcount(closed[static_cast<std::size_t>(v)]);
        if (options < fewest) {
            fewest = options;
            target = v;
        }
    }
    for (std::uint32_t rest = closed[static_cast<std::size_t>(target)]; rest; rest &= rest - 1) {
        const int w = std::countr_zero(rest);
        if (dominate(closed, full, dominated | closed[static_cast<std::size_t>(w)], budget - 1)) return true;
    }
    return false;
}

// ---- general matching: Edmonds' blossom algorithm ----

class Blossom {
public:
    explicit Blossom(const Graph& g) : n_(g.n()), adj_(static_cast<std::size_t>(g.n())) {
        for (Vertex u = 0; u < n_; ++u)
            for (Vertex v = 0; v < n_; ++v)
                if (u != v && g.adjacent(u, v)) adj_[static_cast<std::size_t>(u)].push_back(v);
        match_.assign(static_cast<std::size_t>(n_), -1);
    }

    int run() {
        for (int v = 0; v < n_; ++v) {
            if (match_[idx(v)] != -1) continue;
            for (int end = find_path(v); end != -1;) {
                const int pv = parent_[idx(end)];
                const int next = match_[idx(pv)];
                match_[idx(end)] = pv;
                match_[idx(pv)] = end;
                end = next;
            }
        }
        int matched = 0;
        for (const int m : match_) matched += m != -1;
        return matched / 2;
    }

private:
    static std::size_t idx(int v) { return static_cast<std::size_t>(v); }

    int lca(int a, int b) {
        std::vector<bool> seen(idx(n_), false);
        for (;;) {
            a = base_[idx(a)];
            seen[idx(a)] = true;
            if (match_[idx(a)] == -1) break;
            a = parent_[idx(match_[idx(a)])];
        }
        for (;;) {
            b = base_[idx(b)];
            if (seen[idx(b)]) return b;
            b = parent_[idx(match_[idx(b)])];
        }
    }

    void mark_path(int v, int b, int child) {
        while (base_[idx(v)] != b) {
            blossom_[idx(base_[idx(v)])] = blossom_[idx(base_[idx(match_[idx(v)])])] = true;
            parent_[idx(v)] = child;
            child = match_[idx(v)];
            v = parent_[idx(match_[idx(v)])];
        }
    }

    int find_path(int root) {
        used_.assign(idx(n_), false);
        parent_.assign(idx(n_), -1);
        base_.resize(idx(n_));
        std::iota(base_.begin(), base_.end(), 0);
        used_[idx(root)] = true;
        std::queue<int> queue;
        queue.push(root);
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop();
            for (const int to : adj_[idx(v)]) {
                if (base_[idx(v)] == base_[idx(to)] || match_[idx(v)] == to) continue;
                if (to == root || (match_[idx(to)] != -1 && parent_[idx(match_[idx(to)])] != -1)) {
                    const int top = lca(v, to);
                    blossom_.assign(idx(n_), false);
                    mark_path(v, top, to);
                    mark_path(to, top, v);
                    for (int i = 0; i < n_; ++i) {
                        if (!blossom_[idx(base_[idx(i)])]) continue;
                        base_[idx(i)] = top;
                        if (!used_[idx(i)]) {
                            used_[idx(i)] = true;
                            queue.push(i);
                        }
                    }
                } else if (parent_[idx(to)] == -1) {
                    parent_[idx(to)] = v;
                    if (match_[idx(to)] == -1) return to;
                    used_[idx(match_[idx(to)])] = true;
                    queue.push(match_[idx(to)]);
                }
            }
        }
        return -1;
    }

    int n_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> match_, parent_, base_;
    std::vector<bool> used_, blossom_;
};

int parse_int(std::string_view text, std::string_view spec) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
        throw DomainError("invalid threshold in property '" + std::string(spec) + "'");
    return value;
}

PropertyOracle thresholded(std::string name, Comparison cmp, int k, std::function<int(const Graph&)> quantity,
                           bool monotone) {
    PropertyOracle::Decide decide;
    if (cmp == Comparison::at_least) decide = [quantity, k](const Graph& g) { return quantity(g) >= k; };
    else decide = [quantity, k](const Graph& g) { return quantity(g) <= k; };
    return PropertyOracle(std::move(name), std::move(decide), monotone, std::make_pair(cmp, k));
}

}  // namespace

// ---- Graph ----

Graph::Graph(int n) : n_(n), row_words_(static_cast<std::size_t>(std::max(n, 1) + 63) / 64) {
    if (n < 1) throw DomainError("graph needs n >= 1");
    bits_.assign(row_words_ * static_cast<std::size_t>(n), 0);
}

Graph::Graph(const Realization& g) : Graph(g.n()) {
    EdgeIndex i = 1;
    const auto words = g.words();
    for (Vertex u = 0; u < n_; ++u) {
        for (Vertex v = u + 1; v < n_; ++v, ++i) {
            if ((words[(i - 1) / 64] >> ((i - 1) % 64)) & 1u) add_edge(u, v);
        }
    }
}

void Graph::add_edge(Vertex u, Vertex v) {
    if (u == v || u < 0 || v < 0 || u >= n_ || v >= n_) throw DomainError("invalid edge");
    row_ptr(u)[static_cast<std::size_t>(v) / 64] |= std::uint64_t{1} << (v % 64);
    row_ptr(v)[static_cast<std::size_t>(u) / 64] |= std::uint64_t{1} << (u % 64);
}

std::size_t Graph::degree(Vertex u) const noexcept { return simd::popcount(row(u)); }

std::size_t Graph::edge_count() const noexcept { return simd::popcount(bits_) / 2; }

Graph Graph::complement() const {
    Graph out(n_);
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v = u + 1; v < n_; ++v)
            if (!adjacent(u, v)) out.add_edge(u, v);
    return out;
}

Graph Graph::relabeled(std::span<const Vertex> order) const {
    if (order.size() != static_cast<std::size_t>(n_)) throw DomainError("relabel order has wrong length");
    Graph out(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (adjacent(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)])) out.add_edge(i, j);
    return out;
}

Realization Graph::to_realization() const {
    Realization r{EdgeSpace(n_)};
    EdgeIndex i = 1;
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v = u + 1; v < n_; ++v, ++i)
            if (adjacent(u, v)) r.set(i);
    return r;
}

// ---- exact invariants ----

int max_clique_size(const Graph& g) {
    require_cap(g, clique_cap, "max_clique_size");
    // Search high-degree vertices first: the colouring bound tightens sooner.
    std::vector<Vertex> order(static_cast<std::size_t>(g.n()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
    const Graph sorted = g.relabeled(order);
    return CliqueSearch(sorted).run();
}

int max_independent_set_size(const Graph& g) { return max_clique_size(g.complement()); }

int chromatic_number(const Graph& g) {
    require_cap(g, chromatic_cap, "chromatic_number");
    if (g.edge_count() == 0) return 1;
    return ColourSearch(g, max_clique_size(g), dsatur_color_count(g)).run();
}

int min_dominating_set_size(const Graph& g) {
    require_cap(g, dominating_cap, "min_dominating_set_size");
    std::vector<std::uint32_t> closed = small_masks(g);
    for (int v = 0; v < g.n(); ++v) closed[static_cast<std::size_t>(v)] |= 1u << v;
    const std::uint32_t full = g.n() == 32 ? ~0u : (1u << g.n()) - 1;
    for (int k = 1; k < g.n(); ++k)
        if (dominate(closed, full, 0, k)) return k;
    return g.n();
}

int diameter(const Graph& g) {
    const std::size_t words = g.row_words();
    Bits visited(words), frontier(words), next(words);
    int result = 0;
    for (Vertex s = 0; s < g.n(); ++s) {
        std::fill(visited.begin(), visited.end(), 0);
        std::fill(frontier.begin(), frontier.end(), 0);
        set_bit(visited, s);
        set_bit(frontier, s);
        int depth = 0;
        for (;;) {
            std::fill(next.begin(), next.end(), 0);
            for (std::size_t w = 0; w < words; ++w) {
                for (std::uint64_t rest = frontier[w]; rest; rest &= rest - 1) {
                    const auto v = static_cast<Vertex>(w * 64 + static_cast<std::size_t>(std::countr_zero(rest)));
                    simd::or_into(next, g.row(v), next);
                }
            }
            simd::andnot_into(next, visited, next);
            if (!any_bit(next)) break;
            ++depth;
            simd::or_into(visited, next, visited);
            std::swap(frontier, next);
        }
        result = std::max(result, depth);
    }
    return result;
}

bool is_connected(const Graph& g) {
    const std::size_t words = g.row_words();
    Bits visited(words), frontier(words), next(words);
    set_bit(visited, 0);
    set_bit(frontier, 0);
    for (;;) {
        std::fill(next.begin(), next.end(), 0);
        for (std::size_t w = 0; w < words; ++w) {
            for (std::uint64_t rest = frontier[w]; rest; rest &= rest - 1) {
                const auto v = static_cast<Vertex>(w * 64 + static_cast<std::size_t>(std::countr_zero(rest)));
                simd::or_into(next, g.row(v), next);
            }
        }
        simd::andnot_into(next, visited, next);
        if (!any_bit(next)) break;
        simd::or_into(visited, next, visited);
        std::swap(frontier, next);
    }
    return simd::popcount(visited) == static_cast<std::uint64_t>(g.n());
}

bool has_hamiltonian_cycle(const Graph& g) {
    require_cap(g, hamiltonian_cap, "has_hamiltonian_cycle");
    const int n = g.n();
    if (n < 3) return false;
    const auto adj = small_masks(g);
    // ends[mask]: endpoints of paths from vertex 0 that visit exactly `mask`.
    std::vector<std::uint32_t> ends(std::size_t{1} << n, 0);
    ends[1] = 1;
    const std::uint32_t full = (1u << n) - 1;
    for (std::uint32_t mask = 1; mask <= full; mask += 2) {
        for (std::uint32_t rest = ends[mask]; rest; rest &= rest - 1) {
            const int v = std::countr_zero(rest);
            for (std::uint32_t ext = adj[static_cast<std::size_t>(v)] & ~mask; ext; ext &= ext - 1)
                ends[mask | (ext & -ext)] |= ext & -ext;
        }
    }
    return (ends[full] & adj[0]) != 0;
}

int max_matching_size(const Graph& g) {
    require_cap(g, matching_cap, "max_matching_size");
    return Blossom(g).run();
}

int longest_cycle_length(const Graph& g) {
    require_cap(g, longest_cycle_cap, "longest_cycle_length");
    const int n = g.n();
    if (n < 3) return 0;
    const auto adj = small_masks(g);
    // ends[mask]: endpoints of paths from the lowest vertex of mask covering mask.
    std::vector<std::uint32_t> ends(std::size_t{1} << n, 0);
    for (int s = 0; s < n; ++s) ends[std::size_t{1} << s] = 1u << s;
    int best = 0;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        const std::uint32_t reach = ends[mask];
        if (reach == 0) continue;
        const int s = std::countr_zero(mask);
        const int size = std::popcount(mask);
        if (size >= 3 && size > best && (reach & adj[static_cast<std::size_t>(s)]) != 0) best = size;
        const std::uint32_t above = ~((2u << s) - 1);
        for (std::uint32_t rest = reach; rest; rest &= rest - 1) {
            const int v = std::countr_zero(rest);
            for (std::uint32_t ext = adj[static_cast<std::size_t>(v)] & ~mask & above; ext; ext &= ext - 1)
                ends[mask | (ext & -ext)] |= ext & -ext;
        }
    }
    return best;
}

// ---- heuristics ----

int greedy_clique_size(const Graph& g) {
    int best = 1;
    Bits candidates(g.row_words());
    for (Vertex start = 0; start < g.n(); ++start) {
        std::copy(g.row(start).begin(), g.row(start).end(), candidates.begin());
        int size = 1;
        while (any_bit(candidates)) {
            int pick = -1;
            std::uint64_t pick_links = 0;
            for (std::size_t w = 0; w < candidates.size(); ++w) {
                for (std::uint64_t rest = candidates[w]; rest; rest &= rest - 1) {
                    const auto v = static_cast<Vertex>(w * 64 + static_cast<std::size_t>(std::countr_zero(rest)));
                    const std::uint64_t links = simd::and_popcount(candidates, g.row(v));
                    if (pick < 0 || links > pick_links) {
                        pick = v;
                        pick_links = links;
                    }
                }
            }
            simd::and_into(candidates, g.row(pick), candidates);
            ++size;
        }
        best = std::max(best, size);
    }
    return best;
}

int dsatur_color_count(const Graph& g) {
    const int n = g.n();
    std::vector<int> colour(static_cast<std::size_t>(n), -1);
    std::vector<std::vector<bool>> seen(static_cast<std::size_t>(n));
    int used = 0;
    for (int step = 0; step < n; ++step) {
        int pick = -1, pick_sat = -1;
        std::size_t pick_deg = 0;
        for (int v = 0; v < n; ++v) {
            if (colour[static_cast<std::size_t>(v)] >= 0) continue;
            const auto& s = seen[static_cast<std::size_t>(v)];
            const int sat = static_cast<int>(std::count(s.begin(), s.end(), true));
            const std::size_t deg = g.degree(v);
            if (sat > pick_sat || (sat == pick_sat && deg > pick_deg)) {
                pick = v;
                pick_sat = sat;
                pick_deg = deg;
            }
        }
        auto& s = seen[static_cast<std::size_t>(pick)];
        int c = 0;
        while (c < static_cast<int>(s.size()) && s[static_cast<std::size_t>(c)]) ++c;
        colour[static_cast<std::size_t>(pick)] = c;
        used = std::max(used, c + 1);
        for (int w = 0; w < n; ++w) {
            if (w == pick || !g.adjacent(pick, w)) continue;
            auto& sw = seen[static_cast<std::size_t>(w)];
            if (sw.size() <= static_cast<std::size_t>(c)) sw.resize(static_cast<std::size_t>(c) + 1, false);
            sw[static_cast<std::size_t>(c)] = true;
        }
    }
    return used;
}

int greedy_dominating_set_size(const Graph& g) {
    const std::size_t words = g.row_words();
    Bits open(words, 0), closed(words);
    for (Vertex v = 0; v < g.n(); ++v) set_bit(open, v);
    int size = 0;
    while (any_bit(open)) {
        int pick = -1;
        std::uint64_t gain = 0;
        for (Vertex v = 0; v < g.n(); ++v) {
            std::copy(g.row(v).begin(), g.row(v).end(), closed.begin());
            set_bit(closed, v);
            const std::uint64_t here = simd::and_popcount(closed, open);
            if (pick < 0 || here > gain) {
                pick = v;
                gain = here;
            }
        }
        std::copy(g.row(pick).begin(), g.row(pick).end(), closed.begin());
        set_bit(closed, pick);
        simd::andnot_into(open, closed, open);
        ++size;
    }
    return size;
}

// ---- oracles ----

PropertyOracle::PropertyOracle(std::string name, Decide decide, bool declared_monotone,
                               std::optional<std::pair<Comparison, int>> threshold)
    : name_(std::move(name)), decide_(std::move(decide)), monotone_(declared_monotone), threshold_(threshold) {}

std::string PropertyOracle::spec() const {
    if (!threshold_) return name_;
    return name_ + (threshold_->first == Comparison::at_least ? ">=" : "<=") + std::to_string(threshold_->second);
}

PropertyOracle clique_at_least(int k) {
    return thresholded("clique", Comparison::at_least, k, [](const Graph& g) { return max_clique_size(g); }, true);
}
PropertyOracle chromatic_at_least(int k) {
    return thresholded("chrom", Comparison::at_least, k, [](const Graph& g) { return chromatic_number(g); }, true);
}
PropertyOracle matching_at_least(int k) {
    return thresholded("match", Comparison::at_least, k, [](const Graph& g) { return max_matching_size(g); }, true);
}
PropertyOracle longest_cycle_at_least(int k) {
    return thresholded("cycle", Comparison::at_least, k, [](const Graph& g) { return longest_cycle_length(g); }, true);
}
PropertyOracle edges_at_least(int k) {
    return thresholded("edges", Comparison::at_least, k,
                       [](const Graph& g) { return static_cast<int>(g.edge_count()); }, true);
}
PropertyOracle diameter_at_most(int k) {
    return thresholded("diam", Comparison::at_most, k,
                       [](const Graph& g) { return is_connected(g) ? diameter(g) : std::numeric_limits<int>::max(); },
                       true);
}
PropertyOracle dominating_set_at_most(int k) {
    return thresholded("domset", Comparison::at_most, k, [](const Graph& g) { return min_dominating_set_size(g); },
                       true);
}
PropertyOracle independent_set_at_most(int k) {
    return thresholded("indep", Comparison::at_most, k, [](const Graph& g) { return max_independent_set_size(g); },
                       true);
}
PropertyOracle hamiltonian() {
    return PropertyOracle("ham", [](const Graph& g) { return has_hamiltonian_cycle(g); }, true);
}
PropertyOracle connected() {
    return PropertyOracle("connected", [](const Graph& g) { return is_connected(g); }, true);
}
PropertyOracle always_true() {
    return PropertyOracle("true", [](const Graph&) { return true; }, true);
}
PropertyOracle exactly_edges(int k) {
    return PropertyOracle("exactly-" + std::to_string(k) + "-edges",
                          [k](const Graph& g) { return g.edge_count() == static_cast<std::size_t>(k); }, false);
}

PropertyOracle parse_property(std::string_view spec) {
    if (spec == "ham") return hamiltonian();
    if (spec == "connected") return connected();
    if (spec == "true") return always_true();
    constexpr std::string_view exact_prefix = "exactly-", exact_suffix = "-edges";
    if (spec.starts_with(exact_prefix) && spec.ends_with(exact_suffix) &&
        spec.size() > exact_prefix.size() + exact_suffix.size()) {
        const auto digits = spec.substr(exact_prefix.size(), spec.size() - exact_prefix.size() - exact_suffix.size());
        return exactly_edges(parse_int(digits, spec));
    }
    const auto op = spec.find_first_of("<>");
    if (op == std::string_view::npos || op + 1 >= spec.size() || spec[op + 1] != '=')
        throw DomainError("unknown property '" + std::string(spec) + "'");
    const std::string_view name = spec.substr(0, op);
    const Comparison cmp = spec[op] == '>' ? Comparison::at_least : Comparison::at_most;
    const int k = parse_int(spec.substr(op + 2), spec);

    struct Family {
        std::string_view name;
        Comparison monotone_direction;
        PropertyOracle (*make)(int);
        int (*quantity)(const Graph&);
    };
    static const Family families[] = {
        {"clique", Comparison::at_least, clique_at_least, max_clique_size},
        {"chrom", Comparison::at_least, chromatic_at_least, chromatic_number},
        {"match", Comparison::at_least, matching_at_least, max_matching_size},
        {"cycle", Comparison::at_least, longest_cycle_at_least, longest_cycle_length},
        {"edges", Comparison::at_least, edges_at_least, [](const Graph& g) { return static_cast<int>(g.edge_count()); }},
        {"diam", Comparison::at_most, diameter_at_most,
         [](const Graph& g) { return is_connected(g) ? diameter(g) : std::numeric_limits<int>::max(); }},
        {"domset", Comparison::at_most, dominating_set_at_most, min_dominating_set_size},
        {"indep", Comparison::at_most, independent_set_at_most, max_independent_set_size},
    };
    for (const Family& f : families) {
        if (f.name != name) continue;
        if (cmp == f.monotone_direction) return f.make(k);
        // Reverse direction parses, but is not closed under edge addition.
        return thresholded(std::string(name), cmp, k, f.quantity, false);
    }
    throw DomainError("unknown property '" + std::string(spec) + "'");
}

std::vector<PropertyOracle> monotone_oracles_for(int n) {
    std::vector<PropertyOracle> out;
    for (int k = 2; k <= n; ++k) out.push_back(clique_at_least(k));
    out.push_back(connected());
    for (int k = 1; k < n; ++k) out.push_back(diameter_at_most(k));
    if (n <= dominating_cap)
        for (int k = 1; k < n; ++k) out.push_back(dominating_set_at_most(k));
    if (n <= matching_cap)
        for (int k = 1; k <= n / 2; ++k) out.push_back(matching_at_least(k));
    if (n <= chromatic_cap)
        for (int k = 2; k <= n; ++k) out.push_back(chromatic_at_least(k));
    if (n <= hamiltonian_cap) out.push_back(hamiltonian());
    if (n <= longest_cycle_cap)
        for (int k = 3; k <= n; ++k) out.push_back(longest_cycle_at_least(k));
    for (int k = 1; k < n; ++k) out.push_back(independent_set_at_most(k));
    return out;
}

MonotoneCertificate certify_monotone(const PropertyOracle& oracle, int n, std::uint64_t trials, Rng& rng) {
    const EdgeSpace space(n);
    MonotoneCertificate cert;
    std::vector<EdgeIndex> absent;
    for (std::uint64_t t = 0; t < trials; ++t) {
        ++cert.trials;
        const double density = uniform01(rng);
        Realization g(space);
        for (EdgeIndex i = 1; i <= space.m(); ++i)
            if (bernoulli(rng, density)) g.set(i);
        if (!oracle.decide(g)) continue;
        ++cert.satisfied_starts;
        absent.clear();
        for (EdgeIndex i = 1; i <= space.m(); ++i)
            if (!g.test(i)) absent.push_back(i);
        // Fisher-Yates with the raw engine; std::shuffle's draw pattern is library-specific.
        for (std::size_t j = absent.size(); j > 1; --j) std::swap(absent[j - 1], absent[rng() % j]);
        const std::size_t adds = absent.empty() ? 0 : 1 + static_cast<std::size_t>(rng() % absent.size());
        for (std::size_t a = 0; a < adds; ++a) {
            Realization before = g;
            g.set(absent[a]);
            ++cert.additions;
            if (!oracle.decide(g)) {
                cert.passed = false;
                cert.counterexample = MonotoneCounterexample{std::move(before), g, absent[a]};
                return cert;
            }
        }
    }
    return cert;
}

}  // namespace probust
