#pragma once

// Constructive coupling of an independent random graph G(n, base) with any
// model whose conditionals never drop below `base`.
//
// Edges are processed from m down to 1. With q the model's conditional given
// the union's decided suffix, edge i enters the ER layer g1 with probability
// base and, independently, the patch layer g2 with probability q - p', where
// p' = base(1-q)/(1-base). Then Pr(edge in g1 | g2) = base + (q-p') - (q-p')base
// = q, so the union follows the model's chain-rule joint while g1 stays a
// product of independent base-coins. Since g1 is a subgraph of the union on
// every sample, any edge-monotone property held by g1 is held by the union.

#include "probust/graph.hpp"
#include "probust/models.hpp"
#include "probust/rng.hpp"

#include <cstdint>
#include <vector>

namespace probust {

/// p' = p(1-q)/(1-p). Requires 0 <= p <= q <= 1. At p = 1 (so q = 1) returns 0.
double p_prime(double p, double q);
/// q - p', equivalently (q-p)/(1-p). Same preconditions as p_prime.
double patch_probability(double p, double q);
/// |p + (q-p') - (q-p')p - q| with p' from p_prime.
double union_probability_identity(double p, double q);

struct CouplingParams {
    double base;
    ModelPtr model;
};

struct CouplingTriple {
    Realization g1;  // ER layer
    Realization g2;  // patch layer
    Realization u;   // g1 | g2
};

/// Conditionals that fall within this distance below `base` are treated as
/// equal to it; anything lower is a RobustnessViolation.
inline constexpr double robustness_tolerance = 1e-12;

/// One coupled draw. RNG order is frozen: for i = m..1, the g1 coin then the g2 coin.
/// Throws RobustnessViolation when a conditional is below base.
CouplingTriple generate_coupled(const CouplingParams& params, Rng& rng);

/// `count` triples; triple k uses derive_stream(master_seed, k).
std::vector<CouplingTriple> coupled_stream(const CouplingParams& params, std::uint64_t master_seed,
                                           std::size_t count);

}  // namespace probust
