#pragma once

// Exhaustive enumeration over all 2^m realizations (and all 4^m coin outcomes
// of the coupling) for tiny graphs. Tables are indexed by the integer value of
// the realization's bit vector. Construction follows the sampling order, edge
// m down to 1, so each intermediate table is the law of the edges decided so
// far and can be compared level by level.

#include "probust/coupling.hpp"
#include "probust/graph.hpp"
#include "probust/models.hpp"
#include "probust/properties.hpp"

#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace probust {

inline constexpr std::size_t exact_joint_cap = 21;     // n = 7
inline constexpr std::size_t exact_coupling_cap = 10;  // n = 5
inline constexpr double exact_tolerance = 1e-12;

class ExactDistribution {
public:
    ExactDistribution(EdgeSpace space, std::vector<double> probs);

    const EdgeSpace& space() const noexcept { return space_; }
    std::span<const double> probs() const noexcept { return probs_; }
    std::size_t size() const noexcept { return probs_.size(); }

    double probability(const Realization& g) const;
    double total() const;
    /// Pr(edge i present).
    double edge_marginal(EdgeIndex i) const;

    /// CSV with header "realization,probability"; hex realizations, %.17g probabilities.
    void write_csv(std::ostream& out) const;

private:
    EdgeSpace space_;
    std::vector<double> probs_;
};

/// Chain-rule joint of a sequential model. Requires m <= 21.
ExactDistribution exact_joint(const EdgeModel& model);

/// Independent edges with probability p, from the product formula directly.
ExactDistribution product_distribution(EdgeSpace space, double p);

/// Law of edges i..m: the joint with edges 1..i-1 summed out. Index bit 0 is edge i.
std::vector<double> suffix_marginal(const ExactDistribution& dist, EdgeIndex i);

/// Restrict to realizations satisfying `event` and renormalize.
/// Throws DomainError if the event has probability zero.
ExactDistribution condition_on(const ExactDistribution& dist, const std::function<bool(const Realization&)>& event,
                               double* event_probability = nullptr);

/// Half the L1 distance. Spaces must match.
double tv_distance(const ExactDistribution& a, const ExactDistribution& b);
double tv_distance(std::span<const double> a, std::span<const double> b);

double exact_probability(const ExactDistribution& dist, const PropertyOracle& oracle);

/// Comparison of the coupling's partial tables after deciding edges level..m.
struct CouplingLevelCheck {
    EdgeIndex level;
    double tv_union;  // union of the two layers vs the model's law of those edges
    double tv_g1;     // ER layer vs independent base-coins on those edges
};

/// Exact law of (g1, g2) under the coupling. Table entry (a, b) has index a * 2^m + b.
class CouplingJoint {
public:
    CouplingJoint(EdgeSpace space, std::vector<double> table, std::vector<CouplingLevelCheck> levels);

    const EdgeSpace& space() const noexcept { return space_; }
    std::span<const double> table() const noexcept { return table_; }
    const std::vector<CouplingLevelCheck>& levels() const noexcept { return levels_; }

    ExactDistribution marginal_g1() const;
    ExactDistribution marginal_g2() const;
    ExactDistribution marginal_union() const;

private:
    EdgeSpace space_;
    std::vector<double> table_;
    std::vector<CouplingLevelCheck> levels_;
};

/// Enumerates every coin outcome of the coupling, weighting each by its
/// probability, with the model's conditional evaluated on the union's decided
/// suffix. Requires m <= 10. Throws RobustnessViolation like generate_coupled.
CouplingJoint exact_coupling_joint(const CouplingParams& params);

struct DominationCheck {
    double prob_er = 0.0;
    double prob_model = 0.0;
    bool holds = false;
};

/// Pr_ER(base)(Q) <= Pr_model(Q) + 1e-12, both sides exact.
/// Requires base <= model.floor() and a monotone oracle.
DominationCheck exact_domination_check(const EdgeModel& model, double base, const PropertyOracle& oracle);

/// Exact probe of the conditioned adjacency model's per-edge probabilities.
struct ConditionedFloorReport {
    int n = 0;
    double claimed_floor = 3.0 / 8.0;
    double event_probability = 0.0;       // Pr(condition) under the unconditioned model
    double min_marginal = 1.0;            // min over edges of Pr(e)
    double min_sequential = 1.0;          // min of Pr(e_i | decided suffix), positive-probability suffixes
    double min_full_conditional = 1.0;    // min of Pr(e_i | all other edges), positive-probability contexts
    bool marginal_meets_claim = false;
    bool sequential_meets_claim = false;
    bool full_meets_claim = false;
};

ConditionedFloorReport conditioned_adjacency_floor(int n);

}  // namespace probust
