#pragma once

// Random graphs defined by sequential conditionals: edge i is present with
// probability conditional(i, h), where h holds the decided edges i+1..m. The
// joint law is the chain-rule product over i = m down to 1. A model is
// p-robust when every conditional is at least its floor p.

#include "probust/graph.hpp"
#include "probust/rng.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace probust {

class EdgeModel {
public:
    virtual ~EdgeModel() = default;

    const EdgeSpace& space() const noexcept { return space_; }
    /// Robustness floor the model claims.
    double floor() const noexcept { return floor_; }

    /// Pr(edge i present | decided edges i+1..m). `history.start()` must be i+1.
    /// Must be a pure function of its arguments.
    virtual double conditional(EdgeIndex i, const SuffixHistory& history) const = 0;
    virtual std::string name() const = 0;

protected:
    EdgeModel(EdgeSpace space, double floor) : space_(space), floor_(floor) {}

private:
    EdgeSpace space_;
    double floor_;
};

using ModelPtr = std::shared_ptr<const EdgeModel>;
using ConditionalFn = std::function<double(EdgeIndex, const SuffixHistory&)>;

/// Independent edges with probability p.
ModelPtr er_model(int n, double p);
/// q = 1 - (k+1)/n^2, k = present decided edges. Floor 1/2.
ModelPtr global_count_model(int n);
/// q = 1/2 - 1/(k+5), k = present decided edges adjacent to e_i. Floor 3/10.
ModelPtr adjacency_count_model(int n);
/// Arbitrary user conditional with a declared floor.
ModelPtr function_model(EdgeSpace space, double floor, std::string name, ConditionalFn conditional);

double global_count_conditional(int n, std::size_t present_decided);
double adjacency_count_conditional(std::size_t adjacent_present);

/// One draw from the chain-rule joint, deciding edges m down to 1.
/// Throws ModelContractError if a conditional leaves [0,1].
Realization sample_direct(const EdgeModel& model, Rng& rng);

/// Anything that can draw realizations.
class Sampler {
public:
    virtual ~Sampler() = default;
    virtual const EdgeSpace& space() const noexcept = 0;
    virtual Realization sample(Rng& rng) const = 0;
    virtual std::string name() const = 0;
};

using SamplerPtr = std::shared_ptr<const Sampler>;

SamplerPtr model_sampler(ModelPtr model);

/// True iff every potential edge has at least `min_adjacent` present adjacent edges.
bool satisfies_adjacency_condition(const Realization& g, std::size_t min_adjacent = 3);

inline constexpr std::uint64_t default_rejection_budget = 1'000'000;

/// The adjacency-count model conditioned on satisfies_adjacency_condition.
/// There is no closed-form sequential conditional, so it only samples, by
/// rejection. Throws SamplingFailure when the budget runs out or the event is
/// empty (n < 4).
class ConditionedAdjacencySampler final : public Sampler {
public:
    explicit ConditionedAdjacencySampler(int n, std::uint64_t budget = default_rejection_budget);

    const EdgeSpace& space() const noexcept override { return base_->space(); }
    Realization sample(Rng& rng) const override;
    std::string name() const override;

    std::uint64_t budget() const noexcept { return budget_; }
    /// Floor claimed for this model; checked, not assumed (see exact.hpp).
    static constexpr double claimed_floor = 3.0 / 8.0;

private:
    ModelPtr base_;
    std::uint64_t budget_;
};

struct FloorCheck {
    double floor = 0.0;
    double min_conditional = 1.0;
    EdgeIndex argmin_edge = 0;
    std::string argmin_history;  // hex
    std::uint64_t histories_checked = 0;
    bool verified = false;
    /// First (edge, history) with conditional < floor, if any.
    std::optional<std::pair<EdgeIndex, std::string>> counterexample;
};

inline constexpr std::size_t exhaustive_floor_cap = 24;

/// Minimum conditional over every (i, history); requires m <= 24.
FloorCheck robustness_floor_check(const EdgeModel& model);
/// Random histories drawn with density uniform on [0,1]; any scale.
FloorCheck robustness_floor_check_randomized(const EdgeModel& model, std::uint64_t trials, Rng& rng);

}  // namespace probust
