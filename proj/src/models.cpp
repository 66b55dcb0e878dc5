#include "probust/models.hpp"

#include "probust/errors.hpp"

#include <cmath>

namespace probust {
namespace {

void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError(std::string(what) + " must lie in [0,1], got " + std::to_string(p));
}

class ErModel final : public EdgeModel {
public:
    ErModel(int n, double p) : EdgeModel(EdgeSpace(n), p), p_(p) {}
    double conditional(EdgeIndex, const SuffixHistory&) const override { return p_; }
    std::string name() const override { return "er(p=" + std::to_string(p_) + ")"; }

private:
    double p_;
};

class GlobalCountModel final : public EdgeModel {
public:
    explicit GlobalCountModel(int n) : EdgeModel(EdgeSpace(n), 0.5) {}
    double conditional(EdgeIndex, const SuffixHistory& history) const override {
        return global_count_conditional(space().n(), history.present_count());
    }
    std::string name() const override { return "global-count"; }
};

class AdjacencyCountModel final : public EdgeModel {
public:
    explicit AdjacencyCountModel(int n) : EdgeModel(EdgeSpace(n), 0.3) {}
    double conditional(EdgeIndex i, const SuffixHistory& history) const override {
        return adjacency_count_conditional(history.adjacent_present_count(i));
    }
    std::string name() const override { return "adjacency-count"; }
};

class FunctionModel final : public EdgeModel {
public:
    FunctionModel(EdgeSpace space, double floor, std::string name, ConditionalFn fn)
        : EdgeModel(space, floor), name_(std::move(name)), fn_(std::move(fn)) {}
    double conditional(EdgeIndex i, const SuffixHistory& history) const override { return fn_(i, history); }
    std::string name() const override { return name_; }

private:
    std::string name_;
    ConditionalFn fn_;
};

class ModelSampler final : public Sampler {
public:
    explicit ModelSampler(ModelPtr model) : model_(std::move(model)) {}
    const EdgeSpace& space() const noexcept override { return model_->space(); }
    Realization sample(Rng& rng) const override { return sample_direct(*model_, rng); }
    std::string name() const override { return model_->name(); }

private:
    ModelPtr model_;
};

void require_pairs(int n) {
    if (n < 2) throw DomainError("model needs n >= 2, got " + std::to_string(n));
}

void record(FloorCheck& check, const EdgeModel& model, EdgeIndex i, const SuffixHistory& history) {
    const double q = model.conditional(i, history);
    ++check.histories_checked;
    if (q < check.min_conditional || check.argmin_edge == 0) {
        check.min_conditional = q;
        check.argmin_edge = i;
        check.argmin_history = history.to_hex();
    }
    if (q < check.floor && !check.counterexample) check.counterexample.emplace(i, history.to_hex());
}

}  // namespace

ModelPtr er_model(int n, double p) {
    check_probability(p, "edge probability p");
    return std::make_shared<ErModel>(n, p);
}

ModelPtr global_count_model(int n) {
    require_pairs(n);
    return std::make_shared<GlobalCountModel>(n);
}

ModelPtr adjacency_count_model(int n) {
    require_pairs(n);
    return std::make_shared<AdjacencyCountModel>(n);
}

ModelPtr function_model(EdgeSpace space, double floor, std::string name, ConditionalFn conditional) {
    check_probability(floor, "floor");
    return std::make_shared<FunctionModel>(space, floor, std::move(name), std::move(conditional));
}

double global_count_conditional(int n, std::size_t present_decided) {
    const double nn = static_cast<double>(n) * static_cast<double>(n);
    return 1.0 - (static_cast<double>(present_decided) + 1.0) / nn;
}

double adjacency_count_conditional(std::size_t adjacent_present) {
    return 0.5 - 1.0 / (static_cast<double>(adjacent_present) + 5.0);
}

Realization sample_direct(const EdgeModel& model, Rng& rng) {
    Realization g(model.space());
    for (EdgeIndex i = model.space().m(); i >= 1; --i) {
        const double q = model.conditional(i, SuffixHistory(g, i + 1));
        if (!(q >= 0.0 && q <= 1.0))
            throw ModelContractError(model.name() + " returned conditional " + std::to_string(q) + " at edge " +
                                     std::to_string(i));
        if (bernoulli(rng, q)) g.set(i);
    }
    return g;
}

SamplerPtr model_sampler(ModelPtr model) { return std::make_shared<ModelSampler>(std::move(model)); }

bool satisfies_adjacency_condition(const Realization& g, std::size_t min_adjacent) {
    for (EdgeIndex i = 1; i <= g.m(); ++i)
        if (adjacent_present_count(g, i) < min_adjacent) return false;
    return true;
}

ConditionedAdjacencySampler::ConditionedAdjacencySampler(int n, std::uint64_t budget)
    : base_(adjacency_count_model(n)), budget_(budget) {
    if (budget == 0) throw DomainError("rejection budget must be positive");
}

Realization ConditionedAdjacencySampler::sample(Rng& rng) const {
    // Each edge has 2(n-2) potential neighbours; below 3 the event is empty.
    if (2 * (space().n() - 2) < 3)
        throw SamplingFailure("conditioning event is empty at n=" + std::to_string(space().n()), 0);
    for (std::uint64_t attempt = 0; attempt < budget_; ++attempt) {
        Realization g = sample_direct(*base_, rng);
        if (satisfies_adjacency_condition(g)) return g;
    }
    throw SamplingFailure("rejection budget exhausted for " + name(), budget_);
}

std::string ConditionedAdjacencySampler::name() const { return "adjacency-count-conditioned"; }

FloorCheck robustness_floor_check(const EdgeModel& model) {
    const std::size_t m = model.space().m();
    if (m > exhaustive_floor_cap) throw UnsupportedScale("exhaustive floor check", m, exhaustive_floor_cap);
    FloorCheck check;
    check.floor = model.floor();
    Realization bits(model.space());
    for (EdgeIndex i = m; i >= 1; --i) {
        const std::uint64_t histories = std::uint64_t{1} << (m - i);
        for (std::uint64_t a = 0; a < histories; ++a) {
            bits.mutable_words()[0] = a << i;  // edges i+1..m sit at bit positions i..m-1
            record(check, model, i, SuffixHistory(bits, i + 1));
        }
    }
    check.verified = !check.counterexample.has_value();
    return check;
}

FloorCheck robustness_floor_check_randomized(const EdgeModel& model, std::uint64_t trials, Rng& rng) {
    const std::size_t m = model.space().m();
    FloorCheck check;
    check.floor = model.floor();
    if (m == 0) {
        check.verified = true;
        return check;
    }
    for (std::uint64_t t = 0; t < trials; ++t) {
        const EdgeIndex i = 1 + static_cast<EdgeIndex>(rng() % m);
        const double density = uniform01(rng);
        Realization bits(model.space());
        for (EdgeIndex j = i + 1; j <= m; ++j)
            if (bernoulli(rng, density)) bits.set(j);
        record(check, model, i, SuffixHistory(bits, i + 1));
    }
    check.verified = !check.counterexample.has_value();
    return check;
}

}  // namespace probust
