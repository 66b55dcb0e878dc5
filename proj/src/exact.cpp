#include "probust/exact.hpp"

#include "probust/errors.hpp"
#include "probust/simd/kernels.hpp"

#include <bit>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace probust {
namespace {

void require_joint_cap(std::size_t m) {
    if (m > exact_joint_cap) throw UnsupportedScale("exact joint enumeration (m)", m, exact_joint_cap);
}

double checked_conditional(const EdgeModel& model, EdgeIndex i, const SuffixHistory& h) {
    const double q = model.conditional(i, h);
    if (!(q >= 0.0 && q <= 1.0))
        throw ModelContractError(model.name() + " returned conditional " + std::to_string(q) + " at edge " +
                                 std::to_string(i));
    return q;
}

constexpr double conditioned_slack = 1e-9;

}  // namespace

ExactDistribution::ExactDistribution(EdgeSpace space, std::vector<double> probs)
    : space_(space), probs_(std::move(probs)) {
    require_joint_cap(space_.m());
    if (probs_.size() != (std::size_t{1} << space_.m())) throw DomainError("probability table has wrong size");
}

double ExactDistribution::probability(const Realization& g) const {
    if (!(g.space() == space_)) throw DomainError("realization from a different edge space");
    return probs_[g.to_integer()];
}

double ExactDistribution::total() const {
    double sum = 0.0;
    for (const double p : probs_) sum += p;
    return sum;
}

double ExactDistribution::edge_marginal(EdgeIndex i) const {
    if (i < 1 || i > space_.m()) throw DomainError("edge index out of range");
    const std::uint64_t bit = std::uint64_t{1} << (i - 1);
    double sum = 0.0;
    for (std::uint64_t a = 0; a < probs_.size(); ++a)
        if (a & bit) sum += probs_[a];
    return sum;
}

void ExactDistribution::write_csv(std::ostream& out) const {
    out << "realization,probability\n";
    char buf[64];
    for (std::uint64_t a = 0; a < probs_.size(); ++a) {
        std::snprintf(buf, sizeof buf, "%.17g", probs_[a]);
        out << Realization::from_integer(space_, a).to_hex() << ',' << buf << '\n';
    }
}

ExactDistribution exact_joint(const EdgeModel& model) {
    const std::size_t m = model.space().m();
    require_joint_cap(m);
    std::vector<double> table{1.0};
    Realization bits(model.space());
    for (EdgeIndex i = m; i >= 1; --i) {
        std::vector<double> next(table.size() * 2);
        for (std::uint64_t key = 0; key < table.size(); ++key) {
            bits.mutable_words()[0] = key << i;
            const double q = checked_conditional(model, i, SuffixHistory(bits, i + 1));
            next[(key << 1) | 1] = table[key] * q;
            next[key << 1] = table[key] * (1.0 - q);
        }
        table = std::move(next);
    }
    return ExactDistribution(model.space(), std::move(table));
}

ExactDistribution product_distribution(EdgeSpace space, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("edge probability must lie in [0,1]");
    require_joint_cap(space.m());
    const auto m = static_cast<int>(space.m());
    std::vector<double> probs(std::size_t{1} << m);
    for (std::uint64_t a = 0; a < probs.size(); ++a) {
        const int k = std::popcount(a);
        probs[a] = std::pow(p, k) * std::pow(1.0 - p, m - k);
    }
    return ExactDistribution(space, std::move(probs));
}

std::vector<double> suffix_marginal(const ExactDistribution& dist, EdgeIndex i) {
    const std::size_t m = dist.space().m();
    if (i < 1 || i > m + 1) throw DomainError("suffix level out of range");
    std::vector<double> out(std::size_t{1} << (m - i + 1), 0.0);
    const auto probs = dist.probs();
    for (std::uint64_t a = 0; a < probs.size(); ++a) out[a >> (i - 1)] += probs[a];
    return out;
}

ExactDistribution condition_on(const ExactDistribution& dist, const std::function<bool(const Realization&)>& event,
                               double* event_probability) {
    std::vector<double> probs(dist.probs().begin(), dist.probs().end());
    double mass = 0.0;
    for (std::uint64_t a = 0; a < probs.size(); ++a) {
        if (probs[a] > 0.0 && event(Realization::from_integer(dist.space(), a))) mass += probs[a];
        else probs[a] = 0.0;
    }
    if (event_probability) *event_probability = mass;
    if (mass <= 0.0) throw DomainError("conditioning event has probability zero");
    for (double& p : probs) p /= mass;
    return ExactDistribution(dist.space(), std::move(probs));
}

double tv_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DomainError("tables differ in size");
    return 0.5 * simd::abs_diff_sum(a, b);
}

double tv_distance(const ExactDistribution& a, const ExactDistribution& b) {
    if (!(a.space() == b.space())) throw DomainError("distributions over different edge spaces");
    return tv_distance(a.probs(), b.probs());
}

double exact_probability(const ExactDistribution& dist, const PropertyOracle& oracle) {
    double sum = 0.0;
    const auto probs = dist.probs();
    for (std::uint64_t a = 0; a < probs.size(); ++a)
        if (probs[a] != 0.0 && oracle.decide(Realization::from_integer(dist.space(), a))) sum += probs[a];
    return sum;
}

CouplingJoint::CouplingJoint(EdgeSpace space, std::vector<double> table, std::vector<CouplingLevelCheck> levels)
    : space_(space), table_(std::move(table)), levels_(std::move(levels)) {}

ExactDistribution CouplingJoint::marginal_g1() const {
    const std::size_t m = space_.m();
    std::vector<double> out(std::size_t{1} << m, 0.0);
    for (std::uint64_t idx = 0; idx < table_.size(); ++idx) out[idx >> m] += table_[idx];
    return ExactDistribution(space_, std::move(out));
}

ExactDistribution CouplingJoint::marginal_g2() const {
    const std::size_t m = space_.m();
    const std::uint64_t low = (std::uint64_t{1} << m) - 1;
    std::vector<double> out(std::size_t{1} << m, 0.0);
    for (std::uint64_t idx = 0; idx < table_.size(); ++idx) out[idx & low] += table_[idx];
    return ExactDistribution(space_, std::move(out));
}

ExactDistribution CouplingJoint::marginal_union() const {
    const std::size_t m = space_.m();
    const std::uint64_t low = (std::uint64_t{1} << m) - 1;
    std::vector<double> out(std::size_t{1} << m, 0.0);
    for (std::uint64_t idx = 0; idx < table_.size(); ++idx) out[(idx >> m) | (idx & low)] += table_[idx];
    return ExactDistribution(space_, std::move(out));
}

CouplingJoint exact_coupling_joint(const CouplingParams& params) {
    if (!params.model) throw DomainError("coupling needs a model");
    const EdgeModel& model = *params.model;
    const EdgeSpace space = model.space();
    const std::size_t m = space.m();
    if (m > exact_coupling_cap) throw UnsupportedScale("exact coupling enumeration (m)", m, exact_coupling_cap);
    const double base = params.base;
    if (!(base >= 0.0 && base <= 1.0)) throw DomainError("base probability must lie in [0,1]");

    // References for the level checks, computed by independent routes.
    const ExactDistribution joint = exact_joint(model);
    const ExactDistribution er = product_distribution(space, base);

    std::vector<double> table{1.0};  // index (a << d) | b over the d decided edges
    std::vector<CouplingLevelCheck> levels;
    Realization bits(space);
    std::size_t d = 0;
    for (EdgeIndex i = m; i >= 1; --i) {
        const std::uint64_t low = (std::uint64_t{1} << d) - 1;
        std::vector<double> next(table.size() * 4, 0.0);
        for (std::uint64_t idx = 0; idx < table.size(); ++idx) {
            const double w = table[idx];
            if (w == 0.0) continue;
            const std::uint64_t a = idx >> d, b = idx & low;
            bits.mutable_words()[0] = (a | b) << i;
            const SuffixHistory history(bits, i + 1);
            double q = checked_conditional(model, i, history);
            if (q < base) {
                if (q < base - robustness_tolerance) throw RobustnessViolation(i, history.to_hex(), q, base);
                q = base;
            }
            const double patch = patch_probability(base, q);
            for (std::uint64_t c1 = 0; c1 < 2; ++c1) {
                const double w1 = c1 ? base : 1.0 - base;
                for (std::uint64_t c2 = 0; c2 < 2; ++c2) {
                    const double w2 = c2 ? patch : 1.0 - patch;
                    const std::uint64_t a2 = (a << 1) | c1, b2 = (b << 1) | c2;
                    next[(a2 << (d + 1)) | b2] += w * w1 * w2;
                }
            }
        }
        table = std::move(next);
        ++d;

        const std::uint64_t low_next = (std::uint64_t{1} << d) - 1;
        std::vector<double> union_law(std::size_t{1} << d, 0.0), g1_law(std::size_t{1} << d, 0.0);
        for (std::uint64_t idx = 0; idx < table.size(); ++idx) {
            union_law[(idx >> d) | (idx & low_next)] += table[idx];
            g1_law[idx >> d] += table[idx];
        }
        levels.push_back({i, tv_distance(union_law, suffix_marginal(joint, i)),
                          tv_distance(g1_law, suffix_marginal(er, i))});
    }
    return CouplingJoint(space, std::move(table), std::move(levels));
}

DominationCheck exact_domination_check(const EdgeModel& model, double base, const PropertyOracle& oracle) {
    require_joint_cap(model.space().m());
    if (base > model.floor())
        throw PreconditionError("base " + std::to_string(base) + " exceeds model floor " + std::to_string(model.floor()));
    if (!oracle.declared_monotone()) throw NonMonotoneProperty("property '" + oracle.spec() + "' is not monotone");
    DominationCheck out;
    out.prob_er = exact_probability(product_distribution(model.space(), base), oracle);
    out.prob_model = exact_probability(exact_joint(model), oracle);
    out.holds = out.prob_er <= out.prob_model + exact_tolerance;
    return out;
}

ConditionedFloorReport conditioned_adjacency_floor(int n) {
    ConditionedFloorReport report;
    report.n = n;
    report.claimed_floor = ConditionedAdjacencySampler::claimed_floor;
    const ExactDistribution joint = exact_joint(*adjacency_count_model(n));
    const ExactDistribution cond =
        condition_on(joint, [](const Realization& g) { return satisfies_adjacency_condition(g); },
                     &report.event_probability);
    const std::size_t m = cond.space().m();
    const auto probs = cond.probs();

    for (EdgeIndex i = 1; i <= m; ++i) report.min_marginal = std::min(report.min_marginal, cond.edge_marginal(i));

    for (EdgeIndex i = 1; i <= m; ++i) {
        const std::vector<double> with_i = suffix_marginal(cond, i);       // edges i..m
        const std::vector<double> without_i = suffix_marginal(cond, i + 1);  // edges i+1..m
        for (std::uint64_t key = 0; key < without_i.size(); ++key) {
            if (without_i[key] <= 0.0) continue;
            report.min_sequential = std::min(report.min_sequential, with_i[(key << 1) | 1] / without_i[key]);
        }
        const std::uint64_t bit = std::uint64_t{1} << (i - 1);
        for (std::uint64_t a = 0; a < probs.size(); ++a) {
            if (a & bit) continue;
            const double context = probs[a] + probs[a | bit];
            if (context <= 0.0) continue;
            report.min_full_conditional = std::min(report.min_full_conditional, probs[a | bit] / context);
        }
    }
    report.marginal_meets_claim = report.min_marginal >= report.claimed_floor - conditioned_slack;
    report.sequential_meets_claim = report.min_sequential >= report.claimed_floor - conditioned_slack;
    report.full_meets_claim = report.min_full_conditional >= report.claimed_floor - conditioned_slack;
    return report;
}

}  // namespace probust
