#include "probust/coupling.hpp"

#include "probust/errors.hpp"

#include <algorithm>
#include <cmath>

namespace probust {
namespace {

void check_pair(double p, double q) {
    if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0))
        throw DomainError("probabilities must lie in [0,1], got p=" + std::to_string(p) + " q=" + std::to_string(q));
    if (p > q) throw PreconditionError("p=" + std::to_string(p) + " exceeds q=" + std::to_string(q));
}

}  // namespace

double p_prime(double p, double q) {
    check_pair(p, q);
    if (p == 1.0) return 0.0;  // q == 1 here; the ER layer already places the edge
    return p * (1.0 - q) / (1.0 - p);
}

double patch_probability(double p, double q) {
    check_pair(p, q);
    if (p == 1.0) return 1.0;
    // Equal to q - p' but computed as (q - p)/(1 - p): rounding is monotone,
    // so 0 <= q - p <= 1 - p survives and the result stays inside [0,1].
    return (q - p) / (1.0 - p);
}

double union_probability_identity(double p, double q) {
    const double patch = q - p_prime(p, q);
    return std::fabs(p + patch - patch * p - q);
}

CouplingTriple generate_coupled(const CouplingParams& params, Rng& rng) {
    if (!params.model) throw DomainError("coupling needs a model");
    const double base = params.base;
    if (!(base >= 0.0 && base <= 1.0)) throw DomainError("base probability must lie in [0,1]");
    const EdgeModel& model = *params.model;
    CouplingTriple t{Realization(model.space()), Realization(model.space()), Realization(model.space())};
    for (EdgeIndex i = model.space().m(); i >= 1; --i) {
        const SuffixHistory history(t.u, i + 1);
        double q = model.conditional(i, history);
        if (!(q >= 0.0 && q <= 1.0))
            throw ModelContractError(model.name() + " returned conditional " + std::to_string(q) + " at edge " +
                                     std::to_string(i));
        if (q < base) {
            if (q < base - robustness_tolerance) throw RobustnessViolation(i, history.to_hex(), q, base);
            q = base;
        }
        const bool in_g1 = bernoulli(rng, base);
        const bool in_g2 = bernoulli(rng, patch_probability(base, q));
        if (in_g1) t.g1.set(i);
        if (in_g2) t.g2.set(i);
        if (in_g1 || in_g2) t.u.set(i);
    }
    return t;
}

std::vector<CouplingTriple> coupled_stream(const CouplingParams& params, std::uint64_t master_seed,
                                           std::size_t count) {
    std::vector<CouplingTriple> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        Rng rng = derive_stream(master_seed, k);
        out.push_back(generate_coupled(params, rng));
    }
    return out;
}

}  // namespace probust
