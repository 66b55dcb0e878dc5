#include "probust/serialize.hpp"

#include "probust/errors.hpp"

#include <cstdio>
#include <iomanip>
#include <ostream>

namespace probust {

using nlohmann::json;

std::string_view kind_name(ModelKind kind) noexcept {
    switch (kind) {
        case ModelKind::er: return "er";
        case ModelKind::global_count: return "global-count";
        case ModelKind::adjacency_count: return "adjacency-count";
        case ModelKind::adjacency_count_conditioned: return "adjacency-count-conditioned";
    }
    return "unknown";
}

ModelKind parse_kind(std::string_view name) {
    if (name == "er") return ModelKind::er;
    if (name == "global-count" || name == "global") return ModelKind::global_count;
    if (name == "adjacency-count" || name == "adjcount") return ModelKind::adjacency_count;
    if (name == "adjacency-count-conditioned" || name == "adjcount-cond") return ModelKind::adjacency_count_conditioned;
    throw DomainError("unknown model kind '" + std::string(name) + "'");
}

void ModelDescriptor::validate() const {
    if (n < 1) throw DomainError("n must be >= 1, got " + std::to_string(n));
    switch (kind) {
        case ModelKind::er:
            if (!(p >= 0.0 && p <= 1.0)) throw DomainError("parameter p must lie in [0,1], got " + std::to_string(p));
            break;
        case ModelKind::global_count:
        case ModelKind::adjacency_count:
            if (n < 2) throw DomainError("model '" + std::string(kind_name(kind)) + "' needs n >= 2");
            break;
        case ModelKind::adjacency_count_conditioned:
            if (n < 2) throw DomainError("model '" + std::string(kind_name(kind)) + "' needs n >= 2");
            if (budget == 0) throw DomainError("parameter budget must be positive");
            break;
    }
}

double ModelDescriptor::declared_floor() const {
    switch (kind) {
        case ModelKind::er: return p;
        case ModelKind::global_count: return 0.5;
        case ModelKind::adjacency_count: return 0.3;
        case ModelKind::adjacency_count_conditioned: return ConditionedAdjacencySampler::claimed_floor;
    }
    return 0.0;
}

json ModelDescriptor::to_json() const {
    json params = json::object();
    if (kind == ModelKind::er) params["p"] = p;
    if (kind == ModelKind::adjacency_count_conditioned) params["budget"] = budget;
    return {{"kind", kind_name(kind)}, {"n", n}, {"params", params}};
}

ModelDescriptor ModelDescriptor::from_json(const json& j) {
    try {
        ModelDescriptor d;
        d.kind = parse_kind(j.at("kind").get<std::string>());
        d.n = j.at("n").get<int>();
        const json params = j.value("params", json::object());
        if (!params.is_object()) throw DomainError("params must be an object");
        if (d.kind == ModelKind::er) d.p = params.at("p").get<double>();
        if (d.kind == ModelKind::adjacency_count_conditioned)
            d.budget = params.value("budget", default_rejection_budget);
        d.validate();
        return d;
    } catch (const json::exception& e) {
        throw DomainError(std::string("malformed model descriptor: ") + e.what());
    }
}

ModelPtr make_model(const ModelDescriptor& d) {
    d.validate();
    switch (d.kind) {
        case ModelKind::er: return er_model(d.n, d.p);
        case ModelKind::global_count: return global_count_model(d.n);
        case ModelKind::adjacency_count: return adjacency_count_model(d.n);
        case ModelKind::adjacency_count_conditioned: break;
    }
    throw DomainError("model 'adjacency-count-conditioned' has no sequential conditional; it can only be sampled");
}

SamplerPtr make_sampler(const ModelDescriptor& d) {
    d.validate();
    if (d.kind == ModelKind::adjacency_count_conditioned)
        return std::make_shared<ConditionedAdjacencySampler>(d.n, d.budget);
    return model_sampler(make_model(d));
}

json realization_record(const Realization& g, std::uint64_t seed, std::uint64_t index) {
    return {{"n", g.n()}, {"seed", seed}, {"index", index}, {"g", g.to_hex()}};
}

json coupling_record(const CouplingTriple& t, std::uint64_t seed, std::uint64_t index) {
    return {{"n", t.u.n()}, {"seed", seed}, {"index", index}, {"g1", t.g1.to_hex()}, {"g2", t.g2.to_hex()},
            {"u", t.u.to_hex()}};
}

CouplingTriple parse_coupling_record(const json& j) {
    try {
        const EdgeSpace space(j.at("n").get<int>());
        CouplingTriple t{Realization::from_hex(space, j.at("g1").get<std::string>()),
                         Realization::from_hex(space, j.at("g2").get<std::string>()),
                         Realization::from_hex(space, j.at("u").get<std::string>())};
        if (!(graph_union(t.g1, t.g2) == t.u)) throw DomainError("coupling record violates u = g1 | g2");
        return t;
    } catch (const json::exception& e) {
        throw DomainError(std::string("malformed coupling record: ") + e.what());
    }
}

json to_json(const EstimateResult& r) {
    return {{"estimate", r.estimate}, {"ci_low", r.ci_low},       {"ci_high", r.ci_high},
            {"successes", r.successes}, {"samples", r.samples}, {"seed", r.seed},
            {"method", interval_method_name(r.method)}};
}

namespace {
std::string_view verdict_name(Verdict v) { return v == Verdict::consistent ? "consistent" : "fail"; }
}  // namespace

json to_json(const DominationReport& r) {
    return {{"mode", "independent"}, {"est_er", to_json(r.er)},          {"est_model", to_json(r.model)},
            {"margin", r.margin},    {"verdict", verdict_name(r.verdict)}};
}

json to_json(const CoupledReport& r) {
    return {{"mode", "paired"},          {"est_er", to_json(r.g1)},
            {"est_model", to_json(r.u)}, {"both", r.both},
            {"violations", r.violations}, {"margin", r.u.estimate - r.g1.estimate},
            {"verdict", verdict_name(r.verdict)}};
}

json to_json(const FloorCheck& r) {
    json j = {{"floor", r.floor},
              {"min_conditional", r.min_conditional},
              {"argmin_edge", r.argmin_edge},
              {"argmin_history", r.argmin_history},
              {"histories_checked", r.histories_checked},
              {"verified", r.verified}};
    if (r.counterexample) j["counterexample"] = {{"edge", r.counterexample->first}, {"history", r.counterexample->second}};
    return j;
}

json to_json(const ConditionedFloorReport& r) {
    return {{"n", r.n},
            {"claimed_floor", r.claimed_floor},
            {"event_probability", r.event_probability},
            {"min_marginal", r.min_marginal},
            {"min_sequential_conditional", r.min_sequential},
            {"min_full_conditional", r.min_full_conditional},
            {"marginal_meets_claim", r.marginal_meets_claim},
            {"sequential_meets_claim", r.sequential_meets_claim},
            {"full_conditional_meets_claim", r.full_meets_claim}};
}

json to_json(const DegreeTestReport& r) {
    json bins = json::array();
    for (const auto& b : r.bins)
        bins.push_back({{"low", b.low}, {"high", b.high}, {"expected", b.expected}, {"observed", b.observed}});
    return {{"n", r.n},   {"p", r.p},          {"d", r.d},   {"histogram", r.histogram}, {"bins", bins},
            {"chi_square", r.chi_square}, {"dof", r.dof}, {"p_value", r.p_value}};
}

json to_json(const std::vector<AsymptoticRow>& rows, const AsymptoticFormula& formula) {
    json out = json::array();
    for (const auto& row : rows) {
        out.push_back({{"formula", formula.name},
                       {"n", row.n},
                       {"p", row.p},
                       {"predicted", row.predicted},
                       {"observed_mean", row.observed_mean},
                       {"observed_sd", row.observed_sd},
                       {"samples", row.samples},
                       {"statistic", row.statistic},
                       {"statistic_kind", statistic_kind_name(row.kind)},
                       {"validity", formula.validity}});
    }
    return out;
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_asymptotic_csv(std::ostream& out, const std::vector<AsymptoticRow>& rows, std::string_view formula) {
    out << "formula,n,p,predicted,observed_mean,observed_sd,samples,statistic,statistic_kind\n";
    for (const auto& r : rows) {
        out << formula << ',' << r.n << ',' << format_double(r.p) << ',' << format_double(r.predicted) << ','
            << format_double(r.observed_mean) << ',' << format_double(r.observed_sd) << ',' << r.samples << ','
            << r.statistic << ',' << statistic_kind_name(r.kind) << '\n';
    }
}

void write_asymptotic_text(std::ostream& out, const std::vector<AsymptoticRow>& rows, std::string_view formula) {
    out << std::left << std::setw(8) << "formula" << std::right << std::setw(7) << "n" << std::setw(10) << "p"
        << std::setw(12) << "predicted" << std::setw(12) << "mean" << std::setw(10) << "sd" << std::setw(9)
        << "samples" << "  statistic\n";
    for (const auto& r : rows) {
        out << std::left << std::setw(8) << formula << std::right << std::setw(7) << r.n << std::fixed
            << std::setprecision(4) << std::setw(10) << r.p << std::setw(12) << r.predicted << std::setw(12)
            << r.observed_mean << std::setw(10) << r.observed_sd << std::defaultfloat << std::setw(9) << r.samples
            << "  " << r.statistic << " (" << statistic_kind_name(r.kind) << ")\n";
    }
}

}  // namespace probust
