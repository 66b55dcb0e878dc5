#pragma once

// Wire formats: model descriptors, JSON-lines records, and report objects.
// Field names here are mirrored by the files under schemas/.

#include "probust/coupling.hpp"
#include "probust/exact.hpp"
#include "probust/models.hpp"
#include "probust/montecarlo.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace probust {

enum class ModelKind { er, global_count, adjacency_count, adjacency_count_conditioned };

std::string_view kind_name(ModelKind kind) noexcept;
/// Canonical names plus the CLI short forms: er, global, adjcount, adjcount-cond.
ModelKind parse_kind(std::string_view name);

/// {"kind": ..., "n": ..., "params": {...}}. `p` is used by er, `budget` by the
/// conditioned model.
struct ModelDescriptor {
    ModelKind kind = ModelKind::er;
    int n = 2;
    double p = 0.5;
    std::uint64_t budget = default_rejection_budget;

    /// Throws DomainError for out-of-range parameters.
    void validate() const;
    /// Robustness floor the model claims (3/8 for the conditioned model).
    double declared_floor() const;

    nlohmann::json to_json() const;
    static ModelDescriptor from_json(const nlohmann::json& j);
};

/// Sequential model; throws DomainError for the conditioned kind, which has none.
ModelPtr make_model(const ModelDescriptor& d);
SamplerPtr make_sampler(const ModelDescriptor& d);

nlohmann::json realization_record(const Realization& g, std::uint64_t seed, std::uint64_t index);
nlohmann::json coupling_record(const CouplingTriple& t, std::uint64_t seed, std::uint64_t index);
/// Parses a coupling record and checks u == g1 | g2.
CouplingTriple parse_coupling_record(const nlohmann::json& j);

nlohmann::json to_json(const EstimateResult& r);
nlohmann::json to_json(const DominationReport& r);
nlohmann::json to_json(const CoupledReport& r);
nlohmann::json to_json(const FloorCheck& r);
nlohmann::json to_json(const ConditionedFloorReport& r);
nlohmann::json to_json(const DegreeTestReport& r);
nlohmann::json to_json(const std::vector<AsymptoticRow>& rows, const AsymptoticFormula& formula);

/// Doubles print with 17 significant digits so text output is reproducible.
std::string format_double(double x);

void write_asymptotic_csv(std::ostream& out, const std::vector<AsymptoticRow>& rows, std::string_view formula);
void write_asymptotic_text(std::ostream& out, const std::vector<AsymptoticRow>& rows, std::string_view formula);

}  // namespace probust
