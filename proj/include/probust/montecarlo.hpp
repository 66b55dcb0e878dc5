#pragma once

// Desk-scale statistics. Sample k of any run draws from
// derive_stream(seed, k), and aggregation uses integer counts or per-index
// slots, so results do not depend on the thread count.

#include "probust/coupling.hpp"
#include "probust/models.hpp"
#include "probust/properties.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace probust {

enum class IntervalMethod { wilson, hoeffding };

std::string_view interval_method_name(IntervalMethod method) noexcept;

/// Two-sided 99% normal quantile.
inline constexpr double z99 = 2.5758293035489004;

struct EstimateResult {
    double estimate = 0.0;
    double ci_low = 0.0;
    double ci_high = 1.0;
    std::uint64_t successes = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    IntervalMethod method = IntervalMethod::wilson;
};

/// Interval for `successes` out of `samples` at two-sided level 1 - alpha.
EstimateResult binomial_interval(std::uint64_t successes, std::uint64_t samples, IntervalMethod method = IntervalMethod::wilson,
                                 double alpha = 0.01);

/// Runs fn(k) for k in [0, count) across `threads` workers (0 = hardware).
void parallel_for(std::uint64_t count, unsigned threads, const std::function<void(std::uint64_t)>& fn);

struct RunOptions {
    std::uint64_t samples = 1000;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    IntervalMethod method = IntervalMethod::wilson;
};

EstimateResult estimate_property(const Sampler& sampler, const PropertyOracle& oracle, const RunOptions& options);

enum class Verdict { consistent, fail };

/// FAIL only when the lower side's interval lies entirely above the upper side's.
Verdict domination_verdict(const EstimateResult& lower_side, const EstimateResult& upper_side);

struct DominationReport {
    EstimateResult er;     // G(n, base)
    EstimateResult model;  // the robust model
    double margin = 0.0;   // model.estimate - er.estimate
    Verdict verdict = Verdict::consistent;
};

/// Independent samples from G(n, base) and from the model. The ER stream uses
/// derive_stream(seed, 2k) and the model stream derive_stream(seed, 2k+1).
DominationReport domination_test(const EdgeModel& model, double base, const PropertyOracle& oracle,
                                 const RunOptions& options);

struct CoupledReport {
    EstimateResult g1;       // frequency of Q on the ER layer
    EstimateResult u;        // frequency of Q on the union
    std::uint64_t both = 0;  // samples with Q on both layers
    std::uint64_t violations = 0;
    Verdict verdict = Verdict::consistent;
};

/// Paired test on coupled triples. Any sample with Q on g1 but not on the union
/// throws PairedViolation naming the triple.
CoupledReport coupled_domination_test(const CouplingParams& params, const PropertyOracle& oracle,
                                      const RunOptions& options);

/// Predicted value of a graph statistic for G(n, p). Average degree is d = p(n-1)
/// and b = 1/(1-p).
struct AsymptoticFormula {
    std::string name;
    std::function<double(int n, double p)> predict;
    std::string validity;
};

AsymptoticFormula clique_formula();             // 2 log_{1/p} n
AsymptoticFormula independent_set_formula();    // 2 n ln d / d
AsymptoticFormula chromatic_formula();          // n / log_b n
AsymptoticFormula dominating_set_formula();     // log_b n
AsymptoticFormula longest_cycle_formula();      // n (1 - d e^{-d})
AsymptoticFormula diameter_formula();           // log n / log(np)
AsymptoticFormula degree_count_formula(int k);  // d^k e^{-d} / k! * n

/// Looks up a formula by name: clique indep chrom domset cycle diam degree.
/// `k` is only used by degree. Throws DomainError for unknown names.
AsymptoticFormula formula_by_name(std::string_view name, int k = 0);

enum class StatisticKind { exact, heuristic_upper, heuristic_lower };

std::string_view statistic_kind_name(StatisticKind kind) noexcept;

struct Statistic {
    std::string name;
    std::function<double(const Graph&)> evaluate;
    StatisticKind kind = StatisticKind::exact;
};

/// The exact statistic matching a formula name at n vertices; for chrom and
/// domset above their caps, the greedy bound labelled as such. Other exact
/// statistics propagate UnsupportedScale.
Statistic statistic_for(std::string_view formula_name, int n, int k = 0);

struct AsymptoticRow {
    int n = 0;
    double p = 0.0;
    double predicted = 0.0;
    double observed_mean = 0.0;
    double observed_sd = 0.0;
    std::uint64_t samples = 0;
    std::string statistic;
    StatisticKind kind = StatisticKind::exact;
};

using SamplerFactory = std::function<SamplerPtr(int n)>;

/// For each n, `samples` draws from factory(n) evaluated by `statistic`.
/// Sample k at the j-th n uses derive_stream(seed, j * 2^32 + k).
std::vector<AsymptoticRow> asymptotic_report(const AsymptoticFormula& formula, const std::function<Statistic(int)>& statistic,
                                             const std::vector<int>& ns, double p, const SamplerFactory& factory,
                                             const RunOptions& options);

struct DegreeBin {
    int low = 0;   // inclusive
    int high = 0;  // inclusive
    double expected = 0.0;
    std::uint64_t observed = 0;
};

struct DegreeTestReport {
    int n = 0;
    double p = 0.0;
    double d = 0.0;
    std::vector<std::uint64_t> histogram;  // pooled over samples, indexed by degree
    std::vector<DegreeBin> bins;           // expected >= 5 after pooling the tails
    double chi_square = 0.0;
    int dof = 0;
    double p_value = 1.0;
};

/// Pooled degree histogram against samples * n * d^k e^{-d} / k!.
DegreeTestReport degree_distribution_test(const Sampler& sampler, double p, const RunOptions& options);

/// Upper tail of the chi-square distribution.
double chi_square_survival(double statistic, int dof);

}  // namespace probust
