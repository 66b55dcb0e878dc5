#include "probust/montecarlo.hpp"

#include "probust/errors.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace probust {
namespace {

double log_base(double x, double base) { return std::log(x) / std::log(base); }

double average_degree(int n, double p) { return p * static_cast<double>(n - 1); }

void require_domination_preconditions(const EdgeModel& model, double base, const PropertyOracle& oracle) {
    if (!(base >= 0.0 && base <= 1.0)) throw DomainError("base probability must lie in [0,1]");
    if (base > model.floor())
        throw PreconditionError("base " + std::to_string(base) + " exceeds model floor " + std::to_string(model.floor()));
    if (!oracle.declared_monotone()) throw NonMonotoneProperty("property '" + oracle.spec() + "' is not monotone");
}

double poisson_pmf(double d, int k) {
    if (d == 0.0) return k == 0 ? 1.0 : 0.0;
    return std::exp(k * std::log(d) - d - std::lgamma(static_cast<double>(k) + 1.0));
}

}  // namespace

std::string_view interval_method_name(IntervalMethod method) noexcept {
    return method == IntervalMethod::wilson ? "wilson" : "hoeffding";
}

EstimateResult binomial_interval(std::uint64_t successes, std::uint64_t samples, IntervalMethod method, double alpha) {
    if (samples == 0) throw DomainError("need at least one sample");
    if (successes > samples) throw DomainError("more successes than samples");
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0,1)");
    EstimateResult r;
    r.successes = successes;
    r.samples = samples;
    r.method = method;
    const double n = static_cast<double>(samples);
    const double phat = static_cast<double>(successes) / n;
    r.estimate = phat;
    if (method == IntervalMethod::wilson) {
        const double z = alpha == 0.01 ? z99 : boost::math::quantile(boost::math::normal(), 1.0 - alpha / 2.0);
        const double z2 = z * z;
        const double denom = 1.0 + z2 / n;
        const double centre = (phat + z2 / (2.0 * n)) / denom;
        const double half = z / denom * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
        r.ci_low = centre - half;
        r.ci_high = centre + half;
    } else {
        const double eps = std::sqrt(std::log(2.0 / alpha) / (2.0 * n));
        r.ci_low = phat - eps;
        r.ci_high = phat + eps;
    }
    r.ci_low = std::clamp(std::min(r.ci_low, phat), 0.0, 1.0);
    r.ci_high = std::clamp(std::max(r.ci_high, phat), 0.0, 1.0);
    return r;
}

void parallel_for(std::uint64_t count, unsigned threads, const std::function<void(std::uint64_t)>& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(count, 1)));
    if (threads <= 1) {
        for (std::uint64_t k = 0; k < count; ++k) fn(k);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&, t] {
            try {
                for (std::uint64_t k = t; k < count; k += threads) fn(k);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    if (failure) std::rethrow_exception(failure);
}

EstimateResult estimate_property(const Sampler& sampler, const PropertyOracle& oracle, const RunOptions& options) {
    std::vector<std::uint8_t> hit(options.samples, 0);
    parallel_for(options.samples, options.threads, [&](std::uint64_t k) {
        Rng rng = derive_stream(options.seed, k);
        hit[k] = oracle.decide(sampler.sample(rng)) ? 1 : 0;
    });
    std::uint64_t successes = 0;
    for (const auto h : hit) successes += h;
    EstimateResult r = binomial_interval(successes, options.samples, options.method);
    r.seed = options.seed;
    return r;
}

Verdict domination_verdict(const EstimateResult& lower_side, const EstimateResult& upper_side) {
    return lower_side.ci_low > upper_side.ci_high ? Verdict::fail : Verdict::consistent;
}

DominationReport domination_test(const EdgeModel& model, double base, const PropertyOracle& oracle,
                                 const RunOptions& options) {
    require_domination_preconditions(model, base, oracle);
    const ModelPtr er = er_model(model.space().n(), base);
    std::vector<std::uint8_t> er_hit(options.samples, 0), model_hit(options.samples, 0);
    parallel_for(options.samples, options.threads, [&](std::uint64_t k) {
        Rng er_rng = derive_stream(options.seed, 2 * k);
        Rng model_rng = derive_stream(options.seed, 2 * k + 1);
        er_hit[k] = oracle.decide(sample_direct(*er, er_rng)) ? 1 : 0;
        model_hit[k] = oracle.decide(sample_direct(model, model_rng)) ? 1 : 0;
    });
    std::uint64_t er_count = 0, model_count = 0;
    for (std::uint64_t k = 0; k < options.samples; ++k) {
        er_count += er_hit[k];
        model_count += model_hit[k];
    }
    DominationReport report;
    report.er = binomial_interval(er_count, options.samples, options.method);
    report.model = binomial_interval(model_count, options.samples, options.method);
    report.er.seed = report.model.seed = options.seed;
    report.margin = report.model.estimate - report.er.estimate;
    report.verdict = domination_verdict(report.er, report.model);
    return report;
}

CoupledReport coupled_domination_test(const CouplingParams& params, const PropertyOracle& oracle,
                                      const RunOptions& options) {
    if (!params.model) throw DomainError("coupling needs a model");
    require_domination_preconditions(*params.model, params.base, oracle);
    // bit 0: Q on g1, bit 1: Q on the union
    std::vector<std::uint8_t> flags(options.samples, 0);
    parallel_for(options.samples, options.threads, [&](std::uint64_t k) {
        Rng rng = derive_stream(options.seed, k);
        const CouplingTriple t = generate_coupled(params, rng);
        if (!t.g1.is_subset_of(t.u) || !(graph_union(t.g1, t.g2) == t.u))
            throw PairedViolation("coupled sample " + std::to_string(k) + " broke u = g1 | g2");
        flags[k] = static_cast<std::uint8_t>((oracle.decide(t.g1) ? 1 : 0) | (oracle.decide(t.u) ? 2 : 0));
    });
    CoupledReport report;
    std::uint64_t g1_count = 0, u_count = 0;
    for (std::uint64_t k = 0; k < options.samples; ++k) {
        const auto f = flags[k];
        g1_count += f & 1;
        u_count += (f >> 1) & 1;
        report.both += f == 3;
        if (f == 1) {
            if (report.violations++ == 0) {
                Rng rng = derive_stream(options.seed, k);
                const CouplingTriple t = generate_coupled(params, rng);
                throw PairedViolation("property '" + oracle.spec() + "' holds on g1 but not on the union at sample " +
                                      std::to_string(k) + ": g1=" + t.g1.to_hex() + " g2=" + t.g2.to_hex() +
                                      " u=" + t.u.to_hex());
            }
        }
    }
    report.g1 = binomial_interval(g1_count, options.samples, options.method);
    report.u = binomial_interval(u_count, options.samples, options.method);
    report.g1.seed = report.u.seed = options.seed;
    report.verdict = domination_verdict(report.g1, report.u);
    return report;
}

AsymptoticFormula clique_formula() {
    return {"clique", [](int n, double p) { return 2.0 * log_base(n, 1.0 / p); }, "0 < p < 1 fixed"};
}

AsymptoticFormula independent_set_formula() {
    return {"indep",
            [](int n, double p) {
                const double d = average_degree(n, p);
                return 2.0 * n * std::log(d) / d;
            },
            "average degree d = p(n-1) large, d = o(n)"};
}

AsymptoticFormula chromatic_formula() {
    return {"chrom", [](int n, double p) { return n / log_base(n, 1.0 / (1.0 - p)); }, "0 < p < 1 fixed"};
}

AsymptoticFormula dominating_set_formula() {
    return {"domset", [](int n, double p) { return log_base(n, 1.0 / (1.0 - p)); }, "0 < p < 1 fixed"};
}

AsymptoticFormula longest_cycle_formula() {
    return {"cycle",
            [](int n, double p) {
                const double d = average_degree(n, p);
                return n * (1.0 - d * std::exp(-d));
            },
            "constant average degree d = p(n-1), d large"};
}

AsymptoticFormula diameter_formula() {
    return {"diam", [](int n, double p) { return std::log(n) / std::log(n * p); },
            "np -> infinity; largest component diameter when disconnected"};
}

AsymptoticFormula degree_count_formula(int k) {
    return {"degree", [k](int n, double p) { return poisson_pmf(average_degree(n, p), k) * n; },
            "constant average degree d = p(n-1); k = " + std::to_string(k)};
}

AsymptoticFormula formula_by_name(std::string_view name, int k) {
    if (name == "clique") return clique_formula();
    if (name == "indep") return independent_set_formula();
    if (name == "chrom") return chromatic_formula();
    if (name == "domset") return dominating_set_formula();
    if (name == "cycle") return longest_cycle_formula();
    if (name == "diam") return diameter_formula();
    if (name == "degree") return degree_count_formula(k);
    throw DomainError("unknown formula '" + std::string(name) + "'");
}

std::string_view statistic_kind_name(StatisticKind kind) noexcept {
    switch (kind) {
        case StatisticKind::exact: return "exact";
        case StatisticKind::heuristic_upper: return "heuristic-upper";
        case StatisticKind::heuristic_lower: return "heuristic-lower";
    }
    return "unknown";
}

Statistic statistic_for(std::string_view formula_name, int n, int k) {
    const auto as_double = [](auto fn) { return [fn](const Graph& g) { return static_cast<double>(fn(g)); }; };
    if (formula_name == "clique") return {"max_clique_size", as_double(max_clique_size)};
    if (formula_name == "indep") return {"max_independent_set_size", as_double(max_independent_set_size)};
    if (formula_name == "chrom") {
        if (n <= chromatic_cap) return {"chromatic_number", as_double(chromatic_number)};
        return {"dsatur_color_count", as_double(dsatur_color_count), StatisticKind::heuristic_upper};
    }
    if (formula_name == "domset") {
        if (n <= dominating_cap) return {"min_dominating_set_size", as_double(min_dominating_set_size)};
        return {"greedy_dominating_set_size", as_double(greedy_dominating_set_size), StatisticKind::heuristic_upper};
    }
    if (formula_name == "cycle") return {"longest_cycle_length", as_double(longest_cycle_length)};
    if (formula_name == "diam") return {"diameter", as_double(diameter)};
    if (formula_name == "degree")
        return {"vertices_of_degree_" + std::to_string(k), [k](const Graph& g) {
                    double count = 0;
                    for (Vertex v = 0; v < g.n(); ++v) count += g.degree(v) == static_cast<std::size_t>(k);
                    return count;
                }};
    throw DomainError("unknown formula '" + std::string(formula_name) + "'");
}

std::vector<AsymptoticRow> asymptotic_report(const AsymptoticFormula& formula, const std::function<Statistic(int)>& statistic,
                                             const std::vector<int>& ns, double p, const SamplerFactory& factory,
                                             const RunOptions& options) {
    if (options.samples == 0) throw DomainError("need at least one sample");
    std::vector<AsymptoticRow> rows;
    for (std::size_t j = 0; j < ns.size(); ++j) {
        const int n = ns[j];
        const Statistic stat = statistic(n);
        const SamplerPtr sampler = factory(n);
        std::vector<double> values(options.samples);
        parallel_for(options.samples, options.threads, [&](std::uint64_t k) {
            Rng rng = derive_stream(options.seed, (static_cast<std::uint64_t>(j) << 32) + k);
            values[k] = stat.evaluate(Graph(sampler->sample(rng)));
        });
        double mean = 0.0;
        for (const double v : values) mean += v;
        mean /= static_cast<double>(values.size());
        double ss = 0.0;
        for (const double v : values) ss += (v - mean) * (v - mean);
        const double sd = values.size() > 1 ? std::sqrt(ss / static_cast<double>(values.size() - 1)) : 0.0;
        rows.push_back({n, p, formula.predict(n, p), mean, sd, options.samples, stat.name, stat.kind});
    }
    return rows;
}

double chi_square_survival(double statistic, int dof) {
    if (dof <= 0) return 1.0;
    if (statistic <= 0.0) return 1.0;
    return boost::math::gamma_q(dof / 2.0, statistic / 2.0);
}

DegreeTestReport degree_distribution_test(const Sampler& sampler, double p, const RunOptions& options) {
    const int n = sampler.space().n();
    DegreeTestReport report;
    report.n = n;
    report.p = p;
    report.d = average_degree(n, p);
    std::vector<std::vector<std::size_t>> per_sample(options.samples);
    parallel_for(options.samples, options.threads, [&](std::uint64_t k) {
        Rng rng = derive_stream(options.seed, k);
        per_sample[k] = degree_histogram(sampler.sample(rng));
    });
    report.histogram.assign(static_cast<std::size_t>(n), 0);
    for (const auto& h : per_sample)
        for (std::size_t deg = 0; deg < h.size(); ++deg) report.histogram[deg] += h[deg];

    // Expected counts per degree; mass beyond n-1 folds into the last degree.
    const double total = static_cast<double>(options.samples) * n;
    std::vector<double> expected(static_cast<std::size_t>(n));
    double cumulative = 0.0;
    for (int deg = 0; deg < n; ++deg) {
        const double pk = deg + 1 < n ? poisson_pmf(report.d, deg) : std::max(0.0, 1.0 - cumulative);
        cumulative += pk;
        expected[static_cast<std::size_t>(deg)] = pk * total;
    }
    DegreeBin open{0, 0, 0.0, 0};
    for (int deg = 0; deg < n; ++deg) {
        open.high = deg;
        open.expected += expected[static_cast<std::size_t>(deg)];
        open.observed += report.histogram[static_cast<std::size_t>(deg)];
        if (open.expected >= 5.0) {
            report.bins.push_back(open);
            open = DegreeBin{deg + 1, deg + 1, 0.0, 0};
        }
    }
    if (open.low < n) {
        if (report.bins.empty()) {
            report.bins.push_back(open);
        } else {
            auto& last = report.bins.back();
            last.high = open.high;
            last.expected += open.expected;
            last.observed += open.observed;
        }
    }
    for (const DegreeBin& bin : report.bins) {
        if (bin.expected <= 0.0) continue;
        const double diff = static_cast<double>(bin.observed) - bin.expected;
        report.chi_square += diff * diff / bin.expected;
    }
    report.dof = static_cast<int>(report.bins.size()) - 1;
    report.p_value = chi_square_survival(report.chi_square, report.dof);
    return report;
}

}  // namespace probust
