// probust: sampling, coupling, exact checks and Monte Carlo tests for p-robust
// random graphs.
//
// Exit codes: 0 ok, 1 other runtime failure, 2 usage or parameter error,
// 3 robustness violation, 4 scale cap, 5 refutation or violated invariant,
// 6 non-monotone property.

#include "probust/errors.hpp"
#include "probust/serialize.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

namespace {

using namespace probust;
using nlohmann::json;

enum Exit { ok = 0, failure = 1, usage = 2, robustness = 3, scale = 4, refuted = 5, non_monotone = 6 };

struct Config {
    std::string model = "er";
    std::string model_json;
    int n = 0;
    double p = 0.5;
    std::optional<double> base;
    std::uint64_t samples = 0;
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;
    std::string format;
    std::string out;

    std::string property;
    std::string mode = "paired";
    std::string check = "joint";
    std::uint64_t certify_trials = 10000;
    std::string formula;
    std::vector<int> ns;
    int k = 0;
    std::string preset;
};

void add_model_options(CLI::App& sub, Config& c) {
    sub.add_option("--model", c.model, "er | global | adjcount | adjcount-cond (or canonical names)");
    sub.add_option("--model-json", c.model_json, "model descriptor as inline JSON or a file path");
    sub.add_option("--n", c.n, "vertex count");
    sub.add_option("--p", c.p, "edge probability for the er model");
}

void add_run_options(CLI::App& sub, Config& c, std::uint64_t default_samples) {
    c.samples = default_samples;
    sub.add_option("--samples", c.samples, "number of samples")->check(CLI::PositiveNumber);
    sub.add_option("--seed", c.seed, "master seed (falls back to PROBUST_SEED, then random)");
    sub.add_option("--threads", c.threads, "worker threads, 0 = all cores; never changes results");
    sub.add_option("--out", c.out, "output file instead of stdout");
}

ModelDescriptor descriptor(const Config& c) {
    if (!c.model_json.empty()) {
        std::string text = c.model_json;
        if (text.front() != '{') {
            std::ifstream in(text);
            if (!in) throw DomainError("cannot read model descriptor file '" + text + "'");
            std::ostringstream buf;
            buf << in.rdbuf();
            text = buf.str();
        }
        json j;
        try {
            j = json::parse(text);
        } catch (const json::exception& e) {
            throw DomainError(std::string("model descriptor is not valid JSON: ") + e.what());
        }
        return ModelDescriptor::from_json(j);
    }
    if (c.n == 0) throw DomainError("--n is required");
    ModelDescriptor d;
    d.kind = parse_kind(c.model);
    d.n = c.n;
    d.p = c.p;
    d.validate();
    return d;
}

ModelPtr sequential_model(const ModelDescriptor& d, std::string_view command) {
    if (d.kind == ModelKind::adjacency_count_conditioned)
        throw DomainError(std::string(command) + " needs a sequential model; adjacency-count-conditioned only samples");
    return make_model(d);
}

std::uint64_t resolve_seed(const Config& c) {
    if (c.seed) return *c.seed;
    if (const char* env = std::getenv("PROBUST_SEED"); env && *env) {
        char* end = nullptr;
        errno = 0;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (errno != 0 || *end != '\0' || *env == '-') throw DomainError("PROBUST_SEED is not an unsigned integer");
        return v;
    }
    std::random_device rd;
    const std::uint64_t seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    std::cerr << "seed: " << seed << '\n';
    return seed;
}

double resolve_base(const Config& c, const ModelDescriptor& d) {
    const double base = c.base.value_or(d.declared_floor());
    if (!(base >= 0.0 && base <= 1.0)) throw DomainError("--base must lie in [0,1]");
    return base;
}

void require_format(const std::string& format, std::initializer_list<std::string_view> allowed) {
    for (auto a : allowed)
        if (format == a) return;
    throw DomainError("unsupported --format '" + format + "'");
}

class Sink {
public:
    explicit Sink(const std::string& path) {
        if (path.empty()) return;
        file_.open(path, std::ios::binary);
        if (!file_) throw DomainError("cannot open output file '" + path + "'");
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

int cmd_generate(const Config& c) {
    const auto format = c.format.empty() ? std::string("json") : c.format;
    require_format(format, {"json", "csv", "text"});
    const ModelDescriptor d = descriptor(c);
    const SamplerPtr sampler = make_sampler(d);
    const std::uint64_t seed = resolve_seed(c);
    std::vector<std::optional<Realization>> draws(c.samples);
    parallel_for(c.samples, c.threads, [&](std::uint64_t k) {
        Rng rng = derive_stream(seed, k);
        draws[k] = sampler->sample(rng);
    });
    Sink sink(c.out);
    auto& out = sink.stream();
    if (format == "csv") out << "index,g\n";
    for (std::uint64_t k = 0; k < c.samples; ++k) {
        const Realization& g = *draws[k];
        if (format == "json") out << realization_record(g, seed, k).dump() << '\n';
        else if (format == "csv") out << k << ',' << g.to_hex() << '\n';
        else out << k << ' ' << g.to_bit_string() << '\n';
    }
    return ok;
}

int cmd_couple(const Config& c) {
    const auto format = c.format.empty() ? std::string("json") : c.format;
    require_format(format, {"json", "csv"});
    const ModelDescriptor d = descriptor(c);
    const CouplingParams params{resolve_base(c, d), sequential_model(d, "couple")};
    const std::uint64_t seed = resolve_seed(c);
    std::vector<std::optional<CouplingTriple>> triples(c.samples);
    parallel_for(c.samples, c.threads, [&](std::uint64_t k) {
        Rng rng = derive_stream(seed, k);
        triples[k] = generate_coupled(params, rng);
    });
    Sink sink(c.out);
    auto& out = sink.stream();
    if (format == "csv") out << "index,g1,g2,u\n";
    for (std::uint64_t k = 0; k < c.samples; ++k) {
        const CouplingTriple& t = *triples[k];
        if (!(graph_union(t.g1, t.g2) == t.u) || !t.g1.is_subset_of(t.u))
            throw PairedViolation("coupled sample " + std::to_string(k) + " broke u = g1 | g2");
        if (format == "json") out << coupling_record(t, seed, k).dump() << '\n';
        else out << k << ',' << t.g1.to_hex() << ',' << t.g2.to_hex() << ',' << t.u.to_hex() << '\n';
    }
    return ok;
}

ExactDistribution exact_distribution_for(const ModelDescriptor& d) {
    if (d.kind != ModelKind::adjacency_count_conditioned) return exact_joint(*make_model(d));
    return condition_on(exact_joint(*adjacency_count_model(d.n)),
                        [](const Realization& g) { return satisfies_adjacency_condition(g); });
}

int cmd_exact(const Config& c) {
    const auto format = c.format.empty() ? std::string("json") : c.format;
    const ModelDescriptor d = descriptor(c);
    json report = {{"check", c.check}, {"model", d.to_json()}, {"tolerance", exact_tolerance}};
    bool passed = true;

    if (c.check == "joint") {
        require_format(format, {"json", "csv"});
        const ExactDistribution dist = exact_distribution_for(d);
        if (format == "csv") {
            Sink sink(c.out);
            dist.write_csv(sink.stream());
            return std::abs(dist.total() - 1.0) <= exact_tolerance ? ok : refuted;
        }
        const double total = dist.total();
        double min_entry = 1.0;
        for (const double x : dist.probs()) min_entry = std::min(min_entry, x);
        passed = std::abs(total - 1.0) <= exact_tolerance && min_entry >= 0.0;
        report["m"] = dist.space().m();
        report["entries"] = dist.size();
        report["total"] = total;
        report["sum_error"] = std::abs(total - 1.0);
        report["min_entry"] = min_entry;
    } else if (c.check == "coupling") {
        require_format(format, {"json"});
        const ModelPtr model = sequential_model(d, "exact --check coupling");
        const CouplingParams params{resolve_base(c, d), model};
        // Caps first, so an oversized request fails before the joint is built.
        if (model->space().m() > exact_coupling_cap)
            throw UnsupportedScale("exact coupling enumeration (m)", model->space().m(), exact_coupling_cap);
        const CouplingJoint joint = exact_coupling_joint(params);
        const double tv_union = tv_distance(joint.marginal_union(), exact_joint(*model));
        const double tv_g1 = tv_distance(joint.marginal_g1(), product_distribution(model->space(), params.base));
        json levels = json::array();
        for (const auto& level : joint.levels()) {
            levels.push_back({{"level", level.level}, {"tv_union", level.tv_union}, {"tv_g1", level.tv_g1}});
            passed = passed && level.tv_union <= exact_tolerance && level.tv_g1 <= exact_tolerance;
        }
        passed = passed && tv_union <= exact_tolerance && tv_g1 <= exact_tolerance;
        report["base"] = params.base;
        report["tv_union"] = tv_union;
        report["tv_g1"] = tv_g1;
        report["levels"] = levels;
    } else if (c.check == "domination") {
        require_format(format, {"json"});
        const ModelPtr model = sequential_model(d, "exact --check domination");
        const double base = resolve_base(c, d);
        if (base > model->floor() + robustness_tolerance)
            throw RobustnessViolation(model->floor(), base);
        std::vector<PropertyOracle> oracles;
        if (c.property.empty()) oracles = monotone_oracles_for(d.n);
        else oracles.push_back(parse_property(c.property));
        json rows = json::array();
        for (const auto& oracle : oracles) {
            const DominationCheck check = exact_domination_check(*model, base, oracle);
            rows.push_back({{"property", oracle.spec()},
                            {"prob_er", check.prob_er},
                            {"prob_model", check.prob_model},
                            {"holds", check.holds}});
            passed = passed && check.holds;
        }
        report["base"] = base;
        report["rows"] = rows;
    } else if (c.check == "floor") {
        require_format(format, {"json"});
        if (d.kind == ModelKind::adjacency_count_conditioned) {
            const ConditionedFloorReport r = conditioned_adjacency_floor(d.n);
            report["floor"] = to_json(r);
            passed = r.sequential_meets_claim && r.full_meets_claim;
        } else {
            const FloorCheck r = robustness_floor_check(*make_model(d));
            report["floor"] = to_json(r);
            passed = r.verified;
        }
    } else {
        throw DomainError("unknown --check '" + c.check + "' (joint, coupling, domination, floor)");
    }
    report["ok"] = passed;
    Sink sink(c.out);
    sink.stream() << report.dump(2) << '\n';
    return passed ? ok : refuted;
}

int cmd_verify(const Config& c) {
    const auto format = c.format.empty() ? std::string("json") : c.format;
    require_format(format, {"json", "text"});
    if (c.mode != "paired" && c.mode != "independent")
        throw DomainError("unknown --mode '" + c.mode + "' (paired, independent)");
    const ModelDescriptor d = descriptor(c);
    const PropertyOracle oracle = parse_property(c.property);
    const std::uint64_t seed = resolve_seed(c);

    // Refuse anything that is not closed under edge addition before sampling.
    if (!oracle.declared_monotone())
        throw NonMonotoneProperty("property '" + oracle.spec() + "' is not monotone");
    Rng cert_rng = derive_stream(seed, ~std::uint64_t{0});
    const int cert_n = std::min(d.n, 7);
    const MonotoneCertificate cert = certify_monotone(oracle, cert_n, c.certify_trials, cert_rng);
    if (!cert.passed) throw NonMonotoneProperty("property '" + oracle.spec() + "' failed monotonicity certification");

    const ModelPtr model = sequential_model(d, "verify");
    const double base = resolve_base(c, d);
    if (base > model->floor() + robustness_tolerance) throw RobustnessViolation(model->floor(), base);
    const RunOptions options{c.samples, seed, c.threads, IntervalMethod::wilson};
    json report = {{"property", oracle.spec()}, {"model", d.to_json()},   {"base", base},
                   {"samples", c.samples},      {"seed", seed},
                   {"certification",
                    {{"n", cert_n}, {"trials", cert.trials}, {"satisfied_starts", cert.satisfied_starts},
                     {"additions", cert.additions}, {"passed", cert.passed}}}};
    Verdict verdict = Verdict::consistent;
    if (c.mode == "paired") {
        const CoupledReport r = coupled_domination_test({base, model}, oracle, options);
        report["test"] = to_json(r);
        verdict = r.verdict;
    } else {
        const DominationReport r = domination_test(*model, base, oracle, options);
        report["test"] = to_json(r);
        verdict = r.verdict;
    }
    Sink sink(c.out);
    auto& out = sink.stream();
    if (format == "json") {
        out << report.dump(2) << '\n';
    } else {
        const json& t = report["test"];
        out << "property  " << oracle.spec() << "\nmode      " << t["mode"].get<std::string>() << "\nbase      "
            << format_double(base) << "\nsamples   " << c.samples << "\nseed      " << seed << "\nER        "
            << format_double(t["est_er"]["estimate"].get<double>()) << " [" << format_double(t["est_er"]["ci_low"].get<double>())
            << ", " << format_double(t["est_er"]["ci_high"].get<double>()) << "]\nmodel     "
            << format_double(t["est_model"]["estimate"].get<double>()) << " ["
            << format_double(t["est_model"]["ci_low"].get<double>()) << ", "
            << format_double(t["est_model"]["ci_high"].get<double>()) << "]\nverdict   "
            << t["verdict"].get<std::string>() << '\n';
    }
    return verdict == Verdict::consistent ? ok : refuted;
}

struct PresetEntry {
    const char* formula;
    const char* bound;
};

constexpr PresetEntry section3_preset[] = {
    {"clique", "lower"}, {"chrom", "lower"}, {"domset", "upper"}, {"diam", "upper"}};

void write_rows(std::ostream& out, const std::string& format, const std::vector<AsymptoticRow>& rows,
                const AsymptoticFormula& formula, const char* bound, bool first) {
    if (format == "csv") {
        std::ostringstream body;
        write_asymptotic_csv(body, rows, formula.name);
        std::string text = body.str();
        if (!first) text = text.substr(text.find('\n') + 1);
        if (bound) {
            std::istringstream lines(text);
            std::string line;
            bool header = first;
            while (std::getline(lines, line)) {
                out << line << ',' << (header ? "bound" : bound) << '\n';
                header = false;
            }
        } else {
            out << text;
        }
    } else {
        std::ostringstream body;
        write_asymptotic_text(body, rows, formula.name);
        std::string text = body.str();
        if (!first) text = text.substr(text.find('\n') + 1);
        out << text;
    }
}

int cmd_report(const Config& c) {
    const auto format = c.format.empty() ? std::string("text") : c.format;
    require_format(format, {"text", "csv", "json"});
    if (c.ns.empty()) throw DomainError("--n needs at least one vertex count");
    const std::uint64_t seed = resolve_seed(c);
    const RunOptions options{c.samples, seed, c.threads, IntervalMethod::wilson};

    struct Job {
        AsymptoticFormula formula;
        const char* bound;
        double p;
        SamplerFactory factory;
    };
    std::vector<Job> jobs;
    if (!c.preset.empty()) {
        if (c.preset != "paper-section-3") throw DomainError("unknown --preset '" + c.preset + "'");
        for (const auto& entry : section3_preset)
            jobs.push_back({formula_by_name(entry.formula), entry.bound, 0.3,
                            [](int n) { return model_sampler(adjacency_count_model(n)); }});
    } else {
        if (c.formula.empty()) throw DomainError("--formula or --preset is required");
        ModelDescriptor base_desc;
        base_desc.kind = parse_kind(c.model);
        base_desc.p = c.p;
        const double p = base_desc.kind == ModelKind::er ? c.p : base_desc.declared_floor();
        jobs.push_back({formula_by_name(c.formula, c.k), nullptr, p, [base_desc](int n) {
                            ModelDescriptor d = base_desc;
                            d.n = n;
                            return make_sampler(d);
                        }});
    }

    Sink sink(c.out);
    auto& out = sink.stream();
    json all = json::array();
    bool first = true;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
        const Job& job = jobs[j];
        const std::string name = job.formula.name;
        const int k = c.k;
        RunOptions job_options = options;
        // Each formula of a preset draws from its own block of streams.
        job_options.seed = j == 0 ? seed : derive_stream(seed, j)();
        const auto rows = asymptotic_report(
            job.formula, [name, k](int n) { return statistic_for(name, n, k); }, c.ns, job.p, job.factory, job_options);
        if (format == "json") {
            for (auto row : to_json(rows, job.formula)) {
                if (job.bound) row["bound"] = job.bound;
                all.push_back(row);
            }
        } else {
            write_rows(out, format, rows, job.formula, job.bound, first);
        }
        first = false;
    }
    if (format == "json") out << all.dump(2) << '\n';
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Random graphs with dependent edges: sampling, coupling and domination checks", "probust"};
    app.require_subcommand(1);
    Config c;

    auto* generate = app.add_subcommand("generate", "sample realizations (JSON lines)");
    add_model_options(*generate, c);
    add_run_options(*generate, c, 1);
    generate->add_option("--format", c.format, "json | csv | text");

    auto* couple = app.add_subcommand("couple", "coupled (g1, g2, u) triples (JSON lines)");
    add_model_options(*couple, c);
    add_run_options(*couple, c, 1);
    couple->add_option("--base", c.base, "ER layer probability, at most the model floor");
    couple->add_option("--format", c.format, "json | csv");

    auto* exact = app.add_subcommand("exact", "exhaustive checks at tiny n");
    add_model_options(*exact, c);
    exact->add_option("--base", c.base, "ER probability for coupling/domination (default: model floor)");
    exact->add_option("--check", c.check, "joint | coupling | domination | floor");
    exact->add_option("--property", c.property, "restrict the domination table to one property");
    exact->add_option("--format", c.format, "json, or csv for the joint table");
    exact->add_option("--out", c.out, "output file instead of stdout");

    auto* verify = app.add_subcommand("verify", "Monte Carlo domination test");
    add_model_options(*verify, c);
    add_run_options(*verify, c, 10000);
    verify->add_option("--base", c.base, "ER probability (default: model floor)");
    verify->add_option("--property", c.property, "property spec, e.g. clique>=4, diam<=2, connected")->required();
    verify->add_option("--mode", c.mode, "paired (coupled, default) | independent");
    verify->add_option("--certify-trials", c.certify_trials, "monotonicity certification trials");
    verify->add_option("--format", c.format, "json | text");

    auto* report = app.add_subcommand("report", "asymptotic formula comparison");
    report->add_option("--model", c.model, "sampled model (default er)");
    report->add_option("--p", c.p, "edge probability");
    report->add_option("--formula", c.formula, "clique | indep | chrom | domset | cycle | diam | degree");
    report->add_option("--n", c.ns, "comma-separated vertex counts")->delimiter(',');
    report->add_option("--k", c.k, "degree for the degree formula");
    report->add_option("--preset", c.preset, "paper-section-3");
    add_run_options(*report, c, 30);
    report->add_option("--format", c.format, "text | csv | json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    try {
        if (*generate) return cmd_generate(c);
        if (*couple) return cmd_couple(c);
        if (*exact) return cmd_exact(c);
        if (*verify) return cmd_verify(c);
        if (*report) return cmd_report(c);
    } catch (const RobustnessViolation& e) {
        std::cerr << "error: " << e.what() << '\n';
        return robustness;
    } catch (const UnsupportedScale& e) {
        std::cerr << "error: " << e.what() << '\n';
        return scale;
    } catch (const PairedViolation& e) {
        std::cerr << "error: " << e.what() << '\n';
        return refuted;
    } catch (const NonMonotoneProperty& e) {
        std::cerr << "error: " << e.what() << '\n';
        return non_monotone;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return failure;
    }
    return usage;
}
