#include "brute_force.hpp"
#include "probust/errors.hpp"
#include "probust/exact.hpp"
#include "probust/montecarlo.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace probust;
using namespace probust::testing;

namespace {

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double worst = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
    return worst;
}

// Coupling coin weights computed per outcome from the adjacency formula on a
// hand-maintained matrix of the union's decided edges.
std::vector<double> brute_force_coupling_table(int n, double base) {
    const std::size_t m = static_cast<std::size_t>(n) * (n - 1) / 2;
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    const std::uint64_t size = std::uint64_t{1} << m;
    std::vector<double> table(size * size, 0.0);
    for (std::uint64_t a = 0; a < size; ++a)
        for (std::uint64_t b = 0; b < size; ++b) {
            Matrix decided(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
            double w = 1.0;
            for (std::size_t idx = m; idx-- > 0;) {
                const auto [u, v] = pairs[idx];
                int k = 0;
                for (int x = 0; x < n; ++x)
                    if (x != u && x != v) k += decided[u][x] + decided[v][x];
                const double q = 0.5 - 1.0 / (k + 5.0);
                const double patch = (q - base) / (1.0 - base);
                const bool in1 = (a >> idx) & 1, in2 = (b >> idx) & 1;
                w *= (in1 ? base : 1.0 - base) * (in2 ? patch : 1.0 - patch);
                if (in1 || in2) decided[u][v] = decided[v][u] = true;
            }
            table[(a << m) | b] = w;
        }
    return table;
}

}  // namespace

TEST_CASE("exact_joint examples") {
    const auto uniform = exact_joint(*er_model(3, 0.5));
    REQUIRE(uniform.size() == 8);
    for (const double p : uniform.probs()) CHECK(p == 0.125);

    const auto single = exact_joint(*er_model(2, 0.3));
    REQUIRE(single.size() == 2);
    CHECK(single.probs()[0] == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(single.probs()[1] == doctest::Approx(0.3).epsilon(1e-15));

    const auto adj = exact_joint(*adjacency_count_model(3));
    CHECK(adj.probability(Realization(EdgeSpace(3))) == doctest::Approx(0.343).epsilon(1e-14));

    const auto trivial = exact_joint(*er_model(1, 0.4));
    REQUIRE(trivial.size() == 1);
    CHECK(trivial.probs()[0] == 1.0);
}

TEST_CASE("exact_joint matches the hand-written chain rule") {
    for (int n = 2; n <= 5; ++n) {
        const auto adj = exact_joint(*adjacency_count_model(n));
        const auto glob = exact_joint(*global_count_model(n));
        for (std::uint64_t bits = 0; bits < adj.size(); ++bits) {
            REQUIRE(std::abs(adj.probs()[bits] - bf_adjacency_model_probability(n, bits)) <= 1e-15);
            REQUIRE(std::abs(glob.probs()[bits] - bf_global_model_probability(n, bits)) <= 1e-15);
        }
    }
}

TEST_CASE("exact tables are distributions") {
    for (int n = 1; n <= 5; ++n) {
        for (const auto& model : {er_model(n, 0.3), er_model(n, 0.5)}) {
            const auto joint = exact_joint(*model);
            CHECK(std::abs(joint.total() - 1.0) <= 1e-12);
            CHECK(tv_distance(joint, product_distribution(joint.space(), model->floor())) <= 1e-12);
        }
        if (n < 2) continue;
        for (const auto& model : {global_count_model(n), adjacency_count_model(n)}) {
            const auto joint = exact_joint(*model);
            CHECK(std::abs(joint.total() - 1.0) <= 1e-12);
            for (const double p : joint.probs()) REQUIRE(p >= 0.0);
        }
    }
}

TEST_CASE("scale caps") {
    CHECK_THROWS_AS(exact_joint(*er_model(8, 0.5)), UnsupportedScale);
    CHECK_THROWS_AS(exact_coupling_joint({0.3, adjacency_count_model(6)}), UnsupportedScale);
    const auto seven = exact_joint(*er_model(7, 0.5));
    CHECK(seven.size() == (std::size_t{1} << 21));
    CHECK(std::abs(seven.total() - 1.0) <= 1e-12);
}

TEST_CASE("exact_probability examples") {
    const auto uniform = exact_joint(*er_model(3, 0.5));
    CHECK(exact_probability(uniform, clique_at_least(3)) == 0.125);
    CHECK(exact_probability(uniform, always_true()) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(exact_probability(uniform, connected()) == 0.5);
    const auto adj = exact_joint(*adjacency_count_model(4));
    CHECK(exact_probability(adj, always_true()) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tv_distance examples") {
    const EdgeSpace s(3);
    const auto uniform = exact_joint(*er_model(3, 0.5));
    CHECK(tv_distance(uniform, uniform) == 0.0);
    std::vector<double> a(8, 0.0), b(8, 0.0);
    a[2] = 1.0;
    b[5] = 1.0;
    CHECK(tv_distance(ExactDistribution(s, a), ExactDistribution(s, b)) == 1.0);
    CHECK(tv_distance(uniform, ExactDistribution(s, a)) == 0.875);
    CHECK_THROWS_AS(tv_distance(uniform, exact_joint(*er_model(2, 0.5))), DomainError);
}

TEST_CASE("suffix marginals") {
    const auto joint = exact_joint(*adjacency_count_model(4));
    const auto all = suffix_marginal(joint, 1);
    CHECK(max_abs_diff(all, joint.probs()) == 0.0);
    const auto none = suffix_marginal(joint, 7);
    REQUIRE(none.size() == 1);
    CHECK(none[0] == doctest::Approx(1.0).epsilon(1e-12));
    // e_6 alone: decided first with an empty history.
    const auto last = suffix_marginal(joint, 6);
    REQUIRE(last.size() == 2);
    CHECK(last[1] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(joint.edge_marginal(6) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("condition_on renormalizes and rejects null events") {
    const auto uniform = exact_joint(*er_model(3, 0.5));
    double mass = 0.0;
    const auto cond = condition_on(uniform, [](const Realization& g) { return g.edge_count() >= 2; }, &mass);
    CHECK(mass == 0.5);
    CHECK(cond.total() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(cond.probability(complete_graph(3)) == 0.25);
    CHECK_THROWS_AS(condition_on(uniform, [](const Realization&) { return false; }), DomainError);
}

TEST_CASE("exact coupling: trivial cases") {
    SUBCASE("er model at its floor never patches") {
        const auto joint = exact_coupling_joint({0.5, er_model(4, 0.5)});
        const auto g2 = joint.marginal_g2();
        CHECK(g2.probs()[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(tv_distance(joint.marginal_union(), joint.marginal_g1()) <= 1e-12);
    }
    SUBCASE("base 0 leaves the ER layer empty") {
        const auto model = adjacency_count_model(4);
        const auto joint = exact_coupling_joint({0.0, model});
        CHECK(joint.marginal_g1().probs()[0] == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(tv_distance(joint.marginal_union(), exact_joint(*model)) <= 1e-12);
    }
}

TEST_CASE("exact coupling reproduces the model and the ER layer") {
    for (int n = 2; n <= 4; ++n) {
        const std::vector<CouplingParams> cases{{0.5, er_model(n, 0.5)},
                                                {0.5, global_count_model(n)},
                                                {0.3, adjacency_count_model(n)},
                                                {0.2, adjacency_count_model(n)},
                                                {0.1, global_count_model(n)}};
        for (const auto& params : cases) {
            const auto joint = exact_coupling_joint(params);
            INFO(params.model->name() << " n=" << n << " base=" << params.base);
            double total = 0.0;
            for (const double w : joint.table()) total += w;
            CHECK(std::abs(total - 1.0) <= 1e-12);
            CHECK(tv_distance(joint.marginal_union(), exact_joint(*params.model)) <= 1e-12);
            CHECK(tv_distance(joint.marginal_g1(), product_distribution(joint.space(), params.base)) <= 1e-12);
            REQUIRE(joint.levels().size() == joint.space().m());
            for (const auto& level : joint.levels()) {
                CHECK(level.tv_union <= 1e-12);
                CHECK(level.tv_g1 <= 1e-12);
            }
        }
    }
}

TEST_CASE("exact coupling table matches per-outcome weights") {
    for (int n = 2; n <= 4; ++n) {
        const auto joint = exact_coupling_joint({0.3, adjacency_count_model(n)});
        const auto reference = brute_force_coupling_table(n, 0.3);
        REQUIRE(joint.table().size() == reference.size());
        CHECK(max_abs_diff(joint.table(), reference) <= 1e-15);
    }
}

TEST_CASE("exact coupling rejects a base above the floor") {
    CHECK_THROWS_AS(exact_coupling_joint({0.4, adjacency_count_model(4)}), RobustnessViolation);
}

TEST_CASE("exact domination examples") {
    const auto same = exact_domination_check(*er_model(4, 0.5), 0.5, connected());
    CHECK(same.prob_er == doctest::Approx(same.prob_model).epsilon(1e-14));
    CHECK(same.holds);
    const auto adj = adjacency_count_model(4);
    const auto clique = exact_domination_check(*adj, 0.3, clique_at_least(3));
    CHECK(clique.holds);
    CHECK(clique.prob_er <= clique.prob_model);
    const auto conn = exact_domination_check(*adj, 0.3, connected());
    CHECK(conn.holds);
    CHECK_THROWS_AS(exact_domination_check(*adj, 0.35, connected()), PreconditionError);
    CHECK_THROWS_AS(exact_domination_check(*adj, 0.3, exactly_edges(3)), NonMonotoneProperty);
}

TEST_CASE("exact domination holds for every model and monotone oracle at n = 3, 4") {
    for (int n = 3; n <= 4; ++n) {
        const std::vector<ModelPtr> models{er_model(n, 0.5), er_model(n, 0.2), global_count_model(n),
                                           adjacency_count_model(n)};
        for (const auto& model : models)
            for (const auto& oracle : monotone_oracles_for(n)) {
                const auto check = exact_domination_check(*model, model->floor(), oracle);
                CHECK_MESSAGE(check.holds, model->name() << " " << oracle.spec() << " n=" << n);
            }
    }
}

TEST_CASE("sampled frequencies fit the exact joint") {
    const auto model = adjacency_count_model(4);
    const auto joint = exact_joint(*model);
    Rng rng(81);
    const int samples = 100000;
    std::vector<std::uint64_t> counts(joint.size(), 0);
    for (int t = 0; t < samples; ++t) ++counts[sample_direct(*model, rng).to_integer()];
    double chi = 0.0;
    int cells = 0;
    double pooled_expected = 0.0, pooled_observed = 0.0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        const double expected = joint.probs()[k] * samples;
        if (expected < 5.0) {
            pooled_expected += expected;
            pooled_observed += static_cast<double>(counts[k]);
            continue;
        }
        chi += (counts[k] - expected) * (counts[k] - expected) / expected;
        ++cells;
    }
    if (pooled_expected > 0.0) {
        chi += (pooled_observed - pooled_expected) * (pooled_observed - pooled_expected) / pooled_expected;
        ++cells;
    }
    const double p_value = chi_square_survival(chi, cells - 1);
    INFO("chi2=" << chi << " cells=" << cells);
    CHECK(p_value > 1e-3);
}

TEST_CASE("csv export") {
    const auto joint = exact_joint(*er_model(2, 0.25));
    std::ostringstream out;
    joint.write_csv(out);
    CHECK(out.str() == "realization,probability\n0,0.75\n1,0.25\n");
}

TEST_CASE("conditioned adjacency model: exact probe matches an independent computation") {
    for (int n = 4; n <= 5; ++n) {
        const auto report = conditioned_adjacency_floor(n);
        const std::size_t m = static_cast<std::size_t>(n) * (n - 1) / 2;
        const EdgeSpace space(n);
        std::vector<double> cond(std::size_t{1} << m, 0.0);
        double mass = 0.0;
        for (std::uint64_t bits = 0; bits < cond.size(); ++bits) {
            const auto g = Realization::from_integer(space, bits);
            bool ok = true;
            for (int u = 0; u < n && ok; ++u)
                for (int v = u + 1; v < n && ok; ++v) ok = bf_adjacent_count(g, u, v) >= 3;
            if (!ok) continue;
            cond[bits] = bf_adjacency_model_probability(n, bits);
            mass += cond[bits];
        }
        CHECK(report.event_probability == doctest::Approx(mass).epsilon(1e-12));
        double min_marginal = 1.0, min_full = 1.0;
        for (std::size_t i = 0; i < m; ++i) {
            double marginal = 0.0;
            for (std::uint64_t bits = 0; bits < cond.size(); ++bits) {
                if ((bits >> i) & 1) marginal += cond[bits] / mass;
                if ((bits >> i) & 1) continue;
                const double off = cond[bits], on = cond[bits | (std::uint64_t{1} << i)];
                if (off + on > 0.0) min_full = std::min(min_full, on / (off + on));
            }
            min_marginal = std::min(min_marginal, marginal);
        }
        CHECK(report.min_marginal == doctest::Approx(min_marginal).epsilon(1e-12));
        CHECK(report.min_full_conditional == doctest::Approx(min_full).epsilon(1e-12));
        CHECK(report.min_sequential <= 1.0);
        CHECK(report.marginal_meets_claim == (min_marginal >= 0.375 - 1e-9));
        CHECK(report.full_meets_claim == (min_full >= 0.375 - 1e-9));
        MESSAGE("n=" << n << " event=" << report.event_probability << " min marginal=" << report.min_marginal
                     << " min sequential=" << report.min_sequential << " min full=" << report.min_full_conditional);
    }
}
