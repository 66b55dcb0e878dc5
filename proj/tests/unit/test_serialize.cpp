#include "probust/errors.hpp"
#include "probust/serialize.hpp"

#include <doctest.h>

#include <sstream>

using namespace probust;
using nlohmann::json;

TEST_CASE("model descriptors round-trip through JSON") {
    ModelDescriptor er{ModelKind::er, 5, 0.25};
    const json j = er.to_json();
    CHECK(j["kind"] == "er");
    CHECK(j["n"] == 5);
    CHECK(j["params"]["p"] == 0.25);
    const auto back = ModelDescriptor::from_json(j);
    CHECK(back.kind == ModelKind::er);
    CHECK(back.n == 5);
    CHECK(back.p == 0.25);

    const auto adj = ModelDescriptor::from_json(json::parse(R"({"kind":"adjacency-count","n":7})"));
    CHECK(adj.kind == ModelKind::adjacency_count);
    CHECK(adj.declared_floor() == 0.3);
    CHECK(ModelDescriptor::from_json(adj.to_json()).n == 7);

    const auto cond = ModelDescriptor::from_json(
        json::parse(R"({"kind":"adjacency-count-conditioned","n":5,"params":{"budget":12}})"));
    CHECK(cond.budget == 12);
    CHECK(cond.declared_floor() == 0.375);
}

TEST_CASE("descriptor validation") {
    CHECK_THROWS_AS(ModelDescriptor::from_json(json::parse(R"({"kind":"er","n":3,"params":{"p":1.5}})")), DomainError);
    CHECK_THROWS_AS(ModelDescriptor::from_json(json::parse(R"({"kind":"er","n":3})")), DomainError);
    CHECK_THROWS_AS(ModelDescriptor::from_json(json::parse(R"({"kind":"nosuch","n":3})")), DomainError);
    CHECK_THROWS_AS(ModelDescriptor::from_json(json::parse(R"({"kind":"global-count","n":1})")), DomainError);
    CHECK_THROWS_AS(ModelDescriptor::from_json(json::parse(R"({"n":3})")), DomainError);
    CHECK_THROWS_AS(ModelDescriptor::from_json(json::parse(R"({"kind":"er","n":"three","params":{"p":0.5}})")),
                    DomainError);
}

TEST_CASE("kind names and aliases") {
    CHECK(parse_kind("er") == ModelKind::er);
    CHECK(parse_kind("global") == ModelKind::global_count);
    CHECK(parse_kind("adjcount") == ModelKind::adjacency_count);
    CHECK(parse_kind("adjcount-cond") == ModelKind::adjacency_count_conditioned);
    for (auto kind : {ModelKind::er, ModelKind::global_count, ModelKind::adjacency_count,
                      ModelKind::adjacency_count_conditioned})
        CHECK(parse_kind(kind_name(kind)) == kind);
    CHECK_THROWS_AS(parse_kind("erdos"), DomainError);
}

TEST_CASE("make_model and make_sampler") {
    CHECK(make_model({ModelKind::global_count, 4})->floor() == 0.5);
    CHECK_THROWS_AS(make_model({ModelKind::adjacency_count_conditioned, 4}), DomainError);
    const auto sampler = make_sampler({ModelKind::adjacency_count_conditioned, 4});
    Rng rng(91);
    CHECK(satisfies_adjacency_condition(sampler->sample(rng)));
}

TEST_CASE("realization and coupling records") {
    const auto g = Realization::complete(EdgeSpace(3));
    const json r = realization_record(g, 17, 2);
    CHECK(r.dump() == R"({"g":"7","index":2,"n":3,"seed":17})");

    Rng rng(92);
    const auto triple = generate_coupled({0.3, adjacency_count_model(5)}, rng);
    const json c = coupling_record(triple, 5, 0);
    const auto parsed = parse_coupling_record(c);
    CHECK(parsed.g1 == triple.g1);
    CHECK(parsed.g2 == triple.g2);
    CHECK(parsed.u == triple.u);

    json broken = c;
    broken["u"] = "000";
    CHECK_THROWS_AS(parse_coupling_record(broken), DomainError);
    broken.erase("g1");
    CHECK_THROWS_AS(parse_coupling_record(broken), DomainError);
}

TEST_CASE("report objects") {
    const auto est = binomial_interval(30, 100);
    const json e = to_json(est);
    CHECK(e["successes"] == 30);
    CHECK(e["method"] == "wilson");

    FloorCheck fc;
    fc.floor = 0.3;
    fc.min_conditional = 0.1;
    fc.counterexample.emplace(2, "10");
    const json f = to_json(fc);
    CHECK(f["counterexample"]["edge"] == 2);
    CHECK(f["verified"] == false);

    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1.0) == "1");

    std::ostringstream csv;
    write_asymptotic_csv(csv, {AsymptoticRow{64, 0.5, 12.0, 10.5, 0.5, 30, "max_clique_size", StatisticKind::exact}},
                         "clique");
    CHECK(csv.str() ==
          "formula,n,p,predicted,observed_mean,observed_sd,samples,statistic,statistic_kind\n"
          "clique,64,0.5,12,10.5,0.5,30,max_clique_size,exact\n");
}
