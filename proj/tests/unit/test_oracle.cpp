#include <algorithm>

#include "doctest.h"
#include "holarchy/data_io.hpp"
#include "holarchy/engine.hpp"
#include "holarchy/oracle.hpp"

using namespace holarchy;

namespace {
PlanSet make_set(int agent, std::vector<std::pair<std::vector<double>, double>> plans) {
    PlanSet ps;
    ps.agent_id = agent;
    for (auto& [v, c] : plans) ps.plans.push_back({std::move(v), c});
    return ps;
}
}  // namespace

TEST_CASE("one agent with four plans enumerates four costs") {
    const std::vector<PlanSet> plans{
        make_set(0, {{{3, 1}, 0.0}, {{2, 2}, 0.3}, {{0, 4}, 0.7}, {{1, 1}, 1.0}})};
    const CostFunction cf{CostKind::Variance, 0.0};
    const auto all = enumerate_all_costs(plans, cf);
    REQUIRE(all.size() == 4);
    const auto res = enumerate_costs(plans, cf);
    CHECK(res.optimum_cost == all.front());
    CHECK(res.optimum_cost == 0.0);  // [2,2] and [1,1] are flat
}

TEST_CASE("complementary two-agent plans have optimum zero") {
    std::vector<PlanSet> plans;
    for (int a = 0; a < 2; ++a) plans.push_back(make_set(a, {{{1, 0}, 0.0}, {{0, 1}, 1.0}}));
    const auto res = enumerate_costs(plans, {CostKind::Variance, 0.0});
    CHECK(res.combinations == 4);
    CHECK(res.optimum_cost == 0.0);
    // the optimum pairs one [1,0] with one [0,1]
    CHECK(res.optimum_selection[0] != res.optimum_selection[1]);
}

TEST_CASE("ten agents with four plans enumerate 4^10 combinations") {
    const auto plans = generate_synthetic(10, 4, 3, 42);
    const auto res = enumerate_costs(plans, {CostKind::Variance, 0.0});
    CHECK(res.combinations == 1048576);
}

TEST_CASE("the enumeration bound refuses runaway instances") {
    const auto plans = generate_synthetic(13, 16, 2, 1);  // 16^13 > 2^24
    CHECK_THROWS_WITH_AS(enumerate_costs(plans, {CostKind::Variance, 0.0}).combinations,
                         doctest::Contains("2^24"), std::invalid_argument);
}

TEST_CASE("rank percentile counts strictly cheaper combinations") {
    const std::vector<double> sorted{1.0, 2.0, 3.0};
    CHECK(rank_of(1.0, sorted) == 0.0);
    CHECK(rank_of(2.0, sorted) == doctest::Approx(100.0 / 3.0));
    CHECK(rank_of(3.0, sorted) < 100.0);
}

TEST_CASE("streaming ranks agree with the materialized list") {
    const auto plans = generate_synthetic(5, 3, 4, 7);
    const CostFunction cf{CostKind::Variance, 0.0};
    const auto all = enumerate_all_costs(plans, cf);
    const std::vector<double> queries{all.front(), all[all.size() / 2], all.back() + 1.0};
    const auto ranks = rank_percentiles(plans, cf, queries);
    for (std::size_t i = 0; i < queries.size(); ++i)
        CHECK(ranks[i] == doctest::Approx(rank_of(queries[i], all)));
}

TEST_CASE("the oracle optimum lower-bounds the engine") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const auto plans = generate_synthetic(8, 3, 5, seed);
        const CostFunction cf{CostKind::Variance, 0.0};
        const auto res = enumerate_costs(plans, cf);
        const auto t = build_tree(8, 2, seed);
        Network net(&t);
        const auto trace = run_baseline(t, plans, cf, 30, 3, net);
        CHECK(res.optimum_cost <= trace.final_cost() + 1e-12);
    }
}

TEST_CASE("oracle and engine agree on single-agent instances") {
    for (const double lambda : {0.0, 0.5}) {
        const auto plans = generate_synthetic(1, 6, 4, 99);
        const CostFunction cf{CostKind::Variance, lambda};
        const auto res = enumerate_costs(plans, cf);
        const auto t = build_tree(1, 2, 1);
        Selections sel;
        Network net(&t);
        run_baseline(t, plans, cf, 3, 3, net, &sel);
        CHECK(sel[0] == res.optimum_selection[0]);
    }
}
