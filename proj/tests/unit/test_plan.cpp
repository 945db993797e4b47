#include <cmath>
#include <random>

#include "doctest.h"
#include "holarchy/plan.hpp"
#include "holarchy/rng.hpp"

using namespace holarchy;

TEST_CASE("variance of a constant vector is zero") {
    const std::vector<double> v{0, 0, 0, 0};
    CHECK(variance(v) == 0.0);
}

TEST_CASE("variance of [1,-1] is 1") {
    const std::vector<double> v{1, -1};
    CHECK(variance(v) == doctest::Approx(1.0));
}

TEST_CASE("variance of [1,2,3,4] is 1.25") {
    // mean 2.5, squared deviations 2.25+0.25+0.25+2.25 = 5, over d=4
    const std::vector<double> v{1, 2, 3, 4};
    CHECK(variance(v) == doctest::Approx(1.25));
}

TEST_CASE("variance rejects the empty vector") {
    CHECK_THROWS_AS(variance(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("variance is translation invariant") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const int d = 1 + static_cast<int>(bounded_uint(rng, 20));
        std::vector<double> v(d), shifted(d);
        const double c = 100.0 * canonical_double(rng) - 50.0;
        for (int i = 0; i < d; ++i) {
            v[i] = 10.0 * canonical_double(rng) - 5.0;
            shifted[i] = v[i] + c;
        }
        const double a = variance(v);
        const double b = variance(shifted);
        CHECK(std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(a)));
    }
}

namespace {
PlanSet with_costs(std::vector<double> costs) {
    PlanSet ps;
    for (double c : costs) ps.plans.push_back({{0.0}, c});
    return ps;
}

std::vector<double> costs_of(const PlanSet& ps) {
    std::vector<double> out;
    for (const auto& p : ps.plans) out.push_back(p.local_cost);
    return out;
}
}  // namespace

TEST_CASE("normalize_local_costs maps an affine range onto [0,1]") {
    const auto ps = normalize_local_costs(with_costs({0, 1, 2, 3}));
    CHECK(costs_of(ps) == std::vector<double>{0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0});
}

TEST_CASE("normalize_local_costs collapses a degenerate range to zero") {
    const auto ps = normalize_local_costs(with_costs({5, 5, 5}));
    CHECK(costs_of(ps) == std::vector<double>{0, 0, 0});
}

TEST_CASE("normalize_local_costs keeps plan order") {
    const auto ps = normalize_local_costs(with_costs({0.9, 0.5, 0.6}));
    CHECK(costs_of(ps)[0] == doctest::Approx(1.0));
    CHECK(costs_of(ps)[1] == doctest::Approx(0.0));
    CHECK(costs_of(ps)[2] == doctest::Approx(0.25));
}

TEST_CASE("normalize_local_costs is idempotent") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        PlanSet ps;
        const int k = 1 + static_cast<int>(bounded_uint(rng, 6));
        for (int i = 0; i < k; ++i) ps.plans.push_back({{0.0}, 10.0 * canonical_double(rng)});
        const auto once = normalize_local_costs(ps);
        const auto twice = normalize_local_costs(once);
        CHECK(costs_of(once) == costs_of(twice));
    }
}

TEST_CASE("weighted_score ignores the local cost at lambda 0") {
    // variance([2.2, -1.6]) = 3.61; any local cost must leave the score alone
    const Plan p{{0.0, 0.0}, 0.9};
    const std::vector<double> g{2.2, -1.6};
    CHECK(weighted_score(g, p, {CostKind::Variance, 0.0}) == variance(g));
}

TEST_CASE("weighted_score mixes both terms convexly") {
    // variance 2.0 and local cost 1.0 at lambda 0.5 gives 1.5
    const Plan p{{0.0, 0.0}, 1.0};
    const std::vector<double> g{std::sqrt(2.0), -std::sqrt(2.0)};
    CHECK(weighted_score(g, p, {CostKind::Variance, 0.5}) == doctest::Approx(1.5));
}

TEST_CASE("weighted_score is zero when both terms are zero") {
    const Plan p{{0.0}, 0.0};
    const std::vector<double> g{3.0, 3.0};
    CHECK(weighted_score(g, p, {CostKind::Variance, 0.75}) == 0.0);
}

TEST_CASE("argmin at lambda 0 is invariant under local-cost permutation") {
    std::mt19937_64 rng(23);
    const CostFunction cf{CostKind::Variance, 0.0};
    for (int trial = 0; trial < 30; ++trial) {
        const int k = 2 + static_cast<int>(bounded_uint(rng, 5));
        PlanSet ps;
        for (int i = 0; i < k; ++i) {
            Plan p;
            for (int j = 0; j < 4; ++j) p.values.push_back(6.0 * canonical_double(rng) - 3.0);
            p.local_cost = canonical_double(rng);
            ps.plans.push_back(p);
        }
        const std::vector<double> g{1.0, -2.0, 0.5, 0.5};
        auto argmin = [&](const PlanSet& set) {
            int best = 0;
            double best_score = weighted_score(g, set.plans[0], cf);
            for (int i = 1; i < set.size(); ++i) {
                const double s = weighted_score(g, set.plans[i], cf);
                if (s < best_score) {
                    best_score = s;
                    best = i;
                }
            }
            return best;
        };
        PlanSet permuted = ps;
        for (int i = k - 1; i > 0; --i) {
            const int j = static_cast<int>(bounded_uint(rng, i + 1));
            std::swap(permuted.plans[i].local_cost, permuted.plans[j].local_cost);
        }
        CHECK(argmin(ps) == argmin(permuted));
    }
}

TEST_CASE("validate_plan_sets flags inconsistent dimensions") {
    std::vector<PlanSet> sets(2);
    sets[0].agent_id = 0;
    sets[0].plans.push_back({{1.0, 2.0}, 0.0});
    sets[1].agent_id = 1;
    sets[1].plans.push_back({{1.0}, 0.0});
    CHECK_THROWS_AS(validate_plan_sets(sets), std::invalid_argument);
}
