#include <random>

#include "doctest.h"
#include "holarchy/metrics.hpp"
#include "holarchy/rng.hpp"

using namespace holarchy;

TEST_CASE("improvement index of equal costs is zero") {
    CHECK(improvement_index(2.0, 2.0) == 0.0);
    CHECK(improvement_index(0.0, 0.0) == 0.0);
}

TEST_CASE("improvement index handles a single zero value") {
    CHECK(improvement_index(1.0, 0.0) == 1.0);
    CHECK(improvement_index(0.0, 1.0) == -1.0);
}

TEST_CASE("improvement index arithmetic") {
    CHECK(improvement_index(1.0, 3.0) == doctest::Approx(-0.5));
}

TEST_CASE("improvement index is antisymmetric and bounded") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 2000; ++i) {
        const double a = 100.0 * canonical_double(rng);
        const double b = 100.0 * canonical_double(rng);
        const double ab = improvement_index(a, b);
        CHECK(ab == -improvement_index(b, a));
        CHECK(ab >= -1.0);
        CHECK(ab <= 1.0);
    }
}

TEST_CASE("baseline communication cost") {
    CHECK(baseline_comm_cost(2, 3) == 28);  // 15 nodes, 14 edges, both phases
    CHECK(baseline_comm_cost(2, 1) == 4);
    CHECK(baseline_comm_cost(3, 2) == 24);  // 13 nodes, 12 edges
}

TEST_CASE("total holarchic communication cost") {
    CHECK(total_comm_cost(2, 3, 1) == 68);  // 16 + 24 + 28 per stage
    CHECK(total_comm_cost(2, 1, 1) == 4);   // single holon = one baseline iteration
    CHECK(total_comm_cost(2, 3, 5) == 340);
}

TEST_CASE("synchronized holarchic communication cost") {
    CHECK(sync_comm_cost(2, 3, 1) == 44);  // stage terms 2 + 6 + 14, doubled
    CHECK(sync_comm_cost(2, 1, 1) == 4);
    for (int c = 2; c <= 5; ++c)
        for (int h = 1; h <= 4; ++h)
            for (int tau : {1, 3, 5}) CHECK(sync_comm_cost(c, h, tau) <= total_comm_cost(c, h, tau));
}

TEST_CASE("one full-scale holarchic iteration is never cheaper than baseline") {
    for (int c = 2; c <= 5; ++c)
        for (int h = 1; h <= 4; ++h) CHECK(total_comm_cost(c, h, 1) >= baseline_comm_cost(c, h));
}

TEST_CASE("relative performance") {
    CHECK(relative_performance(10, 2, 10, 2) == doctest::Approx(1.0));
    CHECK(relative_performance(10, 6, 10, 2) == doctest::Approx(0.5));
    CHECK(relative_performance(7, 7, 10, 2) == doctest::Approx(0.0));
    CHECK_FALSE(relative_performance(1, 0, 5, 5).has_value());
}

TEST_CASE("standardize uses the population divisor") {
    const auto r = standardize({0.0, 2.0});
    CHECK_FALSE(r.degenerate);
    CHECK(r.values == std::vector<double>{-1.0, 1.0});
}

TEST_CASE("standardize flags zero spread") {
    const auto r = standardize({1.0, 1.0, 1.0});
    CHECK(r.degenerate);
    CHECK(r.values == std::vector<double>{0.0, 0.0, 0.0});
}

TEST_CASE("standardized samples have zero mean") {
    std::mt19937_64 rng(17);
    std::vector<double> xs;
    for (int i = 0; i < 64; ++i) xs.push_back(50.0 * canonical_double(rng) - 10.0);
    const auto r = standardize(xs);
    double mean = 0.0;
    for (double v : r.values) mean += v;
    CHECK(std::abs(mean / 64.0) < 1e-12);
}
