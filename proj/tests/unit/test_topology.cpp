#include <algorithm>
#include <numeric>
#include <set>

#include "doctest.h"
#include "holarchy/topology.hpp"

using namespace holarchy;

namespace {

long long powi(int b, int e) {
    long long r = 1;
    while (e--) r *= b;
    return r;
}

long long perfect_size(int c, int h) { return (powi(c, h + 1) - 1) / (c - 1); }

std::vector<int> holon_sizes(const std::vector<Holon>& stage) {
    std::vector<int> out;
    for (const auto& h : stage) out.push_back(static_cast<int>(h.members.size()));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("7 agents at fanout 2 form a perfect binary tree of height 2") {
    const auto t = build_tree(7, 2, 1);
    CHECK(t.height() == 2);
    int leaves = 0;
    for (int n = 0; n < t.size(); ++n)
        if (t.is_leaf(n)) ++leaves;
    CHECK(leaves == 4);
}

TEST_CASE("15 agents at fanout 2 give height 3 and 14 edges") {
    const auto t = build_tree(15, 2, 1);
    CHECK(t.height() == 3);
    CHECK(t.num_edges() == 14);
}

TEST_CASE("10 agents at fanout 3 fill the last level left to right") {
    const auto t = build_tree(10, 3, 1);
    CHECK(t.height() == 2);
    // root and its three children, six grandchildren under the first two
    CHECK(t.children(0).size() == 3);
    CHECK(t.children(1).size() == 3);
    CHECK(t.children(2).size() == 3);
    CHECK(t.children(3).empty());
}

TEST_CASE("build_tree rejects an empty system") {
    CHECK_THROWS_AS(build_tree(0, 2, 1), std::invalid_argument);
}

TEST_CASE("placement is a seeded bijection over agents") {
    const auto t = build_tree(40, 3, 99);
    std::set<int> seen(t.agents().begin(), t.agents().end());
    CHECK(static_cast<int>(seen.size()) == 40);
    CHECK(*seen.begin() == 0);
    CHECK(*seen.rbegin() == 39);
    const auto t2 = build_tree(40, 3, 99);
    CHECK(t.agents() == t2.agents());
    const auto t3 = build_tree(40, 3, 100);
    CHECK(t.agents() != t3.agents());
}

TEST_CASE("full decomposition of the 15-node binary tree") {
    const auto t = build_tree(15, 2, 1);
    const auto plan = decompose_holarchy(t, Scale::Full);
    REQUIRE(plan.num_stages() == 3);
    CHECK(holon_sizes(plan.stages[0]) == std::vector<int>{3, 3, 3, 3});
    CHECK(holon_sizes(plan.stages[1]) == std::vector<int>{7, 7});
    CHECK(holon_sizes(plan.stages[2]) == std::vector<int>{15});
    CHECK(plan.stages[2][0].root_node == t.root());
}

TEST_CASE("full decomposition of the 7-node binary tree") {
    const auto t = build_tree(7, 2, 1);
    const auto plan = decompose_holarchy(t, Scale::Full);
    REQUIRE(plan.num_stages() == 2);
    CHECK(holon_sizes(plan.stages[0]) == std::vector<int>{3, 3});
    CHECK(holon_sizes(plan.stages[1]) == std::vector<int>{7});
}

TEST_CASE("partial decomposition recurses in one branch, then the whole tree") {
    const auto t = build_tree(15, 2, 1);
    const auto plan = decompose_holarchy(t, Scale::Partial, 0);
    REQUIRE(plan.num_stages() == 3);
    CHECK(holon_sizes(plan.stages[0]) == std::vector<int>{3, 3});
    CHECK(holon_sizes(plan.stages[1]) == std::vector<int>{7});
    CHECK(holon_sizes(plan.stages[2]) == std::vector<int>{15});
    CHECK(plan.stages[1][0].root_node == t.children(t.root())[0]);
}

TEST_CASE("partial scale requires a branch index") {
    const auto t = build_tree(7, 2, 1);
    CHECK_THROWS_AS(decompose_holarchy(t, Scale::Partial), std::invalid_argument);
    CHECK_THROWS_AS(decompose_holarchy(t, Scale::Partial, 5), std::invalid_argument);
}

TEST_CASE("perfect-tree stage counts and holon sizes match the closed forms") {
    for (int c = 2; c <= 5; ++c) {
        for (int h = 1; h <= 4; ++h) {
            const int n = static_cast<int>(perfect_size(c, h));
            const auto t = build_tree(n, c, 3);
            const auto plan = decompose_holarchy(t, Scale::Full);
            REQUIRE(plan.num_stages() == h);
            for (int j = 0; j < h; ++j) {
                CHECK(static_cast<long long>(plan.stages[j].size()) == powi(c, h - 1 - j));
                long long members = 0;
                for (int i = 0; i <= j + 1; ++i) members += powi(c, i);
                for (const auto& holon : plan.stages[j])
                    CHECK(static_cast<long long>(holon.members.size()) == members);
            }
        }
    }
}

TEST_CASE("stage-j members are exactly the nodes at levels <= j+1") {
    const auto t = build_tree(perfect_size(3, 3), 3, 5);
    const auto plan = decompose_holarchy(t, Scale::Full);
    for (int j = 0; j < plan.num_stages(); ++j) {
        std::set<int> members;
        for (const auto& holon : plan.stages[j]) {
            for (int m : holon.members) {
                CHECK(!members.count(m));  // disjoint within the stage
                members.insert(m);
            }
        }
        std::set<int> expected;
        for (int n = 0; n < t.size(); ++n)
            if (t.level(n) <= j + 1) expected.insert(n);
        CHECK(members == expected);
    }
}

TEST_CASE("single-node tree decomposes into one whole-tree stage") {
    const auto t = build_tree(1, 2, 1);
    const auto plan = decompose_holarchy(t, Scale::Full);
    REQUIRE(plan.num_stages() == 1);
    CHECK(plan.stages[0].size() == 1);
    CHECK(plan.stages[0][0].members == std::vector<int>{0});
}

TEST_CASE("root failure splits a 7-node binary tree into two 3-node trees") {
    const auto t = build_tree(7, 2, 1);
    const auto comps = partition_on_failure(t, {0});
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].size() == 3);
    CHECK(comps[1].size() == 3);
    CHECK(comps[0].root() == 0);
    CHECK(comps[0].original_position(0) == 1);
    CHECK(comps[1].original_position(0) == 2);
}

TEST_CASE("failing one depth-1 node of the 15-node tree leaves components 8/3/3") {
    const auto t = build_tree(15, 2, 1);
    const auto comps = partition_on_failure(t, {1});
    std::vector<int> sizes;
    for (const auto& c : comps) sizes.push_back(c.size());
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<int>{3, 3, 8});
}

TEST_CASE("failing a leaf leaves one tree of n-1 nodes") {
    const auto t = build_tree(15, 2, 1);
    const auto comps = partition_on_failure(t, {14});
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].size() == 14);
}

TEST_CASE("failing every node yields the empty partition") {
    const auto t = build_tree(3, 2, 1);
    CHECK(partition_on_failure(t, {0, 1, 2}).empty());
}

TEST_CASE("components plus failed positions cover the original node set") {
    const auto t = build_tree(22, 3, 17);
    const std::set<int> failed{0, 4, 9, 13};
    const auto comps = partition_on_failure(t, failed);
    std::set<int> covered(failed.begin(), failed.end());
    for (const auto& c : comps)
        for (int n = 0; n < c.size(); ++n) {
            CHECK(!covered.count(c.original_position(n)));  // disjoint
            covered.insert(c.original_position(n));
        }
    CHECK(static_cast<int>(covered.size()) == t.size());
}

TEST_CASE("link cuts split off the subtree below the cut") {
    const auto t = build_tree(7, 2, 1);
    const auto comps = partition_on_failure(t, {}, {{0, 1}});
    REQUIRE(comps.size() == 2);
    std::vector<int> sizes{comps[0].size(), comps[1].size()};
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<int>{3, 4});
}
