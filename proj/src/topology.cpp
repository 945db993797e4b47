#include "holarchy/topology.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "holarchy/rng.hpp"

namespace holarchy {

TreeTopology TreeTopology::balanced(int num_agents, int fanout, std::uint64_t placement_seed) {
    if (num_agents < 1) throw std::invalid_argument("build_tree: need at least one agent");
    if (fanout < 2) throw std::invalid_argument("build_tree: fanout must be >= 2");

    TreeTopology t;
    t.fanout_ = fanout;
    t.parent_.resize(num_agents);
    t.children_.resize(num_agents);
    t.orig_pos_.resize(num_agents);

    for (int pos = 0; pos < num_agents; ++pos) {
        t.orig_pos_[pos] = pos;
        t.parent_[pos] = pos == 0 ? -1 : (pos - 1) / fanout;
        if (pos > 0) t.children_[t.parent_[pos]].push_back(pos);
    }

    t.agent_.resize(num_agents);
    std::iota(t.agent_.begin(), t.agent_.end(), 0);
    std::mt19937_64 rng(placement_seed);
    for (int i = num_agents - 1; i > 0; --i) {
        const int j = static_cast<int>(bounded_uint(rng, static_cast<std::uint64_t>(i) + 1));
        std::swap(t.agent_[i], t.agent_[j]);
    }

    t.finalize_depths();
    return t;
}

void TreeTopology::finalize_depths() {
    depth_.assign(parent_.size(), 0);
    height_ = 0;
    for (int node = 1; node < size(); ++node) {
        depth_[node] = depth_[parent_[node]] + 1;
        height_ = std::max(height_, depth_[node]);
    }
}

bool TreeTopology::adjacent(int a, int b) const {
    if (a < 0 || b < 0 || a >= size() || b >= size()) return false;
    return parent_[a] == b || parent_[b] == a;
}

std::vector<int> TreeTopology::subtree_bfs(int node) const {
    std::vector<int> out;
    out.push_back(node);
    for (std::size_t i = 0; i < out.size(); ++i)
        for (int ch : children_[out[i]]) out.push_back(ch);
    return out;
}

TreeTopology build_tree(int num_agents, int fanout, std::uint64_t seed) {
    return TreeTopology::balanced(num_agents, fanout, seed);
}

namespace {

Holon make_holon(const TreeTopology& t, int root_node, int stage) {
    return Holon{root_node, t.subtree_bfs(root_node), stage};
}

// Stages over the subtree rooted at `top`: stage j holds one holon per
// internal node whose level within that subtree is j+1. The last stage is
// the subtree itself. A childless `top` yields no stages.
std::vector<std::vector<int>> stage_roots_under(const TreeTopology& t, int top) {
    const auto nodes = t.subtree_bfs(top);
    int sub_height = 0;
    for (int n : nodes) sub_height = std::max(sub_height, t.depth(n) - t.depth(top));
    std::vector<std::vector<int>> roots(sub_height);
    for (int n : nodes) {
        if (t.is_leaf(n)) continue;
        const int sub_level = sub_height - (t.depth(n) - t.depth(top));
        roots[sub_level - 1].push_back(n);
    }
    return roots;
}

}  // namespace

HolonStagePlan decompose_holarchy(const TreeTopology& t, Scale scale,
                                  std::optional<int> branch_index) {
    HolonStagePlan plan;
    if (scale == Scale::Partial) {
        if (!branch_index)
            throw std::invalid_argument("decompose_holarchy: partial scale requires a branch index");
        const auto& branches = t.children(t.root());
        if (*branch_index < 0 || *branch_index >= static_cast<int>(branches.size()))
            throw std::invalid_argument("decompose_holarchy: branch index out of range");
        const int top = branches[*branch_index];
        for (const auto& roots : stage_roots_under(t, top)) {
            std::vector<Holon> stage;
            for (int r : roots) stage.push_back(make_holon(t, r, plan.num_stages()));
            plan.stages.push_back(std::move(stage));
        }
        plan.stages.push_back({make_holon(t, t.root(), plan.num_stages())});
        return plan;
    }

    for (const auto& roots : stage_roots_under(t, t.root())) {
        std::vector<Holon> stage;
        for (int r : roots) stage.push_back(make_holon(t, r, plan.num_stages()));
        plan.stages.push_back(std::move(stage));
    }
    if (plan.stages.empty())  // single-node tree
        plan.stages.push_back({make_holon(t, t.root(), 0)});
    return plan;
}

std::vector<TreeTopology> partition_on_failure(
    const TreeTopology& t, const std::set<int>& failed_positions,
    const std::vector<std::pair<int, int>>& cut_edges) {
    for (int pos : failed_positions)
        if (pos < 0 || pos >= t.size())
            throw std::invalid_argument("partition_on_failure: position outside topology");

    std::set<std::pair<int, int>> cut;
    for (auto [a, b] : cut_edges) {
        if (!t.adjacent(a, b))
            throw std::invalid_argument("partition_on_failure: edge not in topology");
        cut.insert({std::min(a, b), std::max(a, b)});
    }
    auto edge_alive = [&](int child) {
        const int p = t.parent(child);
        return !cut.count({std::min(child, p), std::max(child, p)});
    };

    std::vector<TreeTopology> components;
    // BFS order guarantees a component root is visited before its members.
    for (int node = 0; node < t.size(); ++node) {
        if (failed_positions.count(node)) continue;
        const int p = t.parent(node);
        const bool is_component_root = p < 0 || failed_positions.count(p) || !edge_alive(node);
        if (!is_component_root) continue;

        TreeTopology comp;
        comp.fanout_ = t.fanout_;
        std::vector<int> queue{node};
        std::vector<int> comp_index(t.size(), -1);
        for (std::size_t i = 0; i < queue.size(); ++i) {
            const int n = queue[i];
            const int idx = comp.size();
            comp_index[n] = idx;
            comp.parent_.push_back(n == node ? -1 : comp_index[t.parent(n)]);
            comp.children_.emplace_back();
            comp.orig_pos_.push_back(t.original_position(n));
            comp.agent_.push_back(t.agent_at(n));
            if (n != node) comp.children_[comp.parent_[idx]].push_back(idx);
            for (int ch : t.children(n))
                if (!failed_positions.count(ch) && edge_alive(ch)) queue.push_back(ch);
        }
        comp.finalize_depths();
        components.push_back(std::move(comp));
    }
    return components;
}

}  // namespace holarchy
