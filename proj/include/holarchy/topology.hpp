#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace holarchy {

// A rooted tree of agent positions. Built trees are balanced c-ary trees
// filled level-by-level, left-to-right; trees produced by failure
// partitioning keep the surviving shape. Node indices are BFS order from the
// root; original_position() maps back to the position ids of the tree a
// component was carved from.
class TreeTopology {
public:
    // Balanced tree over num_agents positions with up to fanout children per
    // node. Agents are assigned to positions by a seeded Fisher-Yates shuffle.
    static TreeTopology balanced(int num_agents, int fanout, std::uint64_t placement_seed);

    int size() const { return static_cast<int>(parent_.size()); }
    int fanout() const { return fanout_; }
    int height() const { return height_; }
    int root() const { return 0; }
    int parent(int node) const { return parent_[node]; }
    const std::vector<int>& children(int node) const { return children_[node]; }
    int depth(int node) const { return depth_[node]; }
    // Levels count from the leaves: leaves of a full path sit at 0, the root
    // at height().
    int level(int node) const { return height_ - depth_[node]; }
    bool is_leaf(int node) const { return children_[node].empty(); }
    int num_edges() const { return size() - 1; }

    int agent_at(int node) const { return agent_[node]; }
    int original_position(int node) const { return orig_pos_[node]; }

    bool adjacent(int a, int b) const;
    // Nodes of the subtree under `node` (inclusive), parents before children.
    std::vector<int> subtree_bfs(int node) const;
    // Agent ids of every node in the tree.
    std::vector<int> agents() const { return agent_; }

    friend std::vector<TreeTopology> partition_on_failure(
        const TreeTopology& t, const std::set<int>& failed_positions,
        const std::vector<std::pair<int, int>>& cut_edges);

private:
    TreeTopology() = default;
    void finalize_depths();

    int fanout_ = 2;
    int height_ = 0;
    std::vector<int> parent_;                 // -1 for the root
    std::vector<std::vector<int>> children_;  // sorted by position
    std::vector<int> depth_;
    std::vector<int> agent_;
    std::vector<int> orig_pos_;
};

TreeTopology build_tree(int num_agents, int fanout, std::uint64_t seed);

enum class Scale { Full, Partial };

// A contiguous subtree acting as a self-contained learning unit.
struct Holon {
    int root_node = 0;
    std::vector<int> members;  // BFS from root_node, parents before children
    int stage = 0;
};

// Stages of disjoint holons, from the parents of the leaves up to the whole
// tree. The final stage always holds exactly one holon covering the tree.
struct HolonStagePlan {
    std::vector<std::vector<Holon>> stages;

    int num_stages() const { return static_cast<int>(stages.size()); }
};

// Full scale decomposes the whole tree. Partial applies the same construction
// to the subtree under the root's branch_index-th child and closes with a
// whole-tree stage so system-wide aggregation still occurs.
HolonStagePlan decompose_holarchy(const TreeTopology& t, Scale scale,
                                  std::optional<int> branch_index = std::nullopt);

// Removes failed positions and cut edges, returning the surviving connected
// components as trees rooted at each component's highest surviving node.
std::vector<TreeTopology> partition_on_failure(
    const TreeTopology& t, const std::set<int>& failed_positions,
    const std::vector<std::pair<int, int>>& cut_edges = {});

}  // namespace holarchy
