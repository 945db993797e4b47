#pragma once

#include <optional>
#include <span>
#include <vector>

#include "holarchy/netsim.hpp"
#include "holarchy/plan.hpp"
#include "holarchy/topology.hpp"

namespace holarchy {

using Selections = std::vector<std::optional<int>>;  // agent id -> plan index

struct IterationResult {
    double cost = 0.0;  // accepted cost after the iteration
    bool accepted = false;
};

// Cost and message trace of one run, one entry per main learning iteration.
struct RunTrace {
    std::vector<double> costs;
    std::vector<long long> m_total_cum;
    std::vector<long long> m_sync_cum;

    int iterations() const { return static_cast<int>(costs.size()); }
    double first_cost() const { return costs.front(); }
    double final_cost() const { return costs.back(); }
    // 1-based index of the first iteration whose cost already equals the
    // final cost (absolute difference < 1e-12) and never changes again.
    int convergence_iteration() const;
};

// One learning engine bound to a tree. A block is the complete subtree under
// a holon root; iterations inside a block select plans by the rule: each
// agent scores every own plan p against the candidate global response
//   (G_prev - own previous subtree aggregate) + sum of children's new
//   aggregates + p
// where G_prev is the block's previous accepted aggregate, and the block
// root accepts the candidate only if it does not increase the block cost.
// Selection state is shared by agent id so several engines (for example one
// per surviving component) can hand selections over.
class Engine {
public:
    Engine(const TreeTopology& tree, const std::vector<PlanSet>& plans_by_agent,
           CostFunction cf, Network& net, Selections* selections);

    // Recomputes accepted aggregates under holon_root from current
    // selections. Agents without a selection contribute the zero vector and
    // leave the incumbent cost unset (first candidate is always accepted).
    void begin_block(int holon_root);

    // One bottom-up + top-down iteration over the current block. Counts one
    // message per child->parent edge and one per parent->child edge.
    IterationResult iterate();

    double incumbent_cost() const { return incumbent_; }
    std::span<const double> block_response() const { return aggregate_[block_root_]; }
    const TreeTopology& tree() const { return *tree_; }
    int dimension() const { return dim_; }

private:
    const TreeTopology* tree_;
    const std::vector<PlanSet>* plans_;
    CostFunction cf_;
    Network* net_;
    Selections* selections_;
    int dim_;

    int block_root_ = 0;
    std::vector<int> block_members_;  // BFS, parents before children
    double incumbent_ = 0.0;

    std::vector<std::vector<double>> aggregate_;       // accepted, per node
    std::vector<std::vector<double>> cand_aggregate_;  // candidate, per node
    std::vector<int> cand_selected_;
    std::vector<double> scratch_;

    const PlanSet& plan_set(int node) const { return (*plans_)[tree_->agent_at(node)]; }
};

// System-wide global response of a tree's agents given current selections;
// agents without a selection contribute zero.
std::vector<double> sum_selected(const TreeTopology& tree, const std::vector<PlanSet>& plans,
                                 const Selections& selections);

// Variance of the sum of selected plans, or nullopt while any agent of the
// tree is still unselected.
std::optional<double> system_cost(const TreeTopology& tree, const std::vector<PlanSet>& plans,
                                  const Selections& selections);

// Baseline scheme: repeated whole-tree iterations until t_max or until the
// cost is unchanged (absolute difference < 1e-12) for conv_window
// consecutive iterations.
RunTrace run_baseline(const TreeTopology& tree, const std::vector<PlanSet>& plans,
                      CostFunction cf, int t_max, int conv_window, Network& net,
                      Selections* selections = nullptr);

}  // namespace holarchy
