#include "holarchy/engine.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace holarchy {

namespace {
constexpr double kConvergenceTol = 1e-12;
constexpr double kUnset = std::numeric_limits<double>::infinity();
}  // namespace

int RunTrace::convergence_iteration() const {
    const double final = costs.back();
    int t = iterations();
    while (t > 1 && std::abs(costs[t - 2] - final) < kConvergenceTol) --t;
    return t;
}

Engine::Engine(const TreeTopology& tree, const std::vector<PlanSet>& plans_by_agent,
               CostFunction cf, Network& net, Selections* selections)
    : tree_(&tree), plans_(&plans_by_agent), cf_(cf), net_(&net), selections_(selections) {
    validate_plan_sets(plans_by_agent);
    dim_ = plans_by_agent.front().dimension();
    for (int node = 0; node < tree.size(); ++node) {
        const int agent = tree.agent_at(node);
        if (agent < 0 || agent >= static_cast<int>(plans_by_agent.size()))
            throw std::invalid_argument("engine: tree references an agent with no plan set");
        if (plans_by_agent[agent].dimension() != dim_)
            throw std::invalid_argument("engine: plan dimension mismatch");
    }
    if (static_cast<int>(selections_->size()) < static_cast<int>(plans_by_agent.size()))
        selections_->resize(plans_by_agent.size());
    aggregate_.assign(tree.size(), std::vector<double>(dim_, 0.0));
    cand_aggregate_.assign(tree.size(), std::vector<double>(dim_, 0.0));
    cand_selected_.assign(tree.size(), 0);
    scratch_.assign(dim_, 0.0);
}

void Engine::begin_block(int holon_root) {
    block_root_ = holon_root;
    block_members_ = tree_->subtree_bfs(holon_root);
    bool all_selected = true;
    for (auto it = block_members_.rbegin(); it != block_members_.rend(); ++it) {
        const int node = *it;
        auto& agg = aggregate_[node];
        std::fill(agg.begin(), agg.end(), 0.0);
        const auto& sel = (*selections_)[tree_->agent_at(node)];
        if (sel) {
            const auto& plan = plan_set(node).plans[*sel].values;
            for (int i = 0; i < dim_; ++i) agg[i] = plan[i];
        } else {
            all_selected = false;
        }
        for (int ch : tree_->children(node))
            for (int i = 0; i < dim_; ++i) agg[i] += aggregate_[ch][i];
    }
    incumbent_ = all_selected ? variance(aggregate_[holon_root]) : kUnset;
}

IterationResult Engine::iterate() {
    const int r = block_root_;
    const auto& prev_global = aggregate_[r];

    for (auto it = block_members_.rbegin(); it != block_members_.rend(); ++it) {
        const int node = *it;
        // candidate base: everything outside the own subtree as previously
        // accepted, plus the children's fresh aggregates
        for (int i = 0; i < dim_; ++i) scratch_[i] = prev_global[i] - aggregate_[node][i];
        for (int ch : tree_->children(node))
            for (int i = 0; i < dim_; ++i) scratch_[i] += cand_aggregate_[ch][i];

        const PlanSet& ps = plan_set(node);
        int best = 0;
        double best_score = std::numeric_limits<double>::infinity();
        auto& cand = cand_aggregate_[node];
        for (int pi = 0; pi < ps.size(); ++pi) {
            const auto& plan = ps.plans[pi];
            for (int i = 0; i < dim_; ++i) cand[i] = scratch_[i] + plan.values[i];
            const double score = weighted_score(cand, plan, cf_);
            if (score < best_score) {  // ties keep the lowest plan index
                best_score = score;
                best = pi;
            }
        }
        cand_selected_[node] = best;
        const auto& chosen = ps.plans[best].values;
        for (int i = 0; i < dim_; ++i) cand[i] = chosen[i];
        for (int ch : tree_->children(node))
            for (int i = 0; i < dim_; ++i) cand[i] += cand_aggregate_[ch][i];

        if (node != r)
            net_->deliver({node, tree_->parent(node), Phase::BottomUp, net_->context_stage(), dim_});
    }

    const double cand_cost = variance(cand_aggregate_[r]);
    const bool accept = cand_cost <= incumbent_;
    // the decision is broadcast root->leaves whether or not it accepts
    for (int node : block_members_)
        if (node != r)
            net_->deliver({tree_->parent(node), node, Phase::TopDown, net_->context_stage(), dim_});

    if (accept) {
        for (int node : block_members_) {
            (*selections_)[tree_->agent_at(node)] = cand_selected_[node];
            aggregate_[node] = cand_aggregate_[node];
        }
        incumbent_ = cand_cost;
    }
    return {incumbent_, accept};
}

std::vector<double> sum_selected(const TreeTopology& tree, const std::vector<PlanSet>& plans,
                                 const Selections& selections) {
    std::vector<double> acc(plans.front().dimension(), 0.0);
    for (int node = 0; node < tree.size(); ++node) {
        const int agent = tree.agent_at(node);
        const auto& sel = selections[agent];
        if (!sel) continue;
        const auto& v = plans[agent].plans[*sel].values;
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += v[i];
    }
    return acc;
}

std::optional<double> system_cost(const TreeTopology& tree, const std::vector<PlanSet>& plans,
                                  const Selections& selections) {
    for (int node = 0; node < tree.size(); ++node)
        if (!selections[tree.agent_at(node)]) return std::nullopt;
    return variance(sum_selected(tree, plans, selections));
}

RunTrace run_baseline(const TreeTopology& tree, const std::vector<PlanSet>& plans,
                      CostFunction cf, int t_max, int conv_window, Network& net,
                      Selections* selections) {
    if (t_max < 1) throw std::invalid_argument("run_baseline: t_max must be >= 1");
    Selections local;
    Selections* sel = selections ? selections : &local;
    if (sel->size() < plans.size()) sel->resize(plans.size());

    Engine eng(tree, plans, cf, net, sel);
    eng.begin_block(tree.root());
    RunTrace trace;
    int unchanged = 0;
    for (int t = 1; t <= t_max; ++t) {
        net.set_context(t, 0, 0);
        const auto res = eng.iterate();
        trace.costs.push_back(res.cost);
        trace.m_total_cum.push_back(net.ledger().total_through(t));
        trace.m_sync_cum.push_back(net.ledger().sync_through(t));
        if (t > 1 && std::abs(trace.costs[t - 1] - trace.costs[t - 2]) < kConvergenceTol) {
            if (++unchanged >= conv_window) break;
        } else {
            unchanged = 0;
        }
    }
    return trace;
}

}  // namespace holarchy
