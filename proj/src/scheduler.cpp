#include "holarchy/scheduler.hpp"

#include <cmath>
#include <stdexcept>

namespace holarchy {

namespace {
constexpr double kTol = 1e-12;

struct MainLoop {
    RunTrace* trace;
    Network* net;
    int t = 1;  // next main iteration index
    int unchanged = 0;

    void append(double cost) {
        trace->costs.push_back(cost);
        trace->m_total_cum.push_back(net->ledger().total_through(t));
        trace->m_sync_cum.push_back(net->ledger().sync_through(t));
        const std::size_t n = trace->costs.size();
        if (n > 1 && std::abs(trace->costs[n - 1] - trace->costs[n - 2]) < kTol)
            ++unchanged;
        else
            unchanged = 0;
        ++t;
    }
    bool converged(int conv_window) const { return unchanged >= conv_window; }
};

std::vector<int> resolved_selections(const Selections& sel) {
    std::vector<int> out(sel.size(), -1);
    for (std::size_t i = 0; i < sel.size(); ++i)
        if (sel[i]) out[i] = *sel[i];
    return out;
}

}  // namespace

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::Baseline: return "baseline";
        case Scheme::HolarchicInitialization: return "h-init";
        case Scheme::HolarchicRuntime: return "h-runtime";
        case Scheme::HolarchicTermination: return "h-term";
    }
    return "?";
}

std::optional<Scheme> scheme_from_string(const std::string& s) {
    if (s == "baseline") return Scheme::Baseline;
    if (s == "h-init") return Scheme::HolarchicInitialization;
    if (s == "h-runtime") return Scheme::HolarchicRuntime;
    if (s == "h-term") return Scheme::HolarchicTermination;
    return std::nullopt;
}

void SchemeConfig::validate(const TreeTopology& tree) const {
    if (tau < 1) throw std::invalid_argument("scheme config: tau must be >= 1");
    if (t_max < 1) throw std::invalid_argument("scheme config: t_max must be >= 1");
    if (conv_window < 1) throw std::invalid_argument("scheme config: conv_window must be >= 1");
    if (init_passes < 1) throw std::invalid_argument("scheme config: init_passes must be >= 1");
    if (scale == Scale::Partial) {
        if (!branch_index)
            throw std::invalid_argument("scheme config: partial scale requires a branch index");
        const int branches = static_cast<int>(tree.children(tree.root()).size());
        if (*branch_index < 0 || *branch_index >= branches)
            throw std::invalid_argument("scheme config: branch index out of range");
    }
}

PassResult run_holarchic_pass(Engine& engine, const HolonStagePlan& plan, int tau,
                              int main_iteration, Network& net, int holon_id_base) {
    if (tau < 1) throw std::invalid_argument("run_holarchic_pass: tau must be >= 1");
    if (plan.stages.empty()) throw std::invalid_argument("run_holarchic_pass: empty stage plan");
    PassResult pr;
    for (int j = 0; j < plan.num_stages(); ++j) {
        std::vector<double> costs;
        int holon_id = holon_id_base;
        for (const Holon& h : plan.stages[j]) {
            net.set_context(main_iteration, j, holon_id++);
            engine.begin_block(h.root_node);
            IterationResult last{};
            for (int k = 0; k < tau; ++k) last = engine.iterate();
            costs.push_back(last.cost);
        }
        pr.stage_costs.push_back(std::move(costs));
    }
    // the final stage is the whole tree, so the engine's incumbent is the
    // system-wide cost of the pass
    pr.final_cost = engine.incumbent_cost();
    return pr;
}

namespace {

// Shared scheme loop. t_cap bounds the number of main iterations (the
// mitigation scenario stops schemes at the failure iteration).
void scheme_loop(const SchemeConfig& cfg, const TreeTopology& tree,
                 const std::vector<PlanSet>& plans, CostFunction cf, Network& net,
                 Engine& eng, MainLoop& loop, SchemeTrace& out, int t_cap) {
    auto record = [&] {
        if (cfg.record_selections) out.selection_history.push_back(resolved_selections(out.selections));
    };

    auto baseline_phase = [&] {
        eng.begin_block(tree.root());
        while (loop.t <= t_cap) {
            net.set_context(loop.t, 0, 0);
            const auto res = eng.iterate();
            loop.append(res.cost);
            record();
            if (loop.converged(cfg.conv_window)) break;
        }
    };

    auto pass_iteration = [&](const HolonStagePlan& plan) -> double {
        const auto incumbent = system_cost(tree, plans, out.selections);
        const Selections snapshot = out.selections;
        PassResult pr = run_holarchic_pass(eng, plan, cfg.tau, loop.t, net);
        double accepted = pr.final_cost;
        if (incumbent && pr.final_cost > *incumbent) {
            out.selections = snapshot;
            accepted = *incumbent;
        }
        out.passes.push_back(std::move(pr));
        loop.append(accepted);
        record();
        return accepted;
    };

    switch (cfg.scheme) {
        case Scheme::Baseline:
            baseline_phase();
            break;
        case Scheme::HolarchicInitialization: {
            const auto plan = decompose_holarchy(tree, cfg.scale, cfg.branch_index);
            for (int p = 0; p < cfg.init_passes && loop.t <= t_cap; ++p) pass_iteration(plan);
            baseline_phase();
            break;
        }
        case Scheme::HolarchicRuntime: {
            const auto plan = decompose_holarchy(tree, cfg.scale, cfg.branch_index);
            while (loop.t <= t_cap) {
                pass_iteration(plan);
                if (loop.converged(cfg.conv_window)) break;
            }
            break;
        }
        case Scheme::HolarchicTermination: {
            baseline_phase();
            const auto plan = decompose_holarchy(tree, cfg.scale, cfg.branch_index);
            while (loop.t <= t_cap) {
                const double before = out.trace.costs.back();
                const double after = pass_iteration(plan);
                if (!(before - after > kTol)) break;  // the pass stopped improving
            }
            break;
        }
    }
}

}  // namespace

SchemeTrace run_scheme(const SchemeConfig& cfg, const TreeTopology& tree,
                       const std::vector<PlanSet>& plans, CostFunction cf, Network& net) {
    cfg.validate(tree);
    SchemeTrace out;
    out.selections.assign(plans.size(), std::nullopt);
    Engine eng(tree, plans, cf, net, &out.selections);
    MainLoop loop{&out.trace, &net};
    scheme_loop(cfg, tree, plans, cf, net, eng, loop, out, cfg.t_max);
    return out;
}

MitigationResult run_mitigation_scenario(const TreeTopology& tree,
                                         const std::vector<PlanSet>& plans, CostFunction cf,
                                         const std::set<int>& failed_positions, int fail_at_iter,
                                         const SchemeConfig& cfg, Network& net) {
    if (fail_at_iter < 1)
        throw std::invalid_argument("run_mitigation_scenario: fail_at_iter must be >= 1");
    cfg.validate(tree);

    MitigationResult out;
    if (failed_positions.empty()) {
        auto st = run_scheme(cfg, tree, plans, cf, net);
        out.union_trace = std::move(st.trace);
        out.selections = std::move(st.selections);
        out.surviving_components = 1;
        return out;
    }

    SchemeTrace pre;
    pre.selections.assign(plans.size(), std::nullopt);
    MainLoop loop{&out.union_trace, &net};
    {
        Engine eng(tree, plans, cf, net, &pre.selections);
        MainLoop pre_loop{&out.union_trace, &net};
        scheme_loop(cfg, tree, plans, cf, net, eng, pre_loop, pre,
                    std::min(cfg.t_max, fail_at_iter));
        loop.t = pre_loop.t;
    }
    out.selections = std::move(pre.selections);

    net.set_context(loop.t, 0, 0);
    FailureEvent ev;
    ev.at_iteration = loop.t;
    ev.kind = FailureEvent::Kind::NodeCrash;
    ev.node_targets.assign(failed_positions.begin(), failed_positions.end());
    net.inject(ev);

    const auto components = partition_on_failure(tree, failed_positions);
    out.surviving_components = static_cast<int>(components.size());
    if (components.empty()) return out;

    std::vector<Engine> engines;
    std::vector<HolonStagePlan> stage_plans;
    engines.reserve(components.size());
    for (const auto& comp : components) {
        engines.emplace_back(comp, plans, cf, net, &out.selections);
        stage_plans.push_back(decompose_holarchy(comp, Scale::Full));
    }
    out.component_traces.resize(components.size());
    std::vector<int> comp_unchanged(components.size(), 0);

    while (loop.t <= cfg.t_max) {
        for (std::size_t ci = 0; ci < components.size(); ++ci) {
            const auto& comp = components[ci];
            const auto incumbent = system_cost(comp, plans, out.selections);
            std::vector<std::optional<int>> snapshot;
            snapshot.reserve(comp.size());
            for (int a : comp.agents()) snapshot.push_back(out.selections[a]);

            PassResult pr = run_holarchic_pass(engines[ci], stage_plans[ci], cfg.tau, loop.t, net,
                                               static_cast<int>(ci) * 1000000);
            double accepted = pr.final_cost;
            if (incumbent && pr.final_cost > *incumbent) {
                const auto agents = comp.agents();
                for (std::size_t i = 0; i < agents.size(); ++i)
                    out.selections[agents[i]] = snapshot[i];
                accepted = *incumbent;
            }
            auto& ct = out.component_traces[ci];
            if (!ct.costs.empty() && std::abs(ct.costs.back() - accepted) < kTol)
                ++comp_unchanged[ci];
            else
                comp_unchanged[ci] = 0;
            ct.costs.push_back(accepted);
        }

        // cost over the union of the surviving agents' selections
        std::vector<double> union_response(plans.front().dimension(), 0.0);
        for (const auto& comp : components) {
            const auto part = sum_selected(comp, plans, out.selections);
            for (std::size_t i = 0; i < union_response.size(); ++i) union_response[i] += part[i];
        }
        loop.append(variance(union_response));

        bool all_settled = true;
        for (std::size_t ci = 0; ci < components.size(); ++ci)
            if (comp_unchanged[ci] < cfg.conv_window) all_settled = false;
        if (all_settled) break;
    }
    return out;
}

}  // namespace holarchy
