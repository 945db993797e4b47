#pragma once

#include <optional>
#include <string>
#include <vector>

#include "holarchy/engine.hpp"
#include "holarchy/netsim.hpp"
#include "holarchy/plan.hpp"
#include "holarchy/topology.hpp"

namespace holarchy {

enum class Scheme { Baseline, HolarchicInitialization, HolarchicRuntime, HolarchicTermination };

std::string to_string(Scheme s);
std::optional<Scheme> scheme_from_string(const std::string& s);

struct SchemeConfig {
    Scheme scheme = Scheme::Baseline;
    int tau = 5;  // holarchic iterations per holon
    Scale scale = Scale::Full;
    std::optional<int> branch_index;
    int init_passes = 1;  // holarchic passes before a HolarchicInitialization switches over
    int t_max = 40;
    int conv_window = 3;
    bool record_selections = false;

    void validate(const TreeTopology& tree) const;
};

// Cost snapshots of one holarchic pass: the accepted cost of every holon per
// stage, in stage order, plus the whole-tree cost at the end of the pass.
struct PassResult {
    std::vector<std::vector<double>> stage_costs;
    double final_cost = 0.0;
};

struct SchemeTrace {
    RunTrace trace;  // system-wide cost per main iteration
    Selections selections;
    std::vector<PassResult> passes;
    std::vector<std::vector<int>> selection_history;  // per iteration, when recorded
};

// One holarchic pass: stage by stage, every holon runs tau nested iterations
// with the holon root acting as iteration root; selections persist between
// stages. The caller owns pass-level acceptance.
PassResult run_holarchic_pass(Engine& engine, const HolonStagePlan& plan, int tau,
                              int main_iteration, Network& net, int holon_id_base = 0);

// Runs one scheme end to end on a tree. Every main iteration ends at a
// whole-tree aggregation point; a holarchic pass whose whole-tree cost
// exceeds the incumbent is rejected system-wide, so traces are monotone.
SchemeTrace run_scheme(const SchemeConfig& cfg, const TreeTopology& tree,
                       const std::vector<PlanSet>& plans, CostFunction cf, Network& net);

struct MitigationResult {
    RunTrace union_trace;  // pre-failure system cost, then cost over the union of survivors
    std::vector<RunTrace> component_traces;
    Selections selections;
    int surviving_components = 0;
};

// Runs cfg's scheme until fail_at_iter, removes the failed positions, then
// continues independent holarchic-runtime learning in every surviving
// component.
MitigationResult run_mitigation_scenario(const TreeTopology& tree,
                                         const std::vector<PlanSet>& plans, CostFunction cf,
                                         const std::set<int>& failed_positions, int fail_at_iter,
                                         const SchemeConfig& cfg, Network& net);

}  // namespace holarchy
