#pragma once

#include <span>
#include <vector>

namespace holarchy {

enum class CostKind { Variance };

// Trade-off between global and local cost. lambda in [0,1): 0 minimizes the
// global cost exclusively, larger values bias agents toward low local cost.
struct CostFunction {
    CostKind kind = CostKind::Variance;
    double lambda = 0.0;
};

// One alternative resource schedule of an agent. local_cost is the agent's
// discomfort for executing this plan, in [0,1] after normalization.
struct Plan {
    std::vector<double> values;
    double local_cost = 0.0;
};

struct PlanSet {
    int agent_id = 0;
    std::vector<Plan> plans;

    int size() const { return static_cast<int>(plans.size()); }
    int dimension() const { return plans.empty() ? 0 : static_cast<int>(plans[0].values.size()); }
};

// Population variance of the components of v. Throws std::invalid_argument
// on an empty vector.
double variance(std::span<const double> v);

// Min-max normalization of local costs within one plan set. Degenerate range
// (all raw costs equal) maps every cost to 0. Plan order is preserved.
PlanSet normalize_local_costs(PlanSet ps);

// Selection score of one candidate: (1-lambda)*variance(candidate_global)
// + lambda*plan.local_cost. With lambda=0 this is exactly the global term.
double weighted_score(std::span<const double> candidate_global, const Plan& plan,
                      const CostFunction& cf);

// Shared-dimension and finiteness checks across a whole system of plan sets.
// Throws std::invalid_argument on violation. Plan counts may differ per agent.
void validate_plan_sets(const std::vector<PlanSet>& sets);

}  // namespace holarchy
