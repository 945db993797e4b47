#pragma once

#include <vector>

#include "holarchy/plan.hpp"

namespace holarchy {

struct OracleResult {
    long long combinations = 0;
    double optimum_cost = 0.0;
    std::vector<int> optimum_selection;  // plan index per agent
};

// Cost of one full combination of selections: the global term plus
// lambda-weighted mean local cost, so that lambda=0 reduces to the variance
// of the summed plans.
double combination_cost(const std::vector<PlanSet>& plans, const std::vector<int>& selection,
                        const CostFunction& cf);

// Exhaustive enumeration of all plan combinations. Refuses instances with
// more than 2^24 combinations.
OracleResult enumerate_costs(const std::vector<PlanSet>& plans, const CostFunction& cf);

// Every combination cost, ascending. Same size guard as enumerate_costs.
std::vector<double> enumerate_all_costs(const std::vector<PlanSet>& plans, const CostFunction& cf);

// Percentile of combinations strictly cheaper than cost; ties count as
// not-below, so the optimum ranks at 0.
double rank_of(double cost, const std::vector<double>& sorted_costs);

// Streaming rank query: one enumeration pass, no materialized cost list.
// Returns the percentile for each query cost.
std::vector<double> rank_percentiles(const std::vector<PlanSet>& plans, const CostFunction& cf,
                                     const std::vector<double>& query_costs);

}  // namespace holarchy
