#include "holarchy/oracle.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace holarchy {

namespace {

constexpr long long kMaxCombinations = 1LL << 24;

long long guarded_combination_count(const std::vector<PlanSet>& plans) {
    validate_plan_sets(plans);
    long long total = 1;
    for (const PlanSet& ps : plans) {
        total *= ps.size();
        if (total > kMaxCombinations)
            throw std::invalid_argument("oracle: instance exceeds the enumeration bound of 2^24 (" +
                                        std::to_string(kMaxCombinations) + ") combinations");
    }
    return total;
}

// Depth-first enumeration with per-level partial sums: level a holds the sum
// of the selected plans of agents 0..a-1, so stepping one agent costs one
// vector add instead of a full recompute.
template <typename Fn>
void enumerate(const std::vector<PlanSet>& plans, const CostFunction& cf, Fn&& fn) {
    const int n = static_cast<int>(plans.size());
    const int d = plans.front().dimension();
    std::vector<std::vector<double>> partial(n + 1, std::vector<double>(d, 0.0));
    std::vector<double> local_partial(n + 1, 0.0);
    std::vector<int> selection(n, 0);

    int level = 0;
    while (level >= 0) {
        if (level == n) {
            const double g = variance(partial[n]);
            const double cost = (1.0 - cf.lambda) * g + cf.lambda * local_partial[n] / n;
            fn(cost, selection);
            --level;
            ++selection[level];
            continue;
        }
        const PlanSet& ps = plans[level];
        if (selection[level] >= ps.size()) {
            selection[level] = 0;
            --level;
            if (level >= 0) ++selection[level];
            continue;
        }
        const Plan& p = ps.plans[selection[level]];
        for (int i = 0; i < d; ++i) partial[level + 1][i] = partial[level][i] + p.values[i];
        local_partial[level + 1] = local_partial[level] + p.local_cost;
        ++level;
    }
}

}  // namespace

double combination_cost(const std::vector<PlanSet>& plans, const std::vector<int>& selection,
                        const CostFunction& cf) {
    const int d = plans.front().dimension();
    std::vector<double> sum(d, 0.0);
    double local = 0.0;
    for (std::size_t a = 0; a < plans.size(); ++a) {
        const Plan& p = plans[a].plans.at(selection.at(a));
        for (int i = 0; i < d; ++i) sum[i] += p.values[i];
        local += p.local_cost;
    }
    return (1.0 - cf.lambda) * variance(sum) + cf.lambda * local / static_cast<double>(plans.size());
}

OracleResult enumerate_costs(const std::vector<PlanSet>& plans, const CostFunction& cf) {
    OracleResult res;
    res.combinations = guarded_combination_count(plans);
    res.optimum_cost = std::numeric_limits<double>::infinity();
    enumerate(plans, cf, [&](double cost, const std::vector<int>& sel) {
        if (cost < res.optimum_cost) {
            res.optimum_cost = cost;
            res.optimum_selection = sel;
        }
    });
    return res;
}

std::vector<double> enumerate_all_costs(const std::vector<PlanSet>& plans,
                                        const CostFunction& cf) {
    const long long total = guarded_combination_count(plans);
    std::vector<double> costs;
    costs.reserve(static_cast<std::size_t>(total));
    enumerate(plans, cf, [&](double cost, const std::vector<int>&) { costs.push_back(cost); });
    std::sort(costs.begin(), costs.end());
    return costs;
}

double rank_of(double cost, const std::vector<double>& sorted_costs) {
    if (sorted_costs.empty()) throw std::invalid_argument("rank_of: no enumerated costs");
    const auto below = std::lower_bound(sorted_costs.begin(), sorted_costs.end(), cost) -
                       sorted_costs.begin();
    return 100.0 * static_cast<double>(below) / static_cast<double>(sorted_costs.size());
}

std::vector<double> rank_percentiles(const std::vector<PlanSet>& plans, const CostFunction& cf,
                                     const std::vector<double>& query_costs) {
    const long long total = guarded_combination_count(plans);
    std::vector<long long> below(query_costs.size(), 0);
    enumerate(plans, cf, [&](double cost, const std::vector<int>&) {
        for (std::size_t i = 0; i < query_costs.size(); ++i)
            if (cost < query_costs[i]) ++below[i];
    });
    std::vector<double> out(query_costs.size());
    for (std::size_t i = 0; i < query_costs.size(); ++i)
        out[i] = 100.0 * static_cast<double>(below[i]) / static_cast<double>(total);
    return out;
}

}  // namespace holarchy
