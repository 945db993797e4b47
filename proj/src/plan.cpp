#include "holarchy/plan.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace holarchy {

double variance(std::span<const double> v) {
    if (v.empty()) throw std::invalid_argument("variance: empty vector");
    const double n = static_cast<double>(v.size());
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= n;
    double acc = 0.0;
    for (double x : v) {
        const double d = x - mean;
        acc += d * d;
    }
    return acc / n;
}

PlanSet normalize_local_costs(PlanSet ps) {
    if (ps.plans.empty()) throw std::invalid_argument("normalize_local_costs: empty plan set");
    auto [lo_it, hi_it] = std::minmax_element(
        ps.plans.begin(), ps.plans.end(),
        [](const Plan& a, const Plan& b) { return a.local_cost < b.local_cost; });
    const double lo = lo_it->local_cost;
    const double hi = hi_it->local_cost;
    if (!std::isfinite(lo) || !std::isfinite(hi))
        throw std::invalid_argument("normalize_local_costs: non-finite local cost");
    const double range = hi - lo;
    for (Plan& p : ps.plans) p.local_cost = range > 0.0 ? (p.local_cost - lo) / range : 0.0;
    return ps;
}

double weighted_score(std::span<const double> candidate_global, const Plan& plan,
                      const CostFunction& cf) {
    return (1.0 - cf.lambda) * variance(candidate_global) + cf.lambda * plan.local_cost;
}

void validate_plan_sets(const std::vector<PlanSet>& sets) {
    if (sets.empty()) throw std::invalid_argument("plan sets: empty system");
    const int d = sets.front().dimension();
    if (d < 1) throw std::invalid_argument("plan sets: dimension must be >= 1");
    for (const PlanSet& ps : sets) {
        if (ps.plans.empty()) throw std::invalid_argument("plan sets: agent with no plans");
        for (const Plan& p : ps.plans) {
            if (static_cast<int>(p.values.size()) != d)
                throw std::invalid_argument("plan sets: inconsistent plan dimension");
            for (double x : p.values)
                if (!std::isfinite(x)) throw std::invalid_argument("plan sets: non-finite value");
            if (!std::isfinite(p.local_cost) || p.local_cost < 0.0)
                throw std::invalid_argument("plan sets: invalid local cost");
        }
    }
}

}  // namespace holarchy
