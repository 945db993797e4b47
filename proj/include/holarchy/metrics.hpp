#pragma once

#include <optional>
#include <string>
#include <vector>

namespace holarchy {

// Per-run evaluation sample as emitted by the experiment harness.
struct MetricSample {
    std::string run_id;
    std::string scheme;
    double c_first = 0.0;
    double c_convergence = 0.0;
    int iterations_to_convergence = 0;
    long long m_total = 0;
    long long m_sync = 0;
};

// Symmetric relative difference of baseline and holarchic converged costs,
// in [-1, 1]; positive means the holarchic scheme improved on the baseline.
// Both zero is defined as 0.
double improvement_index(double cost_baseline, double cost_holarchic);

// Messages of one baseline learning iteration on a perfect tree with fanout
// c and height h: 2*(c^0+...+c^h - 1).
long long baseline_comm_cost(int c, int h);

// Total messages of one holarchic main iteration at full scale:
// 2*tau * sum_j c^(h-1-j) * (c^0+...+c^(j+1) - 1) for j = 0..h-1.
long long total_comm_cost(int c, int h, int tau);

// Synchronized (parallel-holon) messages of one holarchic main iteration:
// 2*tau * sum_j (c^0+...+c^(j+1) - 1) for j = 0..h-1.
long long sync_comm_cost(int c, int h, int tau);

// Cost drop of the holarchic scheme relative to the baseline's drop between
// the first iteration and convergence. Undefined (nullopt) when the baseline
// made no progress.
std::optional<double> relative_performance(double c_h_first, double c_h_conv, double c_b_first,
                                           double c_b_conv);

struct StandardizeResult {
    std::vector<double> values;
    bool degenerate = false;  // zero spread; values are all zeros
};

// (x - mean) / stddev per sample, population divisor n.
StandardizeResult standardize(const std::vector<double>& samples);

}  // namespace holarchy
