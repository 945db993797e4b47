#include "holarchy/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace holarchy {

namespace {

long long powi(int base, int exp) {
    long long r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

// c^0 + ... + c^top
long long geom_sum(int c, int top) {
    long long acc = 0;
    for (int i = 0; i <= top; ++i) acc += powi(c, i);
    return acc;
}

void check_tree_params(int c, int h, int tau) {
    if (c < 2) throw std::invalid_argument("comm cost: fanout must be >= 2");
    if (h < 1) throw std::invalid_argument("comm cost: height must be >= 1");
    if (tau < 1) throw std::invalid_argument("comm cost: tau must be >= 1");
}

}  // namespace

double improvement_index(double cost_baseline, double cost_holarchic) {
    if (cost_baseline < 0.0 || cost_holarchic < 0.0)
        throw std::invalid_argument("improvement_index: costs must be non-negative");
    const double denom = cost_baseline + cost_holarchic;
    if (denom == 0.0) return 0.0;
    return (cost_baseline - cost_holarchic) / denom;
}

long long baseline_comm_cost(int c, int h) {
    check_tree_params(c, h, 1);
    return 2 * (geom_sum(c, h) - 1);
}

long long total_comm_cost(int c, int h, int tau) {
    check_tree_params(c, h, tau);
    long long acc = 0;
    for (int j = 0; j <= h - 1; ++j) acc += powi(c, h - 1 - j) * (geom_sum(c, j + 1) - 1);
    return 2LL * tau * acc;
}

long long sync_comm_cost(int c, int h, int tau) {
    check_tree_params(c, h, tau);
    long long acc = 0;
    for (int j = 0; j <= h - 1; ++j) acc += geom_sum(c, j + 1) - 1;
    return 2LL * tau * acc;
}

std::optional<double> relative_performance(double c_h_first, double c_h_conv, double c_b_first,
                                           double c_b_conv) {
    const double denom = c_b_first - c_b_conv;
    if (denom == 0.0) return std::nullopt;
    return (c_h_first - c_h_conv) / denom;
}

StandardizeResult standardize(const std::vector<double>& samples) {
    if (samples.size() < 2) throw std::invalid_argument("standardize: need at least two samples");
    const double n = static_cast<double>(samples.size());
    double mean = 0.0;
    for (double x : samples) mean += x;
    mean /= n;
    double var = 0.0;
    for (double x : samples) var += (x - mean) * (x - mean);
    var /= n;
    StandardizeResult out;
    out.values.resize(samples.size());
    if (var == 0.0) {
        out.degenerate = true;
        return out;  // zero-filled
    }
    const double sigma = std::sqrt(var);
    for (std::size_t i = 0; i < samples.size(); ++i) out.values[i] = (samples[i] - mean) / sigma;
    return out;
}

}  // namespace holarchy
