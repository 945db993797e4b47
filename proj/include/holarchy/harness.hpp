#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "holarchy/scheduler.hpp"

namespace holarchy {

struct FailureSpec {
    std::vector<int> nodes;
    int at_iteration = 1;
};

struct ExperimentConfig {
    std::string dataset = "synthetic";  // "synthetic" or a dataset directory
    std::optional<Scheme> scheme;       // unset with paper_grid sweeps all schemes
    std::optional<Scale> scale;         // unset: full (single run) / both (paper grid)
    std::optional<int> branch_index;    // unset with partial scale sweeps every branch
    std::vector<int> children{2};
    std::vector<double> lambdas{0.0};
    int agents = 127;  // synthetic only; datasets define their own size
    int t_max = 40;
    int conv_window = 3;
    int tau = 5;
    int init_passes = 1;
    int repetitions = 10;
    std::uint64_t base_seed = 1;
    int plans_per_agent = 16;  // synthetic only
    int dimension = 100;       // synthetic only
    std::optional<FailureSpec> failure;
    std::filesystem::path out_dir = "results";
    bool paper_grid = false;
    int threads = 0;  // 0: HOLARCH_THREADS env var, else 4
};

// One grid point of a sweep.
struct RunSpec {
    Scheme scheme = Scheme::Baseline;
    int children = 2;
    double lambda = 0.0;
    std::optional<Scale> scale;  // unset for baseline (scale-free)
    std::optional<int> branch;
    int rep = 0;
    bool with_failure = false;

    std::string run_id() const;
};

// Expands the configured grid into concrete runs, paper_grid sweeping
// schemes x children x lambdas x scale variants (full plus one partial
// variant per branch under the root). Baseline is scale-free and appears
// once per (children, lambda, rep).
std::vector<RunSpec> expand_grid(const ExperimentConfig& cfg);

struct SweepResult {
    int runs = 0;
    int failed_runs = 0;
    std::filesystem::path curves_csv;
    std::filesystem::path summary_csv;
    std::filesystem::path manifest_json;
};

// Runs the whole sweep and writes curves.csv, summary.csv and manifest.json
// under cfg.out_dir. Output bytes are deterministic for a fixed config and
// seed, independent of the worker-thread count.
SweepResult run_experiments(const ExperimentConfig& cfg);

struct CompareRow {
    long long budget = 0;
    int runs_a = 0;
    int runs_b = 0;
    bool unreachable_a = false;  // no run of side A has an iteration within budget
    bool unreachable_b = false;
    double cost_a = 0.0;  // mean best cost within budget over reachable runs
    double cost_b = 0.0;
};

// Best cost per message budget for two curves files, at iteration
// granularity (step function, no interpolation between iterations).
std::vector<CompareRow> compare(const std::filesystem::path& curves_a,
                                const std::filesystem::path& curves_b,
                                const std::vector<long long>& budgets, bool use_sync = false);

void write_compare_csv(const std::filesystem::path& out, const std::vector<CompareRow>& rows);

}  // namespace holarchy
