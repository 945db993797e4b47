#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdio>
#include <string>
#include <vector>

#include "holarchy/harness.hpp"

using namespace holarchy;

int main(int argc, char** argv) {
    CLI::App app{"holarch - decentralized plan-selection experiments over tree overlays"};

    ExperimentConfig cfg;
    std::string scheme_str;
    std::string scale_str;
    std::string branch_str;
    std::vector<std::string> compare_files;
    std::vector<long long> budgets{30000, 50000};
    std::string budget_metric = "total";
    std::vector<int> fail_nodes;
    int fail_at = 0;
    std::string out_dir = "results";

    app.add_option("--dataset", cfg.dataset, "Dataset directory or 'synthetic'")
        ->capture_default_str();
    app.add_option("--scheme", scheme_str, "baseline|h-init|h-runtime|h-term");
    app.add_option("--scale", scale_str, "full|partial");
    app.add_option("--branch", branch_str, "Branch index under the root, or 'all'");
    app.add_option("--children", cfg.children, "Tree fanout c (repeatable)")
        ->capture_default_str();
    app.add_option("--lambda", cfg.lambdas, "Agent preference weight in [0,1) (repeatable)")
        ->capture_default_str();
    app.add_option("--agents", cfg.agents, "Number of agents (synthetic datasets)")
        ->capture_default_str();
    app.add_option("--iterations", cfg.t_max, "Main iteration budget")->capture_default_str();
    app.add_option("--tau", cfg.tau, "Holarchic iterations per holon")->capture_default_str();
    app.add_option("--init-passes", cfg.init_passes, "Holarchic passes before h-init switches")
        ->capture_default_str();
    app.add_option("--reps", cfg.repetitions, "Repetitions per grid point")->capture_default_str();
    app.add_option("--seed", cfg.base_seed, "Master seed")->capture_default_str();
    app.add_option("--plans", cfg.plans_per_agent, "Plans per agent (synthetic)")
        ->capture_default_str();
    app.add_option("--dim", cfg.dimension, "Plan dimension (synthetic)")->capture_default_str();
    app.add_option("--fail-node", fail_nodes, "Tree positions that crash (repeatable)");
    app.add_option("--fail-at", fail_at, "Main iteration at which the failure strikes");
    app.add_option("--out", out_dir, "Output directory")->capture_default_str();
    app.add_flag("--paper-grid", cfg.paper_grid,
                 "Sweep schemes x c in 2..5 x lambda in {0,0.25,0.5,0.75} x full+partial scales");
    app.add_option("--compare", compare_files, "Two curves.csv files to compare by message budget")
        ->expected(2);
    app.add_option("--budgets", budgets, "Message budgets for --compare")->capture_default_str();
    app.add_option("--budget-metric", budget_metric, "total|sync budget accounting for --compare")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (!compare_files.empty()) {
            const bool use_sync = budget_metric == "sync";
            if (!use_sync && budget_metric != "total")
                throw std::runtime_error("--budget-metric must be 'total' or 'sync'");
            const auto rows = compare(compare_files[0], compare_files[1], budgets, use_sync);
            const std::filesystem::path out = std::filesystem::path(out_dir) / "compare.csv";
            std::filesystem::create_directories(out_dir);
            write_compare_csv(out, rows);
            for (const auto& r : rows)
                fmt::print("budget {:>10}: A {} ({} runs){}  B {} ({} runs){}\n", r.budget,
                           r.unreachable_a ? "unreachable" : fmt::format("{:.6g}", r.cost_a),
                           r.runs_a, r.unreachable_a ? " [!]" : "",
                           r.unreachable_b ? "unreachable" : fmt::format("{:.6g}", r.cost_b),
                           r.runs_b, r.unreachable_b ? " [!]" : "");
            fmt::print("wrote {}\n", out.string());
            return 0;
        }

        if (!scheme_str.empty()) {
            const auto s = scheme_from_string(scheme_str);
            if (!s) throw std::runtime_error("unknown scheme '" + scheme_str + "'");
            cfg.scheme = *s;
        }
        if (!scale_str.empty()) {
            if (scale_str == "full")
                cfg.scale = Scale::Full;
            else if (scale_str == "partial")
                cfg.scale = Scale::Partial;
            else
                throw std::runtime_error("--scale must be 'full' or 'partial'");
        }
        if (!branch_str.empty() && branch_str != "all") cfg.branch_index = std::stoi(branch_str);
        if (!fail_nodes.empty()) {
            if (fail_at < 1) throw std::runtime_error("--fail-node requires --fail-at >= 1");
            cfg.failure = FailureSpec{fail_nodes, fail_at};
        }
        cfg.out_dir = out_dir;
        if (!cfg.paper_grid && !cfg.scheme) cfg.scheme = Scheme::Baseline;

        const auto result = run_experiments(cfg);
        fmt::print("{} runs ({} failed)\n", result.runs, result.failed_runs);
        fmt::print("wrote {}\n", result.curves_csv.string());
        fmt::print("wrote {}\n", result.summary_csv.string());
        fmt::print("wrote {}\n", result.manifest_json.string());
        return result.failed_runs == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        fmt::print(stderr, "error: {}\n", e.what());
        return 1;
    }
}
