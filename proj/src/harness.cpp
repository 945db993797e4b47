#include "holarchy/harness.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <thread>
#include <tuple>

#include "holarchy/data_io.hpp"
#include "holarchy/metrics.hpp"
#include "holarchy/rng.hpp"

namespace holarchy {

namespace fs = std::filesystem;

std::string RunSpec::run_id() const {
    std::string scale_tok;
    if (scale)
        scale_tok = *scale == Scale::Full ? "-full" : fmt::format("-p{}", branch.value_or(0));
    return fmt::format("{}-c{}-l{}{}-r{:03d}{}", to_string(scheme), children, lambda, scale_tok,
                       rep, with_failure ? "-fail" : "");
}

namespace {

int resolve_threads(int configured) {
    if (configured > 0) return configured;
    if (const char* env = std::getenv("HOLARCH_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 4;
}

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
    if (n == 0) return;
    threads = std::min(threads, n);
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

int root_branch_count(int num_agents, int children) {
    return std::min(children, num_agents - 1);
}

struct RunOutput {
    RunSpec spec;
    RunTrace trace;
    bool errored = false;
    std::string error;
};

std::string fmt_double(double v) { return fmt::format("{}", v); }

}  // namespace

std::vector<RunSpec> expand_grid(const ExperimentConfig& cfg) {
    std::vector<Scheme> schemes;
    if (cfg.paper_grid && !cfg.scheme) {
        schemes = {Scheme::Baseline, Scheme::HolarchicInitialization, Scheme::HolarchicRuntime,
                   Scheme::HolarchicTermination};
    } else {
        schemes = {cfg.scheme.value_or(Scheme::Baseline)};
    }
    std::vector<int> children = cfg.children;
    std::vector<double> lambdas = cfg.lambdas;
    if (cfg.paper_grid) {
        children = {2, 3, 4, 5};
        lambdas = {0.0, 0.25, 0.5, 0.75};
    }

    std::vector<RunSpec> specs;
    for (int rep = 0; rep < cfg.repetitions; ++rep) {
        for (const Scheme scheme : schemes) {
            for (const int c : children) {
                for (const double lambda : lambdas) {
                    RunSpec base;
                    base.scheme = scheme;
                    base.children = c;
                    base.lambda = lambda;
                    base.rep = rep;
                    base.with_failure = cfg.failure.has_value();
                    if (scheme == Scheme::Baseline) {
                        specs.push_back(base);  // baseline is scale-free
                        continue;
                    }
                    std::vector<std::pair<Scale, std::optional<int>>> variants;
                    const bool want_full =
                        !cfg.scale || *cfg.scale == Scale::Full;
                    const bool want_partial =
                        (cfg.paper_grid && !cfg.scale) ||
                        (cfg.scale && *cfg.scale == Scale::Partial);
                    if (want_full) variants.push_back({Scale::Full, std::nullopt});
                    if (want_partial) {
                        if (cfg.branch_index) {
                            variants.push_back({Scale::Partial, *cfg.branch_index});
                        } else {
                            const int branches = root_branch_count(cfg.agents, c);
                            for (int b = 0; b < branches; ++b)
                                variants.push_back({Scale::Partial, b});
                        }
                    }
                    for (const auto& [scale, branch] : variants) {
                        RunSpec s = base;
                        s.scale = scale;
                        s.branch = branch;
                        specs.push_back(s);
                    }
                }
            }
        }
    }
    return specs;
}

namespace {

struct SweepContext {
    const ExperimentConfig* cfg;
    std::vector<PlanSet> dataset_plans;  // loaded once for file datasets
    bool synthetic = true;

    std::vector<PlanSet> plans_for_rep(int rep) const {
        if (!synthetic) return dataset_plans;
        return generate_synthetic(cfg->agents, cfg->plans_per_agent, cfg->dimension,
                                  cfg->base_seed + static_cast<std::uint64_t>(rep));
    }

    std::uint64_t placement_seed(int rep) const {
        // synthetic reps resample plans over a fixed placement; dataset reps
        // reshuffle the placement of fixed plans
        const std::uint64_t master =
            synthetic ? cfg->base_seed : cfg->base_seed + static_cast<std::uint64_t>(rep);
        return derive_seed(master, SeedStream::Placement);
    }

    int num_agents() const {
        return synthetic ? cfg->agents : static_cast<int>(dataset_plans.size());
    }
};

RunTrace execute_run(const SweepContext& ctx, const RunSpec& spec) {
    const auto plans = ctx.plans_for_rep(spec.rep);
    const auto tree = build_tree(ctx.num_agents(), spec.children, ctx.placement_seed(spec.rep));
    SchemeConfig sc;
    sc.scheme = spec.scheme;
    sc.tau = ctx.cfg->tau;
    sc.scale = spec.scale.value_or(Scale::Full);
    sc.branch_index = spec.branch;
    sc.init_passes = ctx.cfg->init_passes;
    sc.t_max = ctx.cfg->t_max;
    sc.conv_window = ctx.cfg->conv_window;
    CostFunction cf{CostKind::Variance, spec.lambda};
    Network net(&tree);
    if (spec.with_failure) {
        const auto& f = *ctx.cfg->failure;
        std::set<int> failed(f.nodes.begin(), f.nodes.end());
        auto res = run_mitigation_scenario(tree, plans, cf, failed, f.at_iteration, sc, net);
        return std::move(res.union_trace);
    }
    auto res = run_scheme(sc, tree, plans, cf, net);
    return std::move(res.trace);
}

std::string csv_scale(const RunSpec& s) {
    if (!s.scale) return "-";
    return *s.scale == Scale::Full ? "full" : "partial";
}

std::string csv_branch(const RunSpec& s) { return s.branch ? fmt::format("{}", *s.branch) : "-"; }

}  // namespace

SweepResult run_experiments(const ExperimentConfig& cfg) {
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec || !fs::is_directory(cfg.out_dir))
        throw std::runtime_error(fmt::format("output directory {} is not writable",
                                             cfg.out_dir.string()));

    SweepContext ctx;
    ctx.cfg = &cfg;
    ctx.synthetic = cfg.dataset == "synthetic";
    if (!ctx.synthetic) ctx.dataset_plans = load_plans(cfg.dataset);

    const auto specs = expand_grid(cfg);
    const int threads = resolve_threads(cfg.threads);

    // Matched baselines: every holarchic run is compared against the
    // baseline with the same children/lambda/rep (and no failure).
    std::map<std::tuple<int, std::string, int>, int> baseline_slot;
    std::vector<RunSpec> baseline_specs;
    auto baseline_key = [](const RunSpec& s) {
        return std::tuple<int, std::string, int>{s.children, fmt_double(s.lambda), s.rep};
    };
    for (const auto& s : specs) {
        const auto key = baseline_key(s);
        if (!baseline_slot.count(key)) {
            RunSpec b;
            b.scheme = Scheme::Baseline;
            b.children = s.children;
            b.lambda = s.lambda;
            b.rep = s.rep;
            baseline_slot[key] = static_cast<int>(baseline_specs.size());
            baseline_specs.push_back(b);
        }
    }

    std::vector<RunOutput> baseline_outputs(baseline_specs.size());
    parallel_for(static_cast<int>(baseline_specs.size()), threads, [&](int i) {
        baseline_outputs[i].spec = baseline_specs[i];
        try {
            baseline_outputs[i].trace = execute_run(ctx, baseline_specs[i]);
        } catch (const std::exception& e) {
            baseline_outputs[i].errored = true;
            baseline_outputs[i].error = e.what();
        }
    });

    std::vector<RunOutput> outputs(specs.size());
    parallel_for(static_cast<int>(specs.size()), threads, [&](int i) {
        outputs[i].spec = specs[i];
        if (specs[i].scheme == Scheme::Baseline && !specs[i].with_failure) {
            outputs[i] = baseline_outputs[baseline_slot.at(baseline_key(specs[i]))];
            return;
        }
        try {
            outputs[i].trace = execute_run(ctx, specs[i]);
        } catch (const std::exception& e) {
            outputs[i].errored = true;
            outputs[i].error = e.what();
        }
    });

    // deterministic row order regardless of execution schedule
    std::sort(outputs.begin(), outputs.end(),
              [](const RunOutput& a, const RunOutput& b) { return a.spec.run_id() < b.spec.run_id(); });

    SweepResult result;
    result.runs = static_cast<int>(outputs.size());
    result.curves_csv = cfg.out_dir / "curves.csv";
    result.summary_csv = cfg.out_dir / "summary.csv";
    result.manifest_json = cfg.out_dir / "manifest.json";

    std::ofstream curves(result.curves_csv, std::ios::binary);
    std::ofstream summary(result.summary_csv, std::ios::binary);
    if (!curves || !summary)
        throw std::runtime_error(fmt::format("cannot write outputs under {}", cfg.out_dir.string()));
    curves << "run_id,scheme,c,lambda,scale,iteration,global_cost,M_total_cum,M_sync_cum\n";
    summary << "run_id,scheme,c,lambda,scale,branch,rep,seed,C_first,C_convergence,iterations,"
               "improvement_index,relative_performance,M_total,M_sync\n";

    nlohmann::json failures = nlohmann::json::array();
    for (const auto& out : outputs) {
        if (out.errored) {
            failures.push_back({{"run_id", out.spec.run_id()}, {"error", out.error}});
            ++result.failed_runs;
            continue;
        }
        const auto& spec = out.spec;
        const std::string id = spec.run_id();
        const std::string scheme = to_string(spec.scheme);
        const std::string scale = csv_scale(spec);
        for (int i = 0; i < out.trace.iterations(); ++i)
            curves << fmt::format("{},{},{},{},{},{},{},{},{}\n", id, scheme, spec.children,
                                  fmt_double(spec.lambda), scale, i + 1,
                                  fmt_double(out.trace.costs[i]), out.trace.m_total_cum[i],
                                  out.trace.m_sync_cum[i]);

        std::string improvement = "";
        std::string rel_perf = "";
        if (spec.scheme != Scheme::Baseline) {
            const auto& b = baseline_outputs[baseline_slot.at(baseline_key(spec))];
            if (!b.errored) {
                improvement =
                    fmt_double(improvement_index(b.trace.final_cost(), out.trace.final_cost()));
                const auto p = relative_performance(out.trace.first_cost(), out.trace.final_cost(),
                                                    b.trace.first_cost(), b.trace.final_cost());
                if (p) rel_perf = fmt_double(*p);
            }
        }
        summary << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", id, scheme,
                               spec.children, fmt_double(spec.lambda), scale, csv_branch(spec),
                               spec.rep, cfg.base_seed + static_cast<std::uint64_t>(spec.rep),
                               fmt_double(out.trace.first_cost()),
                               fmt_double(out.trace.final_cost()),
                               out.trace.convergence_iteration(), improvement, rel_perf,
                               out.trace.m_total_cum.back(), out.trace.m_sync_cum.back());
    }
    curves.close();
    summary.close();

    nlohmann::json manifest;
    manifest["dataset"] = cfg.dataset;
    manifest["agents"] = ctx.num_agents();
    manifest["plans_per_agent"] = ctx.synthetic ? cfg.plans_per_agent : -1;
    manifest["dimension"] = ctx.synthetic ? cfg.dimension : -1;
    manifest["base_seed"] = cfg.base_seed;
    manifest["repetitions"] = cfg.repetitions;
    manifest["t_max"] = cfg.t_max;
    manifest["conv_window"] = cfg.conv_window;
    manifest["tau"] = cfg.tau;
    manifest["init_passes"] = cfg.init_passes;
    manifest["paper_grid"] = cfg.paper_grid;
    manifest["runs"] = result.runs;
    manifest["seed_scheme"] =
        "run seed = base_seed + rep; synthetic plans use stream Plans of the run seed with a "
        "placement fixed by the base seed; dataset placements use stream Placement of the run seed";
    manifest["failures"] = failures;
    if (cfg.failure) {
        manifest["failure"] = {{"nodes", cfg.failure->nodes},
                               {"at_iteration", cfg.failure->at_iteration}};
    }
    std::ofstream mf(result.manifest_json, std::ios::binary);
    mf << manifest.dump(2) << '\n';
    return result;
}

namespace {

struct CurvePoint {
    long long total_cum = 0;
    long long sync_cum = 0;
    double cost = 0.0;
};

std::map<std::string, std::vector<CurvePoint>> parse_curves(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error(fmt::format("{}: cannot open", file.string()));
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error(fmt::format("{}: empty curves file", file.string()));
    std::map<std::string, std::vector<CurvePoint>> runs;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            cols.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (cols.size() != 9)
            throw std::runtime_error(fmt::format("{}: unexpected column count", file.string()));
        CurvePoint p;
        p.cost = std::stod(cols[6]);
        p.total_cum = std::stoll(cols[7]);
        p.sync_cum = std::stoll(cols[8]);
        runs[cols[0]].push_back(p);
    }
    return runs;
}

}  // namespace

std::vector<CompareRow> compare(const fs::path& curves_a, const fs::path& curves_b,
                                const std::vector<long long>& budgets, bool use_sync) {
    const auto runs_a = parse_curves(curves_a);
    const auto runs_b = parse_curves(curves_b);
    auto best_within = [&](const std::vector<CurvePoint>& pts,
                           long long budget) -> std::optional<double> {
        std::optional<double> best;
        for (const auto& p : pts) {
            const long long cum = use_sync ? p.sync_cum : p.total_cum;
            if (cum > budget) break;  // step function at iteration granularity
            best = p.cost;
        }
        return best;
    };
    std::vector<CompareRow> rows;
    for (const long long budget : budgets) {
        CompareRow row;
        row.budget = budget;
        double acc_a = 0.0, acc_b = 0.0;
        for (const auto& [id, pts] : runs_a)
            if (const auto c = best_within(pts, budget)) {
                acc_a += *c;
                ++row.runs_a;
            }
        for (const auto& [id, pts] : runs_b)
            if (const auto c = best_within(pts, budget)) {
                acc_b += *c;
                ++row.runs_b;
            }
        row.unreachable_a = row.runs_a == 0;
        row.unreachable_b = row.runs_b == 0;
        if (row.runs_a > 0) row.cost_a = acc_a / row.runs_a;
        if (row.runs_b > 0) row.cost_b = acc_b / row.runs_b;
        rows.push_back(row);
    }
    return rows;
}

void write_compare_csv(const fs::path& out, const std::vector<CompareRow>& rows) {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw std::runtime_error(fmt::format("{}: cannot write", out.string()));
    f << "budget,cost_a,runs_a,unreachable_a,cost_b,runs_b,unreachable_b\n";
    for (const auto& r : rows)
        f << fmt::format("{},{},{},{},{},{},{}\n", r.budget,
                         r.unreachable_a ? "" : fmt_double(r.cost_a), r.runs_a,
                         r.unreachable_a ? 1 : 0, r.unreachable_b ? "" : fmt_double(r.cost_b),
                         r.runs_b, r.unreachable_b ? 1 : 0);
}

}  // namespace holarchy
