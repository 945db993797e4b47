#include "holarchy/data_io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <string>

#include "holarchy/rng.hpp"

namespace holarchy {

namespace fs = std::filesystem;

std::vector<PlanSet> generate_synthetic(int num_agents, int plans_per_agent, int dimension,
                                        std::uint64_t seed) {
    if (num_agents < 1 || plans_per_agent < 1 || dimension < 1)
        throw std::invalid_argument("generate_synthetic: all sizes must be >= 1");
    NormalSampler sampler(derive_seed(seed, SeedStream::Plans));
    std::vector<PlanSet> out;
    out.reserve(num_agents);
    for (int a = 0; a < num_agents; ++a) {
        PlanSet ps;
        ps.agent_id = a;
        ps.plans.resize(plans_per_agent);
        for (int i = 0; i < plans_per_agent; ++i) {
            auto& p = ps.plans[i];
            p.values.resize(dimension);
            for (int j = 0; j < dimension; ++j) p.values[j] = sampler.next();
            p.local_cost = static_cast<double>(i);  // plan index is its raw cost
        }
        out.push_back(normalize_local_costs(std::move(ps)));
    }
    return out;
}

namespace {

double parse_double(std::string_view s, const fs::path& file, int line) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw ParseError(fmt::format("{}:{}: malformed number '{}'", file.string(), line, s));
    return v;
}

PlanSet load_agent_file(const fs::path& file, int agent_id) {
    std::ifstream in(file);
    if (!in) throw ParseError(fmt::format("{}: cannot open", file.string()));
    PlanSet ps;
    ps.agent_id = agent_id;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos)
            throw ParseError(fmt::format("{}:{}: missing ':' separator", file.string(), lineno));
        Plan p;
        p.local_cost = parse_double(std::string_view(line).substr(0, colon), file, lineno);
        std::string_view rest = std::string_view(line).substr(colon + 1);
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            const auto tok = rest.substr(0, comma);
            p.values.push_back(parse_double(tok, file, lineno));
            if (comma == std::string_view::npos) break;
            rest = rest.substr(comma + 1);
        }
        if (p.values.empty())
            throw ParseError(fmt::format("{}:{}: plan has no values", file.string(), lineno));
        ps.plans.push_back(std::move(p));
    }
    if (ps.plans.empty())
        throw ParseError(fmt::format("{}: file defines no plans", file.string()));
    return ps;
}

}  // namespace

std::vector<PlanSet> load_plans(const fs::path& dataset_dir) {
    if (!fs::is_directory(dataset_dir))
        throw ParseError(fmt::format("{}: not a dataset directory", dataset_dir.string()));
    std::map<int, fs::path> files;
    for (const auto& entry : fs::directory_iterator(dataset_dir)) {
        const std::string name = entry.path().filename().string();
        if (name.size() < 13 || name.rfind("agent_", 0) != 0 ||
            name.substr(name.size() - 6) != ".plans")
            continue;
        const std::string id_str = name.substr(6, name.size() - 12);
        int id = 0;
        const auto res = std::from_chars(id_str.data(), id_str.data() + id_str.size(), id);
        if (res.ec != std::errc{} || res.ptr != id_str.data() + id_str.size())
            throw SchemaError(fmt::format("{}: bad agent id in filename", name));
        files[id] = entry.path();
    }
    if (files.empty())
        throw ParseError(fmt::format("{}: no agent_<id>.plans files", dataset_dir.string()));

    std::vector<PlanSet> out;
    int expected = 0;
    for (const auto& [id, path] : files) {
        if (id != expected)
            throw SchemaError(
                fmt::format("{}: agent ids must be contiguous from 0, missing agent_{}",
                            dataset_dir.string(), expected));
        ++expected;
        out.push_back(normalize_local_costs(load_agent_file(path, id)));
    }
    const int d = out.front().dimension();
    for (const auto& ps : out)
        for (const auto& p : ps.plans)
            if (static_cast<int>(p.values.size()) != d)
                throw SchemaError(fmt::format(
                    "{}: inconsistent plan dimension for agent {} (expected {}, got {})",
                    dataset_dir.string(), ps.agent_id, d, p.values.size()));
    return out;
}

void save_plans(const fs::path& dataset_dir, const std::vector<PlanSet>& plans) {
    fs::create_directories(dataset_dir);
    for (const auto& ps : plans) {
        const fs::path file = dataset_dir / fmt::format("agent_{}.plans", ps.agent_id);
        std::ofstream outf(file, std::ios::binary);
        if (!outf) throw ParseError(fmt::format("{}: cannot write", file.string()));
        for (const auto& p : ps.plans) {
            outf << fmt::format("{}", p.local_cost) << ':';
            for (std::size_t i = 0; i < p.values.size(); ++i) {
                if (i) outf << ',';
                outf << fmt::format("{}", p.values[i]);
            }
            outf << '\n';
        }
    }
}

}  // namespace holarchy
