#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include "holarchy/plan.hpp"

namespace holarchy {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Synthetic plan sets: every component drawn i.i.d. from a standard normal
// distribution; the raw local cost of plan i is i (min-max normalized on the
// way out). Deterministic per seed.
std::vector<PlanSet> generate_synthetic(int num_agents, int plans_per_agent = 16,
                                        int dimension = 100, std::uint64_t seed = 0);

// Loads a dataset directory of agent_<id>.plans files, one line per plan:
//   localCost:v1,v2,...,vd
// ASCII decimal, '.' radix, LF line endings, no header. Agent ids must be
// contiguous from 0. Local costs are normalized on load; dimension
// consistency is enforced across agents.
std::vector<PlanSet> load_plans(const std::filesystem::path& dataset_dir);

// Writes plan sets in the canonical format load_plans reads back.
void save_plans(const std::filesystem::path& dataset_dir, const std::vector<PlanSet>& plans);

}  // namespace holarchy
