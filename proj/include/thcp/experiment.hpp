#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "thcp/degree_dist.hpp"
#include "thcp/process.hpp"
#include "thcp/structure.hpp"

namespace thcp {

inline constexpr const char* kVersionTag = "thcp 0.1.0";

// Raised on malformed or inconsistent experiment configs; the CLI maps it
// to exit code 2.
struct SpecError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ExperimentKind {
    survival_sweep,
    core_size,
    structure_event,
    cycle_cover,
    meanfield_table,
    matching_law,
};

struct InitCondition {
    enum class Type { all, density, explicit_set };
    Type type = Type::all;
    double rho = 0.0;
    std::vector<Vertex> vertices;

    bool operator==(const InitCondition&) const = default;
};

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::survival_sweep;
    std::optional<DegreeDistribution> dist;
    std::vector<std::uint32_t> degrees;  // explicit sequence (matching_law)
    std::size_t n = 0;
    int theta = 2;
    std::vector<double> p_grid;
    InitCondition init;
    int replicas = 1;
    std::int64_t t_max = 0;
    std::uint64_t master_seed = 0;
    CountingMode counting_mode = CountingMode::multiplicity;

    int r = 0;                       // core_size
    bool relative_to_core = false;   // survival_sweep: also report |X|/(rho n)
    StructureEvent event = StructureEvent::e2;
    std::int64_t m1 = 0, m2 = 0;
    int l = 0;
    std::int64_t trials = 0;
    std::int64_t exact_cap = 1000000;
    int max_len = 0;                 // cycle_cover

    void validate() const;  // throws SpecError
    nlohmann::json to_json() const;
    static ExperimentSpec from_json(const nlohmann::json& j);
    bool operator==(const ExperimentSpec& other) const;
};

struct ExperimentResult {
    ExperimentSpec spec;
    nlohmann::json records = nlohmann::json::array();
    nlohmann::json aggregates = nlohmann::json::object();
    double wall_clock_seconds = 0.0;

    nlohmann::json to_json() const;

    // serialization with the wall-clock field zeroed; the determinism
    // contract compares these
    std::string deterministic_dump() const;
};

// Dispatches on spec.kind; replicas run on a pool of `threads` workers with
// per-replica seeds derive_seed(master_seed, job_index), merged in index
// order so scheduling cannot influence the result.
ExperimentResult run_experiment(const ExperimentSpec& spec, int threads = 0);

// Write-then-rename; the final path never holds a partial file.
void write_atomic(const std::string& path, const std::string& content);

struct TransitionBracket {
    std::optional<double> p_lo, p_hi;
    bool open_low = false;   // already surviving at the smallest p
    bool open_high = false;  // still dying at the largest p
};

// Tightest adjacent grid pair where the (monotonized) survival fraction
// crosses 1/2. Fractions are first pushed through pool-adjacent-violators
// so the bracket is well defined under noise.
TransitionBracket estimate_transition(const std::vector<double>& p_grid,
                                      const std::vector<double>& survival_fractions);
TransitionBracket estimate_transition(const ExperimentResult& sweep_result);

// Survival-sweep CSV (one row per record) and trajectory CSV (t, count).
std::string sweep_csv(const ExperimentResult& result);
std::string trajectory_csv(const Trajectory& traj);

}  // namespace thcp
