#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "thcp/multigraph.hpp"
#include "thcp/rng.hpp"

namespace thcp {

enum class CountingMode { multiplicity, distinct };

// multiplicity: an infected neighbor counts once per parallel edge and an
// infected vertex's own self-loop adds 2 to its count. distinct: each
// infected neighbor counts once, self-loops ignored.
struct ProcessConfig {
    int theta = 2;
    double p = 0.0;
    CountingMode mode = CountingMode::multiplicity;
    std::uint64_t seed = 0;
};

// Infected set as a 0/1 byte vector, padded so SIMD gathers may over-read.
class ProcessState {
  public:
    static constexpr std::size_t kPad = 8;

    explicit ProcessState(std::size_t n) : n_(n), data_(n + kPad, 0) {}

    static ProcessState all_infected(std::size_t n);
    static ProcessState with_density(std::size_t n, double rho, std::uint64_t seed);
    static ProcessState from_set(std::size_t n, const std::vector<Vertex>& infected);

    std::size_t size() const { return n_; }
    bool infected(Vertex v) const { return data_[v] != 0; }
    void set(Vertex v, bool on) { data_[v] = on ? 1 : 0; }
    std::int64_t count() const;

    std::int64_t t = 0;

    const std::uint8_t* data() const { return data_.data(); }
    std::uint8_t* data() { return data_.data(); }

  private:
    std::size_t n_;
    std::vector<std::uint8_t> data_;
};

struct Trajectory {
    // (t, |X_t|) samples: every step while t <= kDenseLimit, then only steps
    // with t % ceil(t / kDenseLimit) == 0, plus always the final step.
    static constexpr std::int64_t kDenseLimit = 10000;

    std::vector<std::pair<std::int64_t, std::int64_t>> series;
    std::optional<std::int64_t> extinct_at;
    std::optional<std::int64_t> censored_at;
    std::int64_t final_size = 0;

    bool survived() const { return !extinct_at.has_value(); }
};

// One synchronous update; consumes exactly one uniform per vertex, indexed
// by (cfg.seed, state.t, v).
ProcessState step(const MultiGraph& g, const ProcessState& state, const ProcessConfig& cfg);

// Iterate until extinction (absorbing all-healthy) or t_max steps (censored).
Trajectory run(const MultiGraph& g, const ProcessState& init, const ProcessConfig& cfg,
               std::int64_t t_max);

// Two trajectories driven by the same per-(vertex, time) uniforms at p_low
// and p_high; the construction guarantees X_t(low) subset of X_t(high).
// containment_ok re-verifies that inclusion at every step.
struct CoupledResult {
    Trajectory low;
    Trajectory high;
    bool containment_ok = true;
};

CoupledResult run_coupled(const MultiGraph& g, const ProcessState& init, int theta,
                          double p_low, double p_high, std::uint64_t seed, std::int64_t t_max,
                          CountingMode mode = CountingMode::multiplicity);

}  // namespace thcp
