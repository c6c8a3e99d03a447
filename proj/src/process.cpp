#include "thcp/process.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "thcp/kernels.hpp"

namespace thcp {

ProcessState ProcessState::all_infected(std::size_t n) {
    ProcessState s(n);
    std::fill(s.data_.begin(), s.data_.begin() + static_cast<std::ptrdiff_t>(n), 1);
    return s;
}

ProcessState ProcessState::with_density(std::size_t n, double rho, std::uint64_t seed) {
    if (rho < 0.0 || rho > 1.0) throw std::runtime_error("initial density must be in [0,1]");
    auto m = static_cast<std::size_t>(std::min<double>(static_cast<double>(n),
                                                       std::ceil(rho * static_cast<double>(n))));
    ProcessState s(n);
    // partial Fisher-Yates: first m entries of a random permutation
    std::vector<Vertex> ids(n);
    std::iota(ids.begin(), ids.end(), 0u);
    SplitMix64 rng(seed);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng.next_below(n - i));
        std::swap(ids[i], ids[j]);
        s.set(ids[i], true);
    }
    return s;
}

ProcessState ProcessState::from_set(std::size_t n, const std::vector<Vertex>& infected) {
    ProcessState s(n);
    for (Vertex v : infected) {
        if (v >= n) throw std::runtime_error("initial set: vertex out of range");
        s.set(v, true);
    }
    return s;
}

std::int64_t ProcessState::count() const {
    return std::accumulate(data_.begin(), data_.begin() + static_cast<std::ptrdiff_t>(n_),
                           std::int64_t{0});
}

namespace {

struct CsrView {
    const std::uint32_t* row_ptr;
    const std::uint32_t* cols;
};

CsrView csr_for(const MultiGraph& g, CountingMode mode) {
    if (mode == CountingMode::multiplicity)
        return {g.row_ptr().data(), g.incident().data()};
    return {g.group_ptr().data(), g.group_nbr().data()};
}

void check(const MultiGraph& g, const ProcessState& s, const ProcessConfig& cfg) {
    if (s.size() != g.num_vertices())
        throw std::runtime_error("process: state size does not match graph");
    if (cfg.theta < 2) throw std::runtime_error("process: theta must be >= 2");
    if (cfg.p < 0.0 || cfg.p > 1.0) throw std::runtime_error("process: p must be in [0,1]");
}

void record(Trajectory& traj, std::int64_t t, std::int64_t size) {
    if (t <= Trajectory::kDenseLimit) {
        traj.series.emplace_back(t, size);
        return;
    }
    std::int64_t stride = (t + Trajectory::kDenseLimit - 1) / Trajectory::kDenseLimit;
    if (t % stride == 0) traj.series.emplace_back(t, size);
}

}  // namespace

ProcessState step(const MultiGraph& g, const ProcessState& state, const ProcessConfig& cfg) {
    check(g, state, cfg);
    auto n = static_cast<std::uint32_t>(g.num_vertices());
    CsrView csr = csr_for(g, cfg.mode);
    ProcessState next(g.num_vertices());
    std::vector<std::uint8_t> scratch(csr.row_ptr[n]);
    kernels::step(n, csr.row_ptr, csr.cols, state.data(), next.data(),
                  static_cast<std::uint32_t>(cfg.theta), cfg.seed,
                  static_cast<std::uint64_t>(state.t), threshold53(cfg.p), scratch.data());
    next.t = state.t + 1;
    return next;
}

Trajectory run(const MultiGraph& g, const ProcessState& init, const ProcessConfig& cfg,
               std::int64_t t_max) {
    check(g, init, cfg);
    if (t_max < 0) throw std::runtime_error("process: t_max must be >= 0");
    auto n = static_cast<std::uint32_t>(g.num_vertices());
    CsrView csr = csr_for(g, cfg.mode);
    const std::uint64_t thresh = threshold53(cfg.p);

    ProcessState cur = init;
    ProcessState nxt(g.num_vertices());
    std::vector<std::uint8_t> scratch(csr.row_ptr[n]);

    Trajectory traj;
    std::int64_t size = cur.count();
    record(traj, cur.t, size);
    traj.final_size = size;
    if (size == 0) {
        traj.extinct_at = cur.t;
        return traj;
    }
    for (std::int64_t step_i = 0; step_i < t_max; ++step_i) {
        kernels::step(n, csr.row_ptr, csr.cols, cur.data(), nxt.data(),
                      static_cast<std::uint32_t>(cfg.theta), cfg.seed,
                      static_cast<std::uint64_t>(cur.t), thresh, scratch.data());
        nxt.t = cur.t + 1;
        std::swap(cur, nxt);
        size = cur.count();
        record(traj, cur.t, size);
        traj.final_size = size;
        if (size == 0) {
            traj.extinct_at = cur.t;
            if (traj.series.back().first != cur.t) traj.series.emplace_back(cur.t, size);
            return traj;
        }
    }
    traj.censored_at = cur.t;
    if (traj.series.back().first != cur.t) traj.series.emplace_back(cur.t, size);
    return traj;
}

CoupledResult run_coupled(const MultiGraph& g, const ProcessState& init, int theta,
                          double p_low, double p_high, std::uint64_t seed, std::int64_t t_max,
                          CountingMode mode) {
    if (p_low > p_high) throw std::runtime_error("run_coupled: p_low must be <= p_high");
    ProcessConfig cfg_lo{theta, p_low, mode, seed};
    ProcessConfig cfg_hi{theta, p_high, mode, seed};
    check(g, init, cfg_lo);
    check(g, init, cfg_hi);

    auto n = static_cast<std::uint32_t>(g.num_vertices());
    CsrView csr = csr_for(g, mode);
    const std::uint64_t th_lo = threshold53(p_low);
    const std::uint64_t th_hi = threshold53(p_high);

    ProcessState lo = init, hi = init;
    ProcessState lo_next(n), hi_next(n);
    std::vector<std::uint8_t> scratch(csr.row_ptr[n]);

    CoupledResult res;
    auto record_both = [&](std::int64_t t, std::int64_t lo_size, std::int64_t hi_size) {
        record(res.low, t, lo_size);
        record(res.high, t, hi_size);
        res.low.final_size = lo_size;
        res.high.final_size = hi_size;
    };
    record_both(init.t, lo.count(), hi.count());

    bool lo_done = lo.count() == 0, hi_done = hi.count() == 0;
    if (lo_done) res.low.extinct_at = lo.t;
    if (hi_done) res.high.extinct_at = hi.t;

    for (std::int64_t s = 0; s < t_max && !(lo_done && hi_done); ++s) {
        std::int64_t t = lo.t;
        if (!lo_done) {
            kernels::step(n, csr.row_ptr, csr.cols, lo.data(), lo_next.data(),
                          static_cast<std::uint32_t>(theta), seed,
                          static_cast<std::uint64_t>(t), th_lo, scratch.data());
            lo_next.t = t + 1;
            std::swap(lo, lo_next);
        } else {
            lo.t = t + 1;  // absorbed at zero
        }
        if (!hi_done) {
            kernels::step(n, csr.row_ptr, csr.cols, hi.data(), hi_next.data(),
                          static_cast<std::uint32_t>(theta), seed,
                          static_cast<std::uint64_t>(t), th_hi, scratch.data());
            hi_next.t = t + 1;
            std::swap(hi, hi_next);
        } else {
            hi.t = t + 1;
        }

        std::int64_t lo_size = lo_done ? 0 : lo.count();
        std::int64_t hi_size = hi_done ? 0 : hi.count();
        for (std::uint32_t v = 0; v < n && res.containment_ok; ++v)
            if (lo.infected(v) && !hi.infected(v)) res.containment_ok = false;
        record_both(lo.t, lo_size, hi_size);
        if (!lo_done && lo_size == 0) {
            lo_done = true;
            res.low.extinct_at = lo.t;
        }
        if (!hi_done && hi_size == 0) {
            hi_done = true;
            res.high.extinct_at = hi.t;
        }
    }
    if (!lo_done) res.low.censored_at = lo.t;
    if (!hi_done) res.high.censored_at = hi.t;
    return res;
}

}  // namespace thcp
