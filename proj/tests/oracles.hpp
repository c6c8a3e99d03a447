// Test-only oracles: independent brute-force or closed-form routes for the
// quantities the library computes. Deliberately naive; none of these share
// code with the implementations they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "thcp/degree_dist.hpp"
#include "thcp/multigraph.hpp"

namespace oracles {

inline double poisson_pmf(double lambda, std::int64_t k) {
    return std::exp(-lambda + static_cast<double>(k) * std::log(lambda) -
                    std::lgamma(static_cast<double>(k) + 1.0));
}

inline double poisson_upper_tail(double lambda, std::int64_t r) {
    if (r <= 0) return 1.0;
    double lower = 0.0;
    for (std::int64_t k = 0; k < r; ++k) lower += poisson_pmf(lambda, k);
    return std::max(0.0, 1.0 - lower);
}

inline double binom_pmf(std::int64_t n, std::int64_t l, double h) {
    if (l < 0 || l > n) return 0.0;
    if (h <= 0.0) return l == 0 ? 1.0 : 0.0;
    if (h >= 1.0) return l == n ? 1.0 : 0.0;
    double nd = static_cast<double>(n), ld = static_cast<double>(l);
    return std::exp(std::lgamma(nd + 1.0) - std::lgamma(ld + 1.0) -
                    std::lgamma(nd - ld + 1.0) + ld * std::log(h) +
                    (nd - ld) * std::log1p(-h));
}

// F_r and rho_r straight from the defining double sum over the thinned law.
inline double brute_core_f(const thcp::DegreeDistribution& dist, double h, int r) {
    double acc = 0.0;
    std::int64_t jmax = dist.max_support();
    for (std::int64_t l = r; l <= jmax; ++l)
        for (std::int64_t j = l; j <= jmax; ++j)
            acc += static_cast<double>(l) * binom_pmf(j, l, h) * dist.pmf(j);
    return acc;
}

inline double brute_core_rho(const thcp::DegreeDistribution& dist, double h, int r) {
    double acc = 0.0;
    std::int64_t jmax = dist.max_support();
    for (std::int64_t l = r; l <= jmax; ++l)
        for (std::int64_t j = l; j <= jmax; ++j) acc += binom_pmf(j, l, h) * dist.pmf(j);
    return acc;
}

// Largest root of d h^2 = F_r(h): scan downward from h = 1 on a 1e-6 grid
// for the first sign change of d h^2 - F_r(h); returns the bracket midpoint.
inline std::optional<double> grid_core_hhat(const thcp::DegreeDistribution& dist, int r,
                                            double step = 1e-6) {
    double d = dist.mean();
    auto g = [&](double h) { return d * h * h - brute_core_f(dist, h, r); };
    double prev_h = 1.0;
    double prev_v = g(1.0);
    if (std::abs(prev_v) <= 1e-9 * std::max(1.0, d)) return 1.0;
    for (double h = 1.0 - step; h > 0.0; h -= step) {
        double v = g(h);
        if (v < 0.0) return h + step / 2.0;
        prev_h = h;
        prev_v = v;
    }
    (void)prev_h;
    (void)prev_v;
    return std::nullopt;
}

// Two-stage 1e-6 grid minimization of alpha / P(Pois(alpha) >= r-1).
inline double grid_er_threshold(int r) {
    auto f = [&](double a) {
        double tail = poisson_upper_tail(a, r - 1);
        return tail <= 0.0 ? std::numeric_limits<double>::infinity() : a / tail;
    };
    double best_a = 1e-3, best = f(1e-3);
    for (double a = 2e-3; a <= 50.0; a += 1e-3) {
        double v = f(a);
        if (v < best) { best = v; best_a = a; }
    }
    double lo = std::max(1e-6, best_a - 2e-3), hi = best_a + 2e-3;
    for (double a = lo; a <= hi; a += 1e-6) {
        double v = f(a);
        if (v < best) best = v;
    }
    return best;
}

// r-core as the union of all induced subgraphs of minimum degree r
// (valid sets are closed under union). Exponential; n <= 20 or so.
inline std::vector<thcp::Vertex> brute_core(const thcp::MultiGraph& g, int r) {
    const auto n = g.num_vertices();
    std::vector<std::uint8_t> in_core(n, 0);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        bool ok = true;
        for (std::size_t v = 0; v < n && ok; ++v) {
            if (!(mask >> v & 1)) continue;
            std::int64_t deg = 2 * g.loops(static_cast<thcp::Vertex>(v));
            for (std::uint32_t i = g.group_ptr()[v]; i < g.group_ptr()[v + 1]; ++i)
                if (mask >> g.group_nbr()[i] & 1) deg += g.group_mult()[i];
            if (deg < r) ok = false;
        }
        if (ok)
            for (std::size_t v = 0; v < n; ++v)
                if (mask >> v & 1) in_core[v] = 1;
    }
    std::vector<thcp::Vertex> out;
    for (std::size_t v = 0; v < n; ++v)
        if (in_core[v]) out.push_back(static_cast<thcp::Vertex>(v));
    return out;
}

// Round-based peeling: delete every vertex of degree < r simultaneously
// until stable. Order-free by construction.
inline std::vector<thcp::Vertex> round_peel_core(const thcp::MultiGraph& g, int r) {
    const auto n = g.num_vertices();
    std::vector<std::uint8_t> alive(n, 1);
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::uint8_t> next = alive;
        for (std::size_t v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            std::int64_t deg = 2 * g.loops(static_cast<thcp::Vertex>(v));
            for (std::uint32_t i = g.group_ptr()[v]; i < g.group_ptr()[v + 1]; ++i)
                if (alive[g.group_nbr()[i]]) deg += g.group_mult()[i];
            if (deg < r) {
                next[v] = 0;
                changed = true;
            }
        }
        alive = std::move(next);
    }
    std::vector<thcp::Vertex> out;
    for (std::size_t v = 0; v < n; ++v)
        if (alive[v]) out.push_back(static_cast<thcp::Vertex>(v));
    return out;
}

// W^{*l} by a double loop over candidate u and members w, via multiplicity
// queries only.
inline std::vector<thcp::Vertex> brute_w_star(const thcp::MultiGraph& g,
                                              const std::vector<thcp::Vertex>& w, int l,
                                              bool distinct_mode) {
    std::vector<thcp::Vertex> out;
    for (thcp::Vertex u = 0; u < g.num_vertices(); ++u) {
        std::int64_t c = 0;
        for (thcp::Vertex x : w) {
            if (x == u) {
                if (!distinct_mode) c += 2 * g.loops(u);
                continue;
            }
            std::uint32_t m = g.multiplicity(u, x);
            if (distinct_mode)
                c += m > 0 ? 1 : 0;
            else
                c += m;
        }
        if (c >= l) out.push_back(u);
    }
    return out;
}

// Shortest cycle through v by DFS over simple paths, with length pruning.
inline std::optional<int> brute_shortest_cycle_through(const thcp::MultiGraph& g,
                                                       thcp::Vertex v, int max_len) {
    if (g.loops(v) >= 1) return max_len >= 1 ? std::optional<int>(1) : std::nullopt;
    int best = std::numeric_limits<int>::max();
    for (std::uint32_t i = g.group_ptr()[v]; i < g.group_ptr()[v + 1]; ++i)
        if (g.group_mult()[i] >= 2) best = 2;

    std::vector<std::uint8_t> on_path(g.num_vertices(), 0);
    on_path[v] = 1;
    std::vector<thcp::Vertex> stack;

    auto dfs = [&](auto&& self, thcp::Vertex x, int depth) -> void {
        if (depth + 1 >= best) return;  // closing now already costs depth+1
        for (std::uint32_t i = g.group_ptr()[x]; i < g.group_ptr()[x + 1]; ++i) {
            thcp::Vertex y = g.group_nbr()[i];
            if (y == v) {
                if (depth >= 2) best = std::min(best, depth + 1);
                continue;
            }
            if (on_path[y]) continue;
            on_path[y] = 1;
            self(self, y, depth + 1);
            on_path[y] = 0;
        }
    };
    for (std::uint32_t i = g.group_ptr()[v]; i < g.group_ptr()[v + 1]; ++i) {
        thcp::Vertex y = g.group_nbr()[i];
        if (on_path[y]) continue;
        on_path[y] = 1;
        dfs(dfs, y, 1);
        on_path[y] = 0;
    }
    if (best == std::numeric_limits<int>::max() || best > max_len) return std::nullopt;
    return best;
}

// chi-square critical values at significance 0.001
inline double chi2_crit_999(int df) {
    switch (df) {
        case 1: return 10.828;
        case 2: return 13.816;
        case 3: return 16.266;
        case 4: return 18.467;
        case 5: return 20.515;
        case 6: return 22.458;
        default: break;
    }
    // Wilson-Hilferty approximation for larger df
    double z = 3.090232;  // Phi^{-1}(0.999)
    double d = static_cast<double>(df);
    double t = 1.0 - 2.0 / (9.0 * d) + z * std::sqrt(2.0 / (9.0 * d));
    return d * t * t * t;
}

}  // namespace oracles
