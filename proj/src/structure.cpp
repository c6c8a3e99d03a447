#include "thcp/structure.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace thcp {

namespace {

// Shared scratch for subset counting: counts[] cleared lazily via the
// touched list.
struct CountScratch {
    std::vector<std::int64_t> counts;
    std::vector<Vertex> touched;

    explicit CountScratch(std::size_t n) : counts(n, 0) { touched.reserve(256); }

    void bump(Vertex u, std::int64_t by) {
        if (counts[u] == 0) touched.push_back(u);
        counts[u] += by;
    }
    void reset() {
        for (Vertex u : touched) counts[u] = 0;
        touched.clear();
    }
};

// counts[u] = #neighbors of u inside W under the chosen mode
void accumulate(const MultiGraph& g, const std::vector<Vertex>& w, CountingMode mode,
                CountScratch& sc) {
    if (mode == CountingMode::multiplicity) {
        for (Vertex x : w)
            for (std::uint32_t e = g.row_ptr()[x]; e < g.row_ptr()[x + 1]; ++e)
                sc.bump(g.incident()[e], 1);
    } else {
        for (Vertex x : w)
            for (std::uint32_t i = g.group_ptr()[x]; i < g.group_ptr()[x + 1]; ++i)
                sc.bump(g.group_nbr()[i], 1);
    }
}

std::int64_t count_at_least(const CountScratch& sc, int l, const std::vector<std::uint8_t>* in_universe) {
    std::int64_t hits = 0;
    for (Vertex u : sc.touched)
        if (sc.counts[u] >= l && (!in_universe || (*in_universe)[u])) ++hits;
    return hits;
}

}  // namespace

std::vector<Vertex> w_star(const MultiGraph& g, const std::vector<Vertex>& w, int l,
                           CountingMode mode, const std::vector<Vertex>* universe) {
    if (l < 1) throw std::runtime_error("w_star: l must be >= 1");
    CountScratch sc(g.num_vertices());
    accumulate(g, w, mode, sc);
    std::vector<std::uint8_t> in_universe;
    if (universe) {
        in_universe.assign(g.num_vertices(), 0);
        for (Vertex u : *universe) in_universe[u] = 1;
    }
    std::vector<Vertex> out;
    for (Vertex u : sc.touched)
        if (sc.counts[u] >= l && (!universe || in_universe[u])) out.push_back(u);
    std::sort(out.begin(), out.end());
    return out;
}

std::int64_t edges_to_set(const MultiGraph& g, Vertex i, const std::vector<Vertex>& w) {
    std::vector<std::uint8_t> in_w(g.num_vertices(), 0);
    for (Vertex x : w) in_w[x] = 1;
    std::int64_t c = 0;
    for (std::uint32_t e = g.row_ptr()[i]; e < g.row_ptr()[i + 1]; ++e)
        c += in_w[g.incident()[e]];
    return c;
}

namespace {

// C(n, k), saturating at cap+1 to avoid overflow.
std::int64_t binom_capped(std::int64_t n, std::int64_t k, std::int64_t cap) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    __int128 acc = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        acc = acc * (n - k + i) / i;
        if (acc > cap) return cap + 1;
    }
    return static_cast<std::int64_t>(acc);
}

bool is_violation(StructureEvent event, std::int64_t wstar_size, std::int64_t m2) {
    return event == StructureEvent::e2 ? wstar_size > m2 : wstar_size < m2;
}

}  // namespace

EventEstimate estimate_event(const MultiGraph& g, StructureEvent event, std::int64_t m1,
                             std::int64_t m2, int l, std::int64_t trials, std::uint64_t seed,
                             std::int64_t exact_cap) {
    auto n = static_cast<std::int64_t>(g.num_vertices());
    if (m1 < 0 || m1 > n) throw std::runtime_error("estimate_event: m1 out of range");
    EventEstimate est;
    est.event = event;
    est.m1 = m1;
    est.m2 = m2;
    est.l = l;

    CountScratch sc(g.num_vertices());
    auto eval_subset = [&](const std::vector<Vertex>& w) {
        accumulate(g, w, CountingMode::multiplicity, sc);
        std::int64_t size = count_at_least(sc, l, nullptr);
        sc.reset();
        return is_violation(event, size, m2);
    };

    std::int64_t total = binom_capped(n, m1, exact_cap);
    if (total <= exact_cap) {
        est.exact = true;
        est.trials = total;
        if (m1 == 0) {
            est.violations = is_violation(event, 0, m2) ? 1 : 0;
            return est;
        }
        std::vector<Vertex> w(static_cast<std::size_t>(m1));
        std::iota(w.begin(), w.end(), 0u);
        while (true) {
            if (eval_subset(w)) est.violations++;
            // next combination, lexicographic
            std::int64_t i = m1 - 1;
            while (i >= 0 && w[static_cast<std::size_t>(i)] ==
                                 static_cast<Vertex>(n - m1 + i))
                --i;
            if (i < 0) break;
            w[static_cast<std::size_t>(i)]++;
            for (std::int64_t j = i + 1; j < m1; ++j)
                w[static_cast<std::size_t>(j)] = w[static_cast<std::size_t>(j - 1)] + 1;
        }
        return est;
    }

    est.exact = false;
    est.trials = trials;
    SplitMix64 rng(seed);
    std::vector<Vertex> ids(g.num_vertices());
    std::iota(ids.begin(), ids.end(), 0u);
    std::vector<Vertex> w(static_cast<std::size_t>(m1));
    for (std::int64_t trial = 0; trial < trials; ++trial) {
        // partial Fisher-Yates, undone afterwards to keep ids in place
        std::vector<std::pair<std::size_t, std::size_t>> swaps;
        swaps.reserve(static_cast<std::size_t>(m1));
        for (std::int64_t i = 0; i < m1; ++i) {
            auto ui = static_cast<std::size_t>(i);
            std::size_t j = ui + static_cast<std::size_t>(
                                     rng.next_below(static_cast<std::uint64_t>(n - i)));
            std::swap(ids[ui], ids[j]);
            swaps.emplace_back(ui, j);
            w[ui] = ids[ui];
        }
        if (eval_subset(w)) est.violations++;
        for (auto it = swaps.rbegin(); it != swaps.rend(); ++it)
            std::swap(ids[it->first], ids[it->second]);
    }
    return est;
}

std::vector<Vertex> greedy_worst_subset(const MultiGraph& g, std::int64_t m, int l,
                                        bool maximize) {
    auto n = static_cast<std::int64_t>(g.num_vertices());
    if (m < 0 || m > n) throw std::runtime_error("greedy_worst_subset: m out of range");
    if (m == n) {
        std::vector<Vertex> all(g.num_vertices());
        std::iota(all.begin(), all.end(), 0u);
        return all;
    }

    CountScratch sc(g.num_vertices());
    auto objective = [&](const std::vector<Vertex>& w) {
        accumulate(g, w, CountingMode::multiplicity, sc);
        std::int64_t size = count_at_least(sc, l, nullptr);
        sc.reset();
        return size;
    };
    auto better = [&](std::int64_t a, std::int64_t b) { return maximize ? a > b : a < b; };

    std::vector<std::uint8_t> used(g.num_vertices(), 0);
    std::vector<Vertex> w;
    for (std::int64_t k = 0; k < m; ++k) {
        Vertex best_v = 0;
        std::int64_t best_val = 0;
        bool have = false;
        for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
            if (used[v]) continue;
            w.push_back(v);
            std::int64_t val = objective(w);
            w.pop_back();
            if (!have || better(val, best_val)) {
                have = true;
                best_val = val;
                best_v = v;
            }
        }
        w.push_back(best_v);
        used[best_v] = 1;
    }

    std::int64_t cur = objective(w);
    std::int64_t budget = 2 * m * n;
    bool improved = true;
    while (improved && budget > 0) {
        improved = false;
        for (std::size_t oi = 0; oi < w.size() && budget > 0; ++oi) {
            for (Vertex v = 0; v < static_cast<Vertex>(n) && budget > 0; ++v) {
                if (used[v]) continue;
                Vertex old = w[oi];
                w[oi] = v;
                --budget;
                std::int64_t val = objective(w);
                if (better(val, cur)) {
                    used[old] = 0;
                    used[v] = 1;
                    cur = val;
                    improved = true;
                } else {
                    w[oi] = old;
                }
            }
        }
    }
    std::sort(w.begin(), w.end());
    return w;
}

std::optional<std::vector<Vertex>> shortest_cycle_through(const MultiGraph& g, Vertex v,
                                                          int max_len) {
    if (max_len < 1) throw std::runtime_error("shortest_cycle_through: max_len must be >= 1");
    if (g.loops(v) >= 1) return std::vector<Vertex>{v};

    // parallel pair at v: length-2 cycle through the smallest such neighbor
    std::optional<Vertex> parallel_nbr;
    for (std::uint32_t i = g.group_ptr()[v]; i < g.group_ptr()[v + 1]; ++i)
        if (g.group_mult()[i] >= 2) {
            parallel_nbr = g.group_nbr()[i];
            break;
        }
    if (parallel_nbr && max_len >= 2) return std::vector<Vertex>{v, *parallel_nbr};

    constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
    const std::size_t n = g.num_vertices();
    std::vector<std::uint32_t> dist(n, kUnset);
    std::vector<Vertex> branch(n, kUnset);
    std::vector<Vertex> parent(n, kUnset);
    std::deque<Vertex> queue;

    dist[v] = 0;
    for (std::uint32_t i = g.group_ptr()[v]; i < g.group_ptr()[v + 1]; ++i) {
        Vertex u = g.group_nbr()[i];
        dist[u] = 1;
        branch[u] = u;
        parent[u] = v;
        queue.push_back(u);
    }

    const int depth_limit = max_len / 2 + 1;
    std::uint32_t best = kUnset;
    Vertex best_x = 0, best_y = 0;

    while (!queue.empty()) {
        Vertex x = queue.front();
        queue.pop_front();
        // future candidates span at least 2*dist[x] + 1
        if (best != kUnset && best <= 2 * dist[x]) break;
        if (dist[x] >= static_cast<std::uint32_t>(depth_limit)) continue;
        for (std::uint32_t i = g.group_ptr()[x]; i < g.group_ptr()[x + 1]; ++i) {
            Vertex y = g.group_nbr()[i];
            if (y == v) continue;  // back-edges to the root are the parallel case
            if (dist[y] == kUnset) {
                dist[y] = dist[x] + 1;
                branch[y] = branch[x];
                parent[y] = x;
                queue.push_back(y);
            } else if (branch[y] != branch[x]) {
                std::uint32_t len = dist[x] + dist[y] + 1;
                if (len < best) {
                    best = len;
                    best_x = x;
                    best_y = y;
                }
            }
        }
    }

    if (best == kUnset || best > static_cast<std::uint32_t>(max_len)) return std::nullopt;

    std::vector<Vertex> left;  // v .. best_x
    for (Vertex c = best_x; c != v; c = parent[c]) left.push_back(c);
    left.push_back(v);
    std::reverse(left.begin(), left.end());
    for (Vertex c = best_y; c != v; c = parent[c]) left.push_back(c);
    return left;
}

CycleCover cycle_cover(const MultiGraph& g, int max_len) {
    const std::size_t n = g.num_vertices();
    std::vector<std::uint8_t> covered(n, 0);
    CycleCover cover;
    for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
        if (covered[v]) continue;
        auto cyc = shortest_cycle_through(g, v, max_len);
        if (!cyc) continue;
        for (Vertex u : *cyc) covered[u] = 1;
        cover.max_len_used = std::max(cover.max_len_used, static_cast<int>(cyc->size()));
        cover.cycles.push_back(std::move(*cyc));
    }
    for (Vertex v = 0; v < static_cast<Vertex>(n); ++v)
        if (!covered[v]) cover.uncovered.push_back(v);
    return cover;
}

}  // namespace thcp
