#include "thcp/core.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace thcp {

bool CoreResult::contains(Vertex v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
}

CoreResult peel_core(const MultiGraph& g, int r, SplitMix64* shuffle_rng) {
    if (r < 1) throw std::runtime_error("peel_core: r must be >= 1");
    const std::size_t n = g.num_vertices();
    std::vector<std::int64_t> deg(n);
    for (std::size_t v = 0; v < n; ++v) deg[v] = g.degree(static_cast<Vertex>(v));

    std::vector<std::uint8_t> removed(n, 0);
    std::deque<Vertex> queue;
    std::vector<Vertex> bag;  // randomized order when shuffle_rng is set
    auto push = [&](Vertex v) {
        if (shuffle_rng) bag.push_back(v);
        else queue.push_back(v);
    };
    auto pop = [&]() -> Vertex {
        if (shuffle_rng) {
            std::size_t i = static_cast<std::size_t>(shuffle_rng->next_below(bag.size()));
            std::swap(bag[i], bag.back());
            Vertex v = bag.back();
            bag.pop_back();
            return v;
        }
        Vertex v = queue.front();
        queue.pop_front();
        return v;
    };
    auto empty = [&]() { return shuffle_rng ? bag.empty() : queue.empty(); };

    for (std::size_t v = 0; v < n; ++v)
        if (deg[v] < r) push(static_cast<Vertex>(v));

    CoreResult res;
    while (!empty()) {
        Vertex v = pop();
        if (removed[v]) continue;  // lazy duplicates
        removed[v] = 1;
        res.peel_order.push_back(v);
        for (std::uint32_t i = g.group_ptr()[v]; i < g.group_ptr()[v + 1]; ++i) {
            Vertex u = g.group_nbr()[i];
            if (removed[u]) continue;
            bool was_ok = deg[u] >= r;
            deg[u] -= g.group_mult()[i];
            if (was_ok && deg[u] < r) push(u);
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (!removed[v]) {
            res.vertices.push_back(static_cast<Vertex>(v));
            res.residual_degrees.push_back(static_cast<std::uint32_t>(deg[v]));
        }
    }
    return res;
}

DirectCoreResult generate_core_direct(const DegreeSequence& seq, int r, std::uint64_t seed) {
    if (r < 2) throw std::runtime_error("generate_core_direct: r must be >= 2");
    seq.validate();
    const std::size_t n = seq.size();
    const std::uint64_t nd = seq.total();

    // half-edge j -> vertex, contiguous per vertex
    std::vector<Vertex> vertex_of;
    vertex_of.reserve(nd);
    std::vector<std::uint64_t> offset(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) {
        offset[v + 1] = offset[v] + seq.degrees[v];
        for (std::uint32_t k = 0; k < seq.degrees[v]; ++k)
            vertex_of.push_back(static_cast<Vertex>(v));
    }

    SplitMix64 rng(seed);
    std::vector<double> height(nd);
    for (auto& b : height) b = rng.next_unit();
    std::vector<std::uint32_t> by_height(nd);
    std::iota(by_height.begin(), by_height.end(), 0u);
    std::sort(by_height.begin(), by_height.end(), [&](std::uint32_t x, std::uint32_t y) {
        if (height[x] != height[y]) return height[x] > height[y];
        return x < y;
    });

    std::vector<std::uint64_t> matched(nd, HalfEdgeTable::npos);
    std::vector<std::uint32_t> unmatched_count(seq.degrees.begin(), seq.degrees.end());
    std::vector<std::uint8_t> light(n, 0);
    std::deque<std::uint64_t> queue;
    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(nd / 2);
    CoreResult core;

    auto turn_light = [&](Vertex v) {
        light[v] = 1;
        core.peel_order.push_back(v);
        for (std::uint64_t j = offset[v]; j < offset[v + 1]; ++j)
            if (matched[j] == HalfEdgeTable::npos) queue.push_back(j);
    };

    for (std::size_t v = 0; v < n; ++v)
        if (seq.degrees[v] < static_cast<std::uint32_t>(r)) turn_light(static_cast<Vertex>(v));

    double h_line = 1.0;
    std::uint64_t max_ptr = 0;
    while (!queue.empty()) {
        std::uint64_t a = queue.front();
        queue.pop_front();
        if (matched[a] != HalfEdgeTable::npos) continue;
        std::uint64_t mp = max_ptr;
        while (matched[by_height[mp]] != HalfEdgeTable::npos || by_height[mp] == a) ++mp;
        std::uint64_t partner = by_height[mp];
        max_ptr = mp + 1;
        matched[a] = partner;
        matched[partner] = a;
        h_line = height[partner];
        Vertex va = vertex_of[a], vp = vertex_of[partner];
        edges.emplace_back(va, vp);
        unmatched_count[va]--;
        unmatched_count[vp]--;
        if (!light[vp] && unmatched_count[vp] < static_cast<std::uint32_t>(r)) turn_light(vp);
        // va is already light: its clones entered the queue when it turned
    }

    // complete the remaining (heavy-to-heavy) matching uniformly
    std::vector<std::uint64_t> rest;
    for (std::uint64_t j = 0; j < nd; ++j)
        if (matched[j] == HalfEdgeTable::npos) rest.push_back(j);
    for (std::size_t i = rest.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(rest[i - 1], rest[j]);
    }
    for (std::size_t i = 0; i + 1 < rest.size(); i += 2) {
        matched[rest[i]] = rest[i + 1];
        matched[rest[i + 1]] = rest[i];
        edges.emplace_back(vertex_of[rest[i]], vertex_of[rest[i + 1]]);
    }

    for (std::size_t v = 0; v < n; ++v) {
        if (!light[v]) {
            core.vertices.push_back(static_cast<Vertex>(v));
            core.residual_degrees.push_back(unmatched_count[v]);
        }
    }
    core.h_core = h_line;
    return DirectCoreResult{std::move(core), MultiGraph(n, std::move(edges))};
}

CoreSizeReport core_size_check(const DegreeDistribution& dist, std::size_t n, int r,
                               int replicas, std::uint64_t master_seed) {
    if (replicas < 1) throw std::runtime_error("core_size_check: replicas must be >= 1");
    CoreSizeReport report;
    report.analytic = solve_core_threshold(dist, r);
    for (int i = 0; i < replicas; ++i) {
        std::uint64_t rep_seed = derive_seed(master_seed, static_cast<std::uint64_t>(i));
        auto seq = sample_degree_sequence(dist, n, derive_seed(rep_seed, 0));
        auto gen = generate(seq, derive_seed(rep_seed, 1), MatchMethod::uniform);
        auto core = peel_core(gen.graph, r);
        report.fractions.push_back(static_cast<double>(core.size()) /
                                   static_cast<double>(n));
    }
    double sum = std::accumulate(report.fractions.begin(), report.fractions.end(), 0.0);
    report.mean_fraction = sum / static_cast<double>(replicas);
    double ss = 0.0;
    for (double f : report.fractions) ss += (f - report.mean_fraction) * (f - report.mean_fraction);
    report.stddev = replicas > 1 ? std::sqrt(ss / static_cast<double>(replicas - 1)) : 0.0;
    return report;
}

}  // namespace thcp
