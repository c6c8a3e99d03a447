#include "thcp/graph_gen.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace thcp {

std::uint64_t DegreeSequence::total() const {
    return std::accumulate(degrees.begin(), degrees.end(), std::uint64_t{0});
}

void DegreeSequence::validate() const {
    if (degrees.empty()) throw std::runtime_error("degree sequence: empty");
    if (total() % 2 != 0) throw std::runtime_error("degree sequence: odd total degree");
    if (total() >= (1ULL << 31)) throw std::runtime_error("degree sequence: too many half-edges");
}

DegreeSequence sample_degree_sequence(const DegreeDistribution& dist, std::size_t n,
                                      std::uint64_t seed, int max_retries) {
    if (n < 1) throw std::runtime_error("sample_degree_sequence: n must be >= 1");
    SplitMix64 rng(seed);
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        DegreeSequence seq;
        seq.degrees.resize(n);
        std::uint64_t sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
            auto d = static_cast<std::uint32_t>(dist.sample(rng));
            seq.degrees[i] = d;
            sum += d;
        }
        if (sum % 2 == 0) {
            seq.validate();
            return seq;
        }
    }
    throw std::runtime_error("sample_degree_sequence: even-sum conditioning failed after retries");
}

namespace {

HalfEdgeTable make_table(const DegreeSequence& seq) {
    HalfEdgeTable t;
    std::uint64_t nd = seq.total();
    t.vertex_of.reserve(nd);
    for (std::size_t v = 0; v < seq.size(); ++v)
        for (std::uint32_t k = 0; k < seq.degrees[v]; ++k)
            t.vertex_of.push_back(static_cast<Vertex>(v));
    t.matched.assign(nd, HalfEdgeTable::npos);
    return t;
}

// Heights sorted descending, ties broken toward the lower half-edge index.
std::vector<std::uint32_t> order_by_height(const std::vector<double>& b) {
    std::vector<std::uint32_t> order(b.size());
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
        if (b[x] != b[y]) return b[x] > b[y];
        return x < y;
    });
    return order;
}

}  // namespace

GenResult generate(const DegreeSequence& seq, std::uint64_t seed, MatchMethod method) {
    seq.validate();
    HalfEdgeTable table = make_table(seq);
    const std::uint64_t nd = table.vertex_of.size();
    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(nd / 2);
    SplitMix64 rng(seed);

    if (method == MatchMethod::uniform) {
        std::vector<std::uint32_t> perm(nd);
        std::iota(perm.begin(), perm.end(), 0u);
        for (std::uint64_t i = nd; i > 1; --i) {
            std::uint64_t j = rng.next_below(i);
            std::swap(perm[i - 1], perm[j]);
        }
        for (std::uint64_t i = 0; i + 1 < nd; i += 2) {
            table.matched[perm[i]] = perm[i + 1];
            table.matched[perm[i + 1]] = perm[i];
            edges.emplace_back(table.vertex_of[perm[i]], table.vertex_of[perm[i + 1]]);
        }
    } else {
        table.height_of.resize(nd);
        for (auto& b : table.height_of) b = rng.next_unit();
        auto by_height = order_by_height(table.height_of);
        std::uint64_t min_ptr = 0, max_ptr = 0;
        while (true) {
            while (min_ptr < nd && table.matched[min_ptr] != HalfEdgeTable::npos) ++min_ptr;
            if (min_ptr >= nd) break;
            std::uint64_t j = min_ptr;
            std::uint64_t mp = max_ptr;
            while (table.matched[by_height[mp]] != HalfEdgeTable::npos || by_height[mp] == j)
                ++mp;
            std::uint64_t l = by_height[mp];
            max_ptr = mp + 1;  // everything before mp is matched (or is j, matched now)
            table.matched[j] = l;
            table.matched[l] = j;
            edges.emplace_back(table.vertex_of[j], table.vertex_of[l]);
        }
    }

    return GenResult{MultiGraph(seq.size(), std::move(edges)), std::move(table)};
}

std::pair<HalfEdgeTable, CutoffProbe> cutoff_match_subset(const DegreeSequence& seq,
                                                          const std::vector<Vertex>& w,
                                                          std::uint64_t seed) {
    seq.validate();
    if (w.empty()) throw std::runtime_error("cutoff_match_subset: W must be nonempty");
    std::vector<bool> in_w(seq.size(), false);
    for (Vertex v : w) {
        if (v >= seq.size()) throw std::runtime_error("cutoff_match_subset: vertex out of range");
        in_w[v] = true;
    }

    // W's half-edges first, sorted by (vertex, local index); then the rest.
    HalfEdgeTable table;
    const std::uint64_t nd = seq.total();
    table.vertex_of.reserve(nd);
    for (std::size_t v = 0; v < seq.size(); ++v)
        if (in_w[v])
            for (std::uint32_t k = 0; k < seq.degrees[v]; ++k)
                table.vertex_of.push_back(static_cast<Vertex>(v));
    const std::uint64_t w_edges = table.vertex_of.size();
    for (std::size_t v = 0; v < seq.size(); ++v)
        if (!in_w[v])
            for (std::uint32_t k = 0; k < seq.degrees[v]; ++k)
                table.vertex_of.push_back(static_cast<Vertex>(v));
    table.matched.assign(nd, HalfEdgeTable::npos);

    SplitMix64 rng(seed);
    table.height_of.resize(nd);
    for (auto& b : table.height_of) b = rng.next_unit();
    auto by_height = order_by_height(table.height_of);

    CutoffProbe probe;
    std::uint64_t min_ptr = 0, max_ptr = 0;
    while (true) {
        while (min_ptr < w_edges && table.matched[min_ptr] != HalfEdgeTable::npos) ++min_ptr;
        if (min_ptr >= w_edges) break;  // all W half-edges matched
        std::uint64_t j = min_ptr;
        std::uint64_t mp = max_ptr;
        while (table.matched[by_height[mp]] != HalfEdgeTable::npos || by_height[mp] == j) ++mp;
        std::uint64_t l = by_height[mp];
        max_ptr = mp + 1;
        table.matched[j] = l;
        table.matched[l] = j;
        probe.h_t = table.height_of[l];
        probe.steps++;
    }
    for (std::uint64_t j = 0; j < nd; ++j)
        if (table.height_of[j] >= probe.h_t) probe.removed_above++;
    return {std::move(table), probe};
}

}  // namespace thcp
