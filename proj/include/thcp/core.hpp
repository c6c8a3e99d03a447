#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "thcp/degree_dist.hpp"
#include "thcp/graph_gen.hpp"
#include "thcp/multigraph.hpp"

namespace thcp {

struct CoreResult {
    std::vector<Vertex> vertices;                 // ascending
    std::vector<std::uint32_t> residual_degrees;  // aligned with vertices; self-loops count 2
    std::vector<Vertex> peel_order;               // removed vertices in removal order
    std::optional<double> h_core;                 // cut-off generation only

    bool contains(Vertex v) const;
    std::size_t size() const { return vertices.size(); }
};

// Maximal induced subgraph of minimum degree r by queue peeling. Self-loops
// count 2 toward a vertex's degree. The result is order-invariant; the
// optional rng randomizes removal order (used by the invariance tests).
CoreResult peel_core(const MultiGraph& g, int r, SplitMix64* shuffle_rng = nullptr);

struct DirectCoreResult {
    CoreResult core;
    MultiGraph graph;
};

// Core generation interleaved with the matching: half-edges of light
// vertices (fewer than r unmatched clones) queue up and each pairs with the
// highest unmatched clone, lowering the cut-off line; vertices dropping
// below r unmatched clones turn light and enqueue theirs. When the queue
// drains, the surviving heavy vertices are the r-core; the remaining
// half-edges are matched uniformly to complete the graph.
DirectCoreResult generate_core_direct(const DegreeSequence& seq, int r, std::uint64_t seed);

struct CoreSizeReport {
    CoreThresholdResult analytic;
    std::vector<double> fractions;  // |K_n|/n per replica
    double mean_fraction = 0.0;
    double stddev = 0.0;
};

// Generates `replicas` graphs from dist, peels each, and reports |K_n|/n
// against the analytic rho_r(hhat). When the analytic condition fails the
// report still carries the empirical fractions (expected to be o(n)).
CoreSizeReport core_size_check(const DegreeDistribution& dist, std::size_t n, int r,
                               int replicas, std::uint64_t master_seed);

}  // namespace thcp
