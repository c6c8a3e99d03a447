#pragma once

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "thcp/degree_dist.hpp"
#include "thcp/multigraph.hpp"

namespace thcp {

struct DegreeSequence {
    std::vector<std::uint32_t> degrees;

    std::size_t size() const { return degrees.size(); }
    std::uint64_t total() const;
    void validate() const;  // nonempty, even sum
};

// n i.i.d. draws conditioned on even total by whole-sequence rejection.
// Throws after max_retries consecutive odd sums (reachable only for laws
// whose sampled sum has fixed odd parity).
DegreeSequence sample_degree_sequence(const DegreeDistribution& dist, std::size_t n,
                                      std::uint64_t seed, int max_retries = 1000);

struct HalfEdgeTable {
    static constexpr std::uint64_t npos = std::numeric_limits<std::uint64_t>::max();

    std::vector<Vertex> vertex_of;        // half-edge -> vertex
    std::vector<double> height_of;        // B_j marks; empty for the uniform method
    std::vector<std::uint64_t> matched;   // half-edge -> partner, or npos
};

enum class MatchMethod { uniform, cutoff_line };

struct GenResult {
    MultiGraph graph;
    HalfEdgeTable table;
};

// Uniform perfect matching of the half-edges, either by one unbiased shuffle
// (uniform) or by the sequential cut-off line procedure (cutoff_line): the
// lowest-index unmatched half-edge pairs with the highest-mark unmatched
// half-edge, both leave the pool. Both induce the same uniform matching law.
GenResult generate(const DegreeSequence& seq, std::uint64_t seed, MatchMethod method);

struct CutoffProbe {
    double h_t = 1.0;                 // cut-off line height when W's half-edges are exhausted
    std::uint64_t steps = 0;          // T; at most sum of W's degrees
    std::uint64_t removed_above = 0;  // |{j : B_j >= H_T}|, deterministically <= 2 * sum_W D_i
};

// Reorders half-edges so W's come first (sorted by vertex then local index),
// runs the cut-off line algorithm until every W half-edge is matched, and
// reports the terminal line height. The returned table is partial.
std::pair<HalfEdgeTable, CutoffProbe> cutoff_match_subset(const DegreeSequence& seq,
                                                          const std::vector<Vertex>& w,
                                                          std::uint64_t seed);

}  // namespace thcp
