#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "thcp/multigraph.hpp"
#include "thcp/process.hpp"
#include "thcp/rng.hpp"

namespace thcp {

// W^{*l}: vertices with at least l neighbors inside W. Multiplicity mode
// counts parallel edges and lets a self-loop of w in W add 2 to w's own
// count; distinct mode counts each neighbor once and ignores self-loops.
// Vertices of W itself are eligible. If universe is given, candidates are
// restricted to it (the in-core variant).
std::vector<Vertex> w_star(const MultiGraph& g, const std::vector<Vertex>& w, int l,
                           CountingMode mode = CountingMode::multiplicity,
                           const std::vector<Vertex>* universe = nullptr);

// e(i, W): edges between i and W with multiplicity (self-loops of i in W
// count 2). i is in w_star(g, W, l) exactly when e(i, W) >= l.
std::int64_t edges_to_set(const MultiGraph& g, Vertex i, const std::vector<Vertex>& w);

enum class StructureEvent { e2, ftheta };

struct EventEstimate {
    StructureEvent event;
    std::int64_t m1 = 0;
    std::int64_t m2 = 0;
    int l = 0;
    std::int64_t trials = 0;
    std::int64_t violations = 0;
    bool exact = false;  // all C(n, m1) subsets enumerated
};

// Violation counting over m1-subsets W: for e2 a violation is
// |W^{*l}| > m2, for ftheta |W^{*l}| < m2. Enumerates exactly when
// C(n, m1) <= exact_cap, otherwise samples uniform subsets; sampling
// estimates the measure of violating subsets (a proxy for the for-all
// event), exact mode decides it.
EventEstimate estimate_event(const MultiGraph& g, StructureEvent event, std::int64_t m1,
                             std::int64_t m2, int l, std::int64_t trials, std::uint64_t seed,
                             std::int64_t exact_cap = 1000000);

// Local-search probe for extremal |W^{*l}| over m-subsets: greedy build,
// then single-swap improvement within a 2*m*n evaluation budget.
std::vector<Vertex> greedy_worst_subset(const MultiGraph& g, std::int64_t m, int l,
                                        bool maximize);

// Minimum-length cycle through v (self-loop: length 1; parallel pair:
// length 2), or nullopt if every such cycle exceeds max_len. BFS from v
// labels vertices by the root branch they descend from; the best edge
// joining two distinct branches closes a shortest cycle. Returned as the
// vertex sequence, starting at v, without repeating the closing vertex.
std::optional<std::vector<Vertex>> shortest_cycle_through(const MultiGraph& g, Vertex v,
                                                          int max_len);

struct CycleCover {
    std::vector<std::vector<Vertex>> cycles;
    std::vector<Vertex> uncovered;  // vertices in no listed cycle
    int max_len_used = 0;
};

// Greedy cover: ascending over vertices not yet covered, attach the
// shortest cycle through each; cover minimality is not attempted.
CycleCover cycle_cover(const MultiGraph& g, int max_len);

}  // namespace thcp
