#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace thcp {

using Vertex = std::uint32_t;

// Static multigraph with self-loops and parallel edges, stored three ways:
//
//  * incidence CSR: one entry per half-edge, so row v lists the opposite
//    endpoint of every edge at v and a self-loop puts v twice in its own
//    row. Row length == degree. This is the layout the process kernels
//    consume for multiplicity counting.
//  * grouped adjacency: (neighbor, multiplicity) runs per vertex, self
//    excluded, neighbors ascending. Doubles as the distinct-neighbor CSR.
//  * canonical edge list: (min,max) pairs, lexicographically sorted; this
//    is the serialization order.
class MultiGraph {
  public:
    MultiGraph(std::size_t n, std::vector<std::pair<Vertex, Vertex>> edge_list);

    std::size_t num_vertices() const { return n_; }
    std::size_t num_edges() const { return edges_.size(); }
    std::uint32_t degree(Vertex v) const { return row_ptr_[v + 1] - row_ptr_[v]; }

    const std::vector<std::uint32_t>& row_ptr() const { return row_ptr_; }
    const std::vector<Vertex>& incident() const { return incident_; }

    const std::vector<std::uint32_t>& group_ptr() const { return grp_ptr_; }
    const std::vector<Vertex>& group_nbr() const { return grp_nbr_; }
    const std::vector<std::uint32_t>& group_mult() const { return grp_mult_; }

    std::uint32_t loops(Vertex v) const { return loops_[v]; }
    std::uint32_t multiplicity(Vertex u, Vertex v) const;

    const std::vector<std::pair<Vertex, Vertex>>& edges() const { return edges_; }

    // Text format: "n m" header, one "u v" line per edge (loops as "u u"),
    // parallel edges repeated, lexicographic order.
    std::string to_text() const;
    static MultiGraph from_text(std::istream& in);

    struct Stats {
        std::uint64_t self_loops = 0;
        std::uint64_t parallel_pairs = 0;  // sum over u<v of C(mult,2)
        std::uint64_t edge_count = 0;
        std::uint32_t max_degree = 0;
        std::map<std::uint32_t, std::uint64_t> degree_histogram;
    };
    Stats stats() const;

    // Optional post-filter: drop self-loops and collapse parallel edges.
    MultiGraph simplified() const;

  private:
    std::size_t n_;
    std::vector<std::pair<Vertex, Vertex>> edges_;
    std::vector<std::uint32_t> row_ptr_;
    std::vector<Vertex> incident_;
    std::vector<std::uint32_t> grp_ptr_;
    std::vector<Vertex> grp_nbr_;
    std::vector<std::uint32_t> grp_mult_;
    std::vector<std::uint32_t> loops_;
};

}  // namespace thcp
