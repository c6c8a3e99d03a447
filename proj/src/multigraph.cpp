#include "thcp/multigraph.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace thcp {

MultiGraph::MultiGraph(std::size_t n, std::vector<std::pair<Vertex, Vertex>> edge_list)
    : n_(n), edges_(std::move(edge_list)) {
    for (auto& [u, v] : edges_) {
        if (u >= n_ || v >= n_) throw std::runtime_error("multigraph: endpoint out of range");
        if (u > v) std::swap(u, v);
    }
    std::sort(edges_.begin(), edges_.end());

    row_ptr_.assign(n_ + 1, 0);
    for (const auto& [u, v] : edges_) {
        row_ptr_[u + 1]++;
        row_ptr_[v + 1]++;  // self-loop counted twice, as two half-edges
    }
    for (std::size_t i = 0; i < n_; ++i) row_ptr_[i + 1] += row_ptr_[i];

    incident_.resize(row_ptr_[n_]);
    std::vector<std::uint32_t> fill(row_ptr_.begin(), row_ptr_.end() - 1);
    for (const auto& [u, v] : edges_) {
        incident_[fill[u]++] = v;
        incident_[fill[v]++] = u;
    }
    for (std::size_t v = 0; v < n_; ++v)
        std::sort(incident_.begin() + row_ptr_[v], incident_.begin() + row_ptr_[v + 1]);

    grp_ptr_.assign(n_ + 1, 0);
    loops_.assign(n_, 0);
    for (std::size_t v = 0; v < n_; ++v) {
        std::uint32_t b = row_ptr_[v], e = row_ptr_[v + 1];
        for (std::uint32_t i = b; i < e;) {
            std::uint32_t j = i;
            while (j < e && incident_[j] == incident_[i]) ++j;
            if (incident_[i] == v)
                loops_[v] = (j - i) / 2;
            else {
                grp_nbr_.push_back(incident_[i]);
                grp_mult_.push_back(j - i);
            }
            i = j;
        }
        grp_ptr_[v + 1] = static_cast<std::uint32_t>(grp_nbr_.size());
    }
}

std::uint32_t MultiGraph::multiplicity(Vertex u, Vertex v) const {
    if (u == v) return loops_[u];
    auto b = grp_nbr_.begin() + grp_ptr_[u], e = grp_nbr_.begin() + grp_ptr_[u + 1];
    auto it = std::lower_bound(b, e, v);
    if (it == e || *it != v) return 0;
    return grp_mult_[static_cast<std::size_t>(it - grp_nbr_.begin())];
}

std::string MultiGraph::to_text() const {
    std::ostringstream os;
    os << n_ << ' ' << edges_.size() << '\n';
    for (const auto& [u, v] : edges_) os << u << ' ' << v << '\n';
    return os.str();
}

MultiGraph MultiGraph::from_text(std::istream& in) {
    std::size_t n = 0, m = 0;
    if (!(in >> n >> m)) throw std::runtime_error("multigraph: bad header");
    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        Vertex u, v;
        if (!(in >> u >> v)) throw std::runtime_error("multigraph: truncated edge list");
        edges.emplace_back(u, v);
    }
    return MultiGraph(n, std::move(edges));
}

MultiGraph MultiGraph::simplified() const {
    std::vector<std::pair<Vertex, Vertex>> kept;
    kept.reserve(edges_.size());
    for (const auto& e : edges_)
        if (e.first != e.second && (kept.empty() || kept.back() != e)) kept.push_back(e);
    return MultiGraph(n_, std::move(kept));
}

MultiGraph::Stats MultiGraph::stats() const {
    Stats s;
    s.edge_count = edges_.size();
    for (std::size_t v = 0; v < n_; ++v) {
        s.self_loops += loops_[v];
        std::uint32_t d = degree(static_cast<Vertex>(v));
        s.degree_histogram[d]++;
        s.max_degree = std::max(s.max_degree, d);
    }
    for (std::size_t v = 0; v < n_; ++v) {
        for (std::uint32_t i = grp_ptr_[v]; i < grp_ptr_[v + 1]; ++i) {
            if (grp_nbr_[i] > v) {
                std::uint64_t m = grp_mult_[i];
                s.parallel_pairs += m * (m - 1) / 2;
            }
        }
    }
    return s;
}

}  // namespace thcp
