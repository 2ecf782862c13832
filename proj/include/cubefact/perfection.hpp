#pragma once
// The perfection graph G[M] of a 1-factorization: factors as vertices, edges
// exactly the Hamilton-forming pairs. Classification helpers: bipartiteness
// with certificates and complete-bipartite recognition.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubefact/matching.hpp"

namespace cubefact {

struct PerfectionGraph {
    int n = 0;
    std::vector<std::uint32_t> adj;  // bitmask rows; adj[i] bit j set iff i~j

    bool adjacent(int i, int j) const { return (adj[i] >> j) & 1u; }
    int edge_count() const;
    int degree(int i) const;
    std::vector<int> degree_sequence() const;  // sorted ascending
};

// adjacency[i][j] = is_hamilton_pair(F_i, F_j). Pair checks may be spread
// over `threads` workers; the result is identical to sequential evaluation.
PerfectionGraph perfection_graph(const Factorization& f, int threads = 1);

struct BipartiteCertificate {
    bool bipartite = false;
    std::vector<int> coloring;   // size n, entries 0/1; valid iff bipartite
    std::vector<int> odd_cycle;  // an odd closed cycle (vertex list) iff not
};

BipartiteCertificate is_bipartite(const PerfectionGraph& g);

struct BipartitionCheck {
    bool ok = false;
    std::vector<int> part_a;  // size k when ok
    std::vector<int> part_b;  // size l when ok
    std::string reason;       // set when !ok
    std::optional<std::pair<int, int>> missing_cross_edge;
    std::optional<std::pair<int, int>> unexpected_edge;
};

// Exact K_{k,l} recognition with a witnessing partition. In a complete
// bipartite graph two vertices share a part iff they are non-adjacent, so the
// candidate partition is forced by vertex 0 and then verified edge by edge.
BipartitionCheck is_complete_bipartite(const PerfectionGraph& g, int k, int l);

// Undirected DOT with nodes labelled M1..Mn.
std::string to_dot(const PerfectionGraph& g);

}  // namespace cubefact
