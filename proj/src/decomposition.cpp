#include "cubefact/decomposition.hpp"

#include <string>

namespace cubefact {

void DirectedHamiltonDecomposition::validate() const {
    check_dimension(d);
    const Vertex n = vertex_count(d);
    if (static_cast<int>(cycles.size()) != d) {
        throw PreconditionError("expected " + std::to_string(d) + " cycles, got " +
                                std::to_string(cycles.size()));
    }
    // arc (v, dir) used flags, indexed v*d + dir-1
    std::vector<char> arc_used(static_cast<std::size_t>(n) * d, 0);
    for (const auto& cycle : cycles) {
        if (cycle.size() != n) throw PreconditionError("cycle does not visit every vertex once");
        std::vector<char> seen(n, 0);
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            const Vertex u = cycle[i];
            const Vertex w = cycle[(i + 1) % cycle.size()];
            check_vertex(u, d);
            if (seen[u]) throw PreconditionError("cycle revisits vertex " + std::to_string(u));
            seen[u] = 1;
            const int dir = edge_direction(u, w);  // throws if not an arc
            auto& used = arc_used[static_cast<std::size_t>(u) * d + dir - 1];
            if (used) {
                throw PreconditionError("arc out of vertex " + std::to_string(u) +
                                        " in direction " + std::to_string(dir) + " reused");
            }
            used = 1;
        }
    }
    // d cycles of n arcs each with no reuse cover all d*2^d arcs.
}

void HamiltonPairDecomposition::validate() const {
    check_dimension(d);
    Factorization a{d, a_side};
    Factorization b{d, b_side};
    a.validate();
    b.validate();
    if (d == 1) {
        if (!degenerate || a_side != b_side) {
            throw PreconditionError("dimension-1 decomposition must be the degenerate pair");
        }
        return;
    }
    if (degenerate) throw PreconditionError("degenerate flag is only valid at dimension 1");
    for (int i = 0; i < d; ++i) {
        if (!is_hamilton_pair(a_side[i], b_side[i])) {
            throw PreconditionError("A_" + std::to_string(i + 1) + " ∪ B_" + std::to_string(i + 1) +
                                    " is not a Hamilton cycle");
        }
    }
}

HamiltonPairDecomposition split_directed_decomposition(const DirectedHamiltonDecomposition& h) {
    h.validate();
    if (h.d < 2) throw PreconditionError("splitting requires dimension >= 2");
    const Vertex n = vertex_count(h.d);
    HamiltonPairDecomposition out{h.d, false, {}, {}};
    for (const auto& cycle : h.cycles) {
        PerfectMatching a{h.d, std::vector<Vertex>(n)};
        PerfectMatching b{h.d, std::vector<Vertex>(n)};
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            const Vertex u = cycle[i];
            const Vertex w = cycle[(i + 1) % cycle.size()];
            auto& side = is_even_vertex(u) ? a : b;
            side.partner[u] = w;
            side.partner[w] = u;
        }
        out.a_side.push_back(std::move(a));
        out.b_side.push_back(std::move(b));
    }
    out.validate();
    return out;
}

}  // namespace cubefact
