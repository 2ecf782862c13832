#include "cubefact/perfection.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <sstream>
#include <thread>

namespace cubefact {

int PerfectionGraph::edge_count() const {
    int total = 0;
    for (const auto row : adj) total += std::popcount(row);
    return total / 2;
}

int PerfectionGraph::degree(int i) const { return std::popcount(adj[i]); }

std::vector<int> PerfectionGraph::degree_sequence() const {
    std::vector<int> degs(n);
    for (int i = 0; i < n; ++i) degs[i] = degree(i);
    std::sort(degs.begin(), degs.end());
    return degs;
}

PerfectionGraph perfection_graph(const Factorization& f, int threads) {
    const int n = f.size();
    PerfectionGraph g{n, std::vector<std::uint32_t>(n, 0)};
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

    std::vector<char> hamilton(pairs.size(), 0);
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t p = begin; p < end; ++p) {
            hamilton[p] = is_hamilton_pair(f.factors[pairs[p].first], f.factors[pairs[p].second]);
        }
    };
    if (threads <= 1 || pairs.size() < 2) {
        work(0, pairs.size());
    } else {
        const std::size_t workers = std::min<std::size_t>(threads, pairs.size());
        std::vector<std::thread> pool;
        const std::size_t chunk = (pairs.size() + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(pairs.size(), begin + chunk);
            if (begin < end) pool.emplace_back(work, begin, end);
        }
        for (auto& t : pool) t.join();
    }
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        if (hamilton[p]) {
            g.adj[pairs[p].first] |= 1u << pairs[p].second;
            g.adj[pairs[p].second] |= 1u << pairs[p].first;
        }
    }
    return g;
}

BipartiteCertificate is_bipartite(const PerfectionGraph& g) {
    BipartiteCertificate cert;
    cert.coloring.assign(g.n, -1);
    std::vector<int> parent(g.n, -1);
    std::vector<int> depth(g.n, 0);

    for (int root = 0; root < g.n; ++root) {
        if (cert.coloring[root] != -1) continue;
        cert.coloring[root] = 0;
        std::deque<int> queue{root};
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            for (int v = 0; v < g.n; ++v) {
                if (!g.adjacent(u, v)) continue;
                if (cert.coloring[v] == -1) {
                    cert.coloring[v] = 1 - cert.coloring[u];
                    parent[v] = u;
                    depth[v] = depth[u] + 1;
                    queue.push_back(v);
                } else if (cert.coloring[v] == cert.coloring[u]) {
                    // Conflict edge closes an odd cycle through the BFS tree.
                    std::vector<int> up_u{u}, up_v{v};
                    int a = u, b = v;
                    while (depth[a] > depth[b]) up_u.push_back(a = parent[a]);
                    while (depth[b] > depth[a]) up_v.push_back(b = parent[b]);
                    while (a != b) {
                        up_u.push_back(a = parent[a]);
                        up_v.push_back(b = parent[b]);
                    }
                    cert.odd_cycle = up_u;  // u .. lca
                    for (auto it = up_v.rbegin() + 1; it != up_v.rend(); ++it) {
                        cert.odd_cycle.push_back(*it);  // lca-child .. v
                    }
                    cert.bipartite = false;
                    return cert;
                }
            }
        }
    }
    cert.bipartite = true;
    return cert;
}

BipartitionCheck is_complete_bipartite(const PerfectionGraph& g, int k, int l) {
    if (k + l != g.n) {
        throw PreconditionError("part sizes " + std::to_string(k) + "+" + std::to_string(l) +
                                " do not sum to the vertex count " + std::to_string(g.n));
    }
    if (k < 1 || l < 1) throw PreconditionError("part sizes must be positive");

    BipartitionCheck check;
    std::vector<int> part_of_0{0}, other;
    for (int v = 1; v < g.n; ++v) {
        (g.adjacent(0, v) ? other : part_of_0).push_back(v);
    }
    auto sized_ok = [&](const std::vector<int>& a, const std::vector<int>& b) {
        return static_cast<int>(a.size()) == k && static_cast<int>(b.size()) == l;
    };
    std::vector<int> a, b;
    if (sized_ok(part_of_0, other)) {
        a = part_of_0;
        b = other;
    } else if (sized_ok(other, part_of_0)) {
        a = other;
        b = part_of_0;
    } else {
        check.reason = "partition forced by vertex M1 has part sizes (" +
                       std::to_string(part_of_0.size()) + "," + std::to_string(other.size()) +
                       "), expected (" + std::to_string(k) + "," + std::to_string(l) + ")";
        if (other.empty() && g.n > 1) {
            check.missing_cross_edge = std::make_pair(0, part_of_0[1]);
            check.reason += "; no pair involving M1 is a Hamilton pair";
        }
        return check;
    }

    std::uint32_t mask_a = 0;
    for (int v : a) mask_a |= 1u << v;
    for (int u = 0; u < g.n; ++u) {
        const bool in_a = (mask_a >> u) & 1u;
        for (int v = u + 1; v < g.n; ++v) {
            const bool v_in_a = (mask_a >> v) & 1u;
            const bool cross = in_a != v_in_a;
            if (cross && !g.adjacent(u, v)) {
                check.missing_cross_edge = std::make_pair(u, v);
                check.reason = "cross pair (M" + std::to_string(u + 1) + ",M" +
                               std::to_string(v + 1) + ") is not a Hamilton pair";
                return check;
            }
            if (!cross && g.adjacent(u, v)) {
                check.unexpected_edge = std::make_pair(u, v);
                check.reason = "within-part pair (M" + std::to_string(u + 1) + ",M" +
                               std::to_string(v + 1) + ") is a Hamilton pair";
                return check;
            }
        }
    }
    check.ok = true;
    check.part_a = std::move(a);
    check.part_b = std::move(b);
    return check;
}

std::string to_dot(const PerfectionGraph& g) {
    std::ostringstream out;
    out << "graph perfection {\n";
    for (int i = 0; i < g.n; ++i) out << "  M" << (i + 1) << ";\n";
    for (int i = 0; i < g.n; ++i) {
        for (int j = i + 1; j < g.n; ++j) {
            if (g.adjacent(i, j)) out << "  M" << (i + 1) << " -- M" << (j + 1) << ";\n";
        }
    }
    out << "}\n";
    return out.str();
}

}  // namespace cubefact
