#include "cubefact/sign_switch.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <string>
#include <utility>

namespace cubefact {

std::vector<Vertex> even_vertices(int d) {
    check_dimension(d);
    std::vector<Vertex> out;
    out.reserve(vertex_count(d) / 2);
    for (Vertex v = 0; v < vertex_count(d); ++v) {
        if (is_even_vertex(v)) out.push_back(v);
    }
    return out;
}

void EvenPermutationTable::validate() const {
    std::vector<char> seen(map.size(), 0);
    for (const auto r : map) {
        if (r >= map.size() || seen[r]) throw PreconditionError("even permutation table is not a bijection");
        seen[r] = 1;
    }
}

namespace {

// rank[v] for even v; undefined entries stay 0 and are never read for valid
// matchings because partners always flip parity.
std::vector<std::uint32_t> even_rank_table(int d) {
    std::vector<std::uint32_t> rank(vertex_count(d), 0);
    std::uint32_t r = 0;
    for (Vertex v = 0; v < vertex_count(d); ++v) {
        if (is_even_vertex(v)) rank[v] = r++;
    }
    return rank;
}

}  // namespace

EvenPermutationTable pair_permutation(const PerfectMatching& m, const PerfectMatching& n) {
    if (m.d != n.d) throw DimensionMismatchError("matchings live in different cubes");
    const auto evens = even_vertices(m.d);
    const auto rank = even_rank_table(m.d);
    EvenPermutationTable table{m.d, std::vector<std::uint32_t>(evens.size())};
    for (std::size_t r = 0; r < evens.size(); ++r) {
        table.map[r] = rank[n.partner[m.partner[evens[r]]]];
    }
    return table;
}

EvenPermutationTable compose(const EvenPermutationTable& outer, const EvenPermutationTable& inner) {
    if (outer.size() != inner.size()) throw DimensionMismatchError("permutation sizes differ");
    EvenPermutationTable out{outer.d, std::vector<std::uint32_t>(outer.size())};
    for (std::size_t r = 0; r < inner.size(); ++r) out.map[r] = outer.map[inner.map[r]];
    return out;
}

int permutation_sign(const EvenPermutationTable& p) {
    std::vector<char> visited(p.size(), 0);
    std::size_t cycles = 0;
    for (std::size_t start = 0; start < p.size(); ++start) {
        if (visited[start]) continue;
        ++cycles;
        for (std::size_t v = start; !visited[v]; v = p.map[v]) visited[v] = 1;
    }
    return ((p.size() - cycles) % 2 == 0) ? 1 : -1;
}

int factorization_sign(const Factorization& f) {
    int sign = 1;
    for (int i = 0; i < f.size(); ++i) {
        for (int j = i + 1; j < f.size(); ++j) {
            sign *= permutation_sign(pair_permutation(f.factors[i], f.factors[j]));
        }
    }
    return sign;
}

namespace {

int factor_of_edge(const Factorization& f, Vertex u, Vertex w) {
    for (int i = 0; i < f.size(); ++i) {
        if (f.factors[i].partner[u] == w) return i + 1;
    }
    return 0;
}

}  // namespace

std::vector<SwitchMove> find_switchable_squares(const Factorization& f) {
    const int d = f.d;
    const Vertex n = vertex_count(d);
    std::vector<SwitchMove> moves;
    for (int a = 1; a <= d; ++a) {
        for (int b = a + 1; b <= d; ++b) {
            const Vertex ma = direction_mask(a);
            const Vertex mb = direction_mask(b);
            for (Vertex x = 0; x < n; ++x) {
                if (x & (ma | mb)) continue;  // one base corner per square
                const int s = factor_of_edge(f, x, x ^ ma);
                if (s == 0 || f.factors[s - 1].partner[x ^ mb] != (x ^ ma ^ mb)) continue;
                const int t = factor_of_edge(f, x, x ^ mb);
                if (t == 0 || f.factors[t - 1].partner[x ^ ma] != (x ^ ma ^ mb)) continue;
                const Vertex anchor = is_even_vertex(x) ? x : (x ^ ma);
                moves.push_back(SwitchMove{anchor, a, b, s, t});
            }
        }
    }
    return moves;
}

void apply_switch_in_place(Factorization& f, const SwitchMove& move) {
    const int d = f.d;
    if (move.dir_a < 1 || move.dir_a > d || move.dir_b < 1 || move.dir_b > d ||
        move.dir_a == move.dir_b) {
        throw NotSwitchableError("invalid direction pair");
    }
    if (move.s < 1 || move.s > d || move.t < 1 || move.t > d || move.s == move.t) {
        throw NotSwitchableError("invalid factor pair");
    }
    check_vertex(move.anchor, d);
    if (!is_even_vertex(move.anchor)) throw NotSwitchableError("anchor must be an even vertex");

    const Vertex ma = direction_mask(move.dir_a);
    const Vertex mb = direction_mask(move.dir_b);
    const Vertex x = move.anchor;
    auto& fs = f.factors[move.s - 1];
    auto& ft = f.factors[move.t - 1];
    // The square must alternate between factors s and t; either factor may
    // hold the dir_a pair, so a move is its own inverse.
    auto holds_pair = [&](const PerfectMatching& m, Vertex pair_mask, Vertex other_mask) {
        return m.partner[x] == (x ^ pair_mask) &&
               m.partner[x ^ other_mask] == (x ^ pair_mask ^ other_mask);
    };
    const bool square_ok = (holds_pair(fs, ma, mb) && holds_pair(ft, mb, ma)) ||
                           (holds_pair(fs, mb, ma) && holds_pair(ft, ma, mb));
    if (!square_ok) {
        throw NotSwitchableError("square at anchor " + std::to_string(x) +
                                 " does not alternate between factors " + std::to_string(move.s) +
                                 " and " + std::to_string(move.t));
    }
    for (const Vertex v : {x, x ^ ma, x ^ mb, x ^ ma ^ mb}) {
        std::swap(fs.partner[v], ft.partner[v]);
    }
}

Factorization apply_switch(const Factorization& f, const SwitchMove& move) {
    Factorization out = f;
    apply_switch_in_place(out, move);
    return out;
}

Factorization replay_switches(Factorization f, const std::vector<SwitchMove>& moves) {
    for (const auto& move : moves) apply_switch_in_place(f, move);
    return f;
}

bool is_direction_respecting(const Factorization& f, int k) {
    if (k < 1 || k >= f.d) throw PreconditionError("split must satisfy 1 <= k < d");
    const Vertex low_mask = vertex_count(k) - 1;
    for (int i = 0; i < f.size(); ++i) {
        for (Vertex v = 0; v < vertex_count(f.d); ++v) {
            const Vertex diff = v ^ f.factors[i].partner[v];
            const bool low = (diff & low_mask) != 0;
            if ((i < k) != low) return false;
        }
    }
    return true;
}

namespace {

// Breadth-first exploration of the ordered-factorization space of a block,
// rooted at the directional factorization; switches are the edges. For
// block dimension <= 3 this space is tiny (24 nodes at dimension 3).
struct BlockSpace {
    std::vector<Factorization> nodes;
    std::vector<int> parent;
    std::vector<SwitchMove> via;  // move applied at parent to reach the node
    std::map<std::vector<Vertex>, int> index;

    static std::vector<Vertex> key(const Factorization& f) {
        std::vector<Vertex> k;
        for (const auto& m : f.factors) k.insert(k.end(), m.partner.begin(), m.partner.end());
        return k;
    }

    explicit BlockSpace(int dim) {
        const Factorization root = directional_factorization(dim);
        nodes.push_back(root);
        parent.push_back(-1);
        via.push_back(SwitchMove{});
        index.emplace(key(root), 0);
        for (std::size_t at = 0; at < nodes.size(); ++at) {
            const Factorization current = nodes[at];
            for (const auto& move : find_switchable_squares(current)) {
                Factorization next = apply_switch(current, move);
                auto k = key(next);
                if (index.emplace(std::move(k), static_cast<int>(nodes.size())).second) {
                    nodes.push_back(std::move(next));
                    parent.push_back(static_cast<int>(at));
                    via.push_back(move);
                }
            }
        }
    }

    // Moves leading from the directional root to the target.
    std::vector<SwitchMove> path_to(const Factorization& target) const {
        const auto it = index.find(key(target));
        if (it == index.end()) {
            throw NotDirectionRespectingError(
                "block factorization not reachable from the directional one");
        }
        std::vector<SwitchMove> moves;
        for (int at = it->second; parent[at] != -1; at = parent[at]) moves.push_back(via[at]);
        std::reverse(moves.begin(), moves.end());
        return moves;
    }
};

Vertex canonical_anchor(Vertex corner, Vertex ma, Vertex mb) {
    if (is_even_vertex(corner)) return std::min(corner, corner ^ ma ^ mb);
    return std::min(corner ^ ma, corner ^ mb);
}

}  // namespace

std::vector<SwitchMove> derive_switch_sequence(const Factorization& f, int k) {
    f.validate();
    const int d = f.d;
    const int l = d - k;
    if (!is_direction_respecting(f, k)) {
        throw NotDirectionRespectingError("factorization is not direction respecting at split " +
                                          std::to_string(k));
    }
    if (k > 3 || l > 3) {
        throw BlockTooLargeError("per-subcube derivation requires both blocks of dimension <= 3");
    }

    std::vector<SwitchMove> sequence;

    if (k >= 2) {
        const BlockSpace space(k);
        for (Vertex high = 0; high < vertex_count(l); ++high) {
            Factorization target{k, {}};
            for (int i = 0; i < k; ++i) {
                target.factors.push_back(restrict_to_subcube(f.factors[i], high, k));
            }
            for (const auto& local : space.path_to(target)) {
                const Vertex corner = compose_vertex(local.anchor, high, k);
                sequence.push_back(SwitchMove{
                    canonical_anchor(corner, direction_mask(local.dir_a),
                                     direction_mask(local.dir_b)),
                    local.dir_a, local.dir_b, local.s, local.t});
            }
        }
    }
    if (l >= 2) {
        const BlockSpace space(l);
        for (Vertex low = 0; low < vertex_count(k); ++low) {
            Factorization target{l, {}};
            for (int j = 0; j < l; ++j) {
                target.factors.push_back(restrict_to_high_subcube(f.factors[k + j], low, k));
            }
            for (const auto& local : space.path_to(target)) {
                const Vertex corner = compose_vertex(low, local.anchor, k);
                sequence.push_back(SwitchMove{
                    canonical_anchor(corner, direction_mask(local.dir_a + k),
                                     direction_mask(local.dir_b + k)),
                    local.dir_a + k, local.dir_b + k, local.s + k, local.t + k});
            }
        }
    }
    return sequence;
}

}  // namespace cubefact
