#include "cubefact/matching.hpp"

#include <algorithm>
#include <string>

namespace cubefact {

void PerfectMatching::validate() const {
    check_dimension(d);
    const Vertex n = vertex_count(d);
    if (partner.size() != n) {
        throw InvalidMatchingError("partner table has length " + std::to_string(partner.size()) +
                                   ", expected " + std::to_string(n));
    }
    for (Vertex v = 0; v < n; ++v) {
        const Vertex w = partner[v];
        if (w >= n) throw InvalidMatchingError("partner[" + std::to_string(v) + "] out of range");
        if (w == v) throw InvalidMatchingError("fixed point at vertex " + std::to_string(v));
        if (!std::has_single_bit(v ^ w)) {
            throw InvalidMatchingError("pair (" + std::to_string(v) + "," + std::to_string(w) +
                                       ") is not a hypercube edge");
        }
        if (partner[w] != v) {
            throw InvalidMatchingError("not an involution at vertex " + std::to_string(v));
        }
    }
}

std::vector<std::pair<Vertex, Vertex>> PerfectMatching::edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(partner.size() / 2);
    for (Vertex v = 0; v < partner.size(); ++v) {
        if (v < partner[v]) out.emplace_back(v, partner[v]);
    }
    return out;  // ascending in the smaller endpoint by construction
}

PerfectMatching directional_matching(int d, int dir) {
    check_dimension(d);
    check_direction(dir, d);
    const Vertex n = vertex_count(d);
    PerfectMatching m{d, std::vector<Vertex>(n)};
    const Vertex mask = direction_mask(dir);
    for (Vertex v = 0; v < n; ++v) m.partner[v] = v ^ mask;
    return m;
}

void Factorization::validate() const {
    check_dimension(d);
    if (static_cast<int>(factors.size()) != d) {
        throw InvalidFactorizationError("expected " + std::to_string(d) + " factors, got " +
                                        std::to_string(factors.size()));
    }
    const Vertex n = vertex_count(d);
    const Vertex full = n - 1;
    for (const auto& m : factors) {
        if (m.d != d) throw InvalidFactorizationError("factor dimension mismatch");
        m.validate();
    }
    // Edge-disjointness and coverage in one pass: at each vertex the d
    // factors must use all d directions exactly once.
    for (Vertex v = 0; v < n; ++v) {
        Vertex seen = 0;
        for (const auto& m : factors) seen |= v ^ m.partner[v];
        if (seen != full) {
            throw InvalidFactorizationError("directions at vertex " + std::to_string(v) +
                                            " are not a permutation of 1..d");
        }
    }
}

Factorization directional_factorization(int d) {
    check_dimension(d);
    Factorization f{d, {}};
    f.factors.reserve(d);
    for (int i = 1; i <= d; ++i) f.factors.push_back(directional_matching(d, i));
    return f;
}

CycleStructure union_cycles(const PerfectMatching& m, const PerfectMatching& n) {
    if (m.d != n.d) throw DimensionMismatchError("matchings live in different cubes");
    const Vertex count = vertex_count(m.d);
    for (Vertex v = 0; v < count; ++v) {
        if (m.partner[v] == n.partner[v]) {
            throw SharedEdgeError("matchings share the edge at vertex " + std::to_string(v));
        }
    }
    CycleStructure cs;
    std::vector<char> visited(count, 0);
    for (Vertex start = 0; start < count; ++start) {
        if (visited[start]) continue;
        std::vector<Vertex> cycle;
        Vertex v = start;
        // Alternate M, N; the walk returns to start after an even number of
        // steps because both matchings flip parity.
        do {
            cycle.push_back(v);
            visited[v] = 1;
            const Vertex w = m.partner[v];
            cycle.push_back(w);
            visited[w] = 1;
            v = n.partner[w];
        } while (v != start);
        cs.lengths.push_back(static_cast<int>(cycle.size()));
        cs.components.push_back(std::move(cycle));
    }
    std::sort(cs.lengths.begin(), cs.lengths.end());
    return cs;
}

bool is_hamilton_pair(const PerfectMatching& m, const PerfectMatching& n) {
    if (m.d != n.d) throw DimensionMismatchError("matchings live in different cubes");
    const Vertex count = vertex_count(m.d);
    for (Vertex v = 0; v < count; ++v) {
        if (m.partner[v] == n.partner[v]) {
            throw SharedEdgeError("matchings share the edge at vertex " + std::to_string(v));
        }
    }
    // Walk the cycle through vertex 0 and check it has full length.
    Vertex v = 0;
    Vertex steps = 0;
    do {
        v = n.partner[m.partner[v]];
        steps += 2;
    } while (v != 0);
    return steps == count;
}

PerfectMatching restrict_to_subcube(const PerfectMatching& m, Vertex fixed_high, int k) {
    check_dimension(k);
    if (k >= m.d) throw PreconditionError("subcube dimension must be below the host dimension");
    const Vertex sub = vertex_count(k);
    PerfectMatching out{k, std::vector<Vertex>(sub)};
    for (Vertex low = 0; low < sub; ++low) {
        const Vertex v = compose_vertex(low, fixed_high, k);
        const Vertex w = m.partner[v];
        if (high_part(w, k) != fixed_high) {
            throw EscapingEdgeError("matched pair leaves the subcube at vertex " +
                                    std::to_string(v));
        }
        out.partner[low] = low_part(w, k);
    }
    return out;
}

PerfectMatching restrict_to_high_subcube(const PerfectMatching& m, Vertex fixed_low, int k) {
    const int l = m.d - k;
    check_dimension(l);
    const Vertex sub = vertex_count(l);
    PerfectMatching out{l, std::vector<Vertex>(sub)};
    for (Vertex high = 0; high < sub; ++high) {
        const Vertex v = compose_vertex(fixed_low, high, k);
        const Vertex w = m.partner[v];
        if (low_part(w, k) != fixed_low) {
            throw EscapingEdgeError("matched pair leaves the subcube at vertex " +
                                    std::to_string(v));
        }
        out.partner[high] = high_part(w, k);
    }
    return out;
}

PerfectMatching assemble_low_block(int d, int k, const std::vector<PerfectMatching>& parts) {
    check_dimension(d);
    check_dimension(k);
    if (k >= d) throw PreconditionError("block dimension must be below the host dimension");
    const Vertex copies = vertex_count(d - k);
    if (parts.size() != copies) {
        throw PreconditionError("expected " + std::to_string(copies) + " copy matchings, got " +
                                std::to_string(parts.size()));
    }
    PerfectMatching out{d, std::vector<Vertex>(vertex_count(d))};
    const Vertex sub = vertex_count(k);
    for (Vertex high = 0; high < copies; ++high) {
        const auto& part = parts[high];
        if (part.d != k) throw DimensionMismatchError("copy matching has wrong dimension");
        for (Vertex low = 0; low < sub; ++low) {
            out.partner[compose_vertex(low, high, k)] =
                compose_vertex(part.partner[low], high, k);
        }
    }
    return out;
}

PerfectMatching assemble_high_block(int d, int k, const std::vector<PerfectMatching>& parts) {
    check_dimension(d);
    check_dimension(k);
    if (k >= d) throw PreconditionError("block dimension must be below the host dimension");
    const int l = d - k;
    const Vertex copies = vertex_count(k);
    if (parts.size() != copies) {
        throw PreconditionError("expected " + std::to_string(copies) + " copy matchings, got " +
                                std::to_string(parts.size()));
    }
    PerfectMatching out{d, std::vector<Vertex>(vertex_count(d))};
    const Vertex sub = vertex_count(l);
    for (Vertex low = 0; low < copies; ++low) {
        const auto& part = parts[low];
        if (part.d != l) throw DimensionMismatchError("copy matching has wrong dimension");
        for (Vertex high = 0; high < sub; ++high) {
            out.partner[compose_vertex(low, high, k)] =
                compose_vertex(low, part.partner[high], k);
        }
    }
    return out;
}

namespace {

Vertex apply_bit_permutation(Vertex v, const std::vector<int>& perm) {
    Vertex out = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (v & (Vertex{1} << i)) out |= direction_mask(perm[i]);
    }
    return out;
}

void check_direction_permutation(const std::vector<int>& perm, int d) {
    if (static_cast<int>(perm.size()) != d) {
        throw PreconditionError("direction permutation has wrong length");
    }
    Vertex seen = 0;
    for (int p : perm) {
        check_direction(p, d);
        seen |= direction_mask(p);
    }
    if (seen != vertex_count(d) - 1) throw PreconditionError("direction permutation not a bijection");
}

}  // namespace

PerfectMatching relabel_directions(const PerfectMatching& m, const std::vector<int>& perm) {
    check_direction_permutation(perm, m.d);
    const Vertex n = vertex_count(m.d);
    PerfectMatching out{m.d, std::vector<Vertex>(n)};
    for (Vertex v = 0; v < n; ++v) {
        out.partner[apply_bit_permutation(v, perm)] = apply_bit_permutation(m.partner[v], perm);
    }
    return out;
}

Factorization relabel_directions(const Factorization& f, const std::vector<int>& perm) {
    Factorization out{f.d, {}};
    out.factors.reserve(f.factors.size());
    for (const auto& m : f.factors) out.factors.push_back(relabel_directions(m, perm));
    return out;
}

std::uint64_t factorization_key(const Factorization& f) {
    std::uint64_t h = 14695981039346656037ULL;
    auto mix = [&h](std::uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 1099511628211ULL;
        }
    };
    mix(static_cast<std::uint64_t>(f.d));
    for (const auto& m : f.factors) {
        for (Vertex v : m.partner) mix(v);
    }
    return h;
}

}  // namespace cubefact
