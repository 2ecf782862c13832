#pragma once
// Perfect matchings and 1-factorizations of Q_d stored as partner tables,
// plus the cycle structure of pairwise matching unions.

#include <cstdint>
#include <utility>
#include <vector>

#include "cubefact/cube.hpp"

namespace cubefact {

struct PerfectMatching {
    int d = 0;
    std::vector<Vertex> partner;  // length 2^d; v and partner[v] differ in one bit

    Vertex operator()(Vertex v) const { return partner[v]; }

    // Throws InvalidMatchingError unless the table is a fixed-point-free
    // involution moving every vertex along exactly one coordinate.
    void validate() const;

    // Edges as (min endpoint, max endpoint), sorted by min endpoint.
    std::vector<std::pair<Vertex, Vertex>> edges() const;

    bool operator==(const PerfectMatching&) const = default;
};

// D_i: all edges in direction i.
PerfectMatching directional_matching(int d, int dir);

struct Factorization {
    int d = 0;
    std::vector<PerfectMatching> factors;

    int size() const { return static_cast<int>(factors.size()); }

    // Exactly d factors, each a valid matching, pairwise edge-disjoint and
    // jointly covering every edge of Q_d. Throws InvalidFactorizationError.
    void validate() const;

    bool operator==(const Factorization&) const = default;
};

// {D_1, ..., D_d}.
Factorization directional_factorization(int d);

struct CycleStructure {
    std::vector<int> lengths;                     // vertex counts, sorted ascending
    std::vector<std::vector<Vertex>> components;  // one vertex sequence per cycle

    int cycle_count() const { return static_cast<int>(lengths.size()); }
    int longest() const { return lengths.empty() ? 0 : lengths.back(); }
};

// Decompose M ∪ N into vertex-disjoint cycles by alternately following M and
// N. Throws SharedEdgeError if the matchings have a common edge and
// DimensionMismatchError if they live in different cubes.
CycleStructure union_cycles(const PerfectMatching& m, const PerfectMatching& n);

// True iff union_cycles(m, n) is a single cycle through all 2^d vertices.
bool is_hamilton_pair(const PerfectMatching& m, const PerfectMatching& n);

// Extract the Q_k matching induced on the copy with the given high bits.
// Throws EscapingEdgeError if any matched pair leaves the subcube.
PerfectMatching restrict_to_subcube(const PerfectMatching& m, Vertex fixed_high, int k);

// Extract the Q_{d-k} matching induced on the copy with the given low bits.
PerfectMatching restrict_to_high_subcube(const PerfectMatching& m, Vertex fixed_low, int k);

// Build a Q_d matching acting only in directions 1..k from one Q_k matching
// per copy; parts[h] is used on the copy with high bits h.
PerfectMatching assemble_low_block(int d, int k, const std::vector<PerfectMatching>& parts);

// Build a Q_d matching acting only in directions k+1..d from one Q_{d-k}
// matching per copy; parts[u] is used on the copy with low bits u.
PerfectMatching assemble_high_block(int d, int k, const std::vector<PerfectMatching>& parts);

// Relabel coordinate directions: perm[i-1] is the new direction of old
// direction i. Factor order is unchanged.
PerfectMatching relabel_directions(const PerfectMatching& m, const std::vector<int>& perm);
Factorization relabel_directions(const Factorization& f, const std::vector<int>& perm);

// FNV-1a over the partner tables; used for dedup keys and digests.
std::uint64_t factorization_key(const Factorization& f);

}  // namespace cubefact
