#pragma once
// Permutation-parity machinery on the even vertices of Q_d: pair
// permutations, the factorization sign, 4-cycle switches, the
// direction-respecting property, and switch-sequence derivation.

#include <cstdint>
#include <vector>

#include "cubefact/matching.hpp"

namespace cubefact {

// Even vertices of Q_d in increasing order; index = rank.
std::vector<Vertex> even_vertices(int d);

struct EvenPermutationTable {
    int d = 0;
    std::vector<std::uint32_t> map;  // rank -> rank over the 2^(d-1) even vertices

    std::size_t size() const { return map.size(); }
    void validate() const;  // bijection check
};

// The permutation x -> N(M(x)) on even vertices (ranked by vertex id).
// Identity when m == n.
EvenPermutationTable pair_permutation(const PerfectMatching& m, const PerfectMatching& n);

// outer ∘ inner.
EvenPermutationTable compose(const EvenPermutationTable& outer, const EvenPermutationTable& inner);

// (-1)^(size - number_of_cycles).
int permutation_sign(const EvenPermutationTable& p);

// Product of pair-permutation signs over all unordered factor pairs.
int factorization_sign(const Factorization& f);

// The atomic rewiring of two factors along a 4-cycle
// {anchor, anchor^A, anchor^B, anchor^A^B} with A = 2^(dir_a-1),
// B = 2^(dir_b-1). Factor s holds the two dir_a edges of the square, factor t
// the two dir_b edges; the switch trades them.
struct SwitchMove {
    Vertex anchor = 0;  // canonical: the smaller of the square's two even corners
    int dir_a = 0;      // dir_a < dir_b
    int dir_b = 0;
    int s = 0;          // 1-indexed factor holding the dir_a edge pair
    int t = 0;          // 1-indexed factor holding the dir_b edge pair

    bool operator==(const SwitchMove&) const = default;
};

// Complete enumeration of switchable squares, one canonical move per square,
// ordered by (dir_a, dir_b, anchor).
std::vector<SwitchMove> find_switchable_squares(const Factorization& f);

// Throws NotSwitchableError unless the move matches the factorization.
Factorization apply_switch(const Factorization& f, const SwitchMove& move);
void apply_switch_in_place(Factorization& f, const SwitchMove& move);

Factorization replay_switches(Factorization f, const std::vector<SwitchMove>& moves);

// First k factors use only directions <= k, the rest only directions > k.
bool is_direction_respecting(const Factorization& f, int k);

// A switch sequence turning the directional factorization of Q_d into f,
// derived per subcube by BFS over the (tiny) ordered-factorization space of
// each block. Requires f direction respecting at split k with k <= 3 and
// d-k <= 3.
std::vector<SwitchMove> derive_switch_sequence(const Factorization& f, int k);

}  // namespace cubefact
