#pragma once
// Directed Hamilton decompositions of the symmetric directed hypercube and
// the paired 1-factorizations obtained by splitting them at the parity
// classes.

#include <vector>

#include "cubefact/matching.hpp"

namespace cubefact {

struct DirectedHamiltonDecomposition {
    int d = 0;
    std::vector<std::vector<Vertex>> cycles;  // d sequences of 2^d vertices, wrap implicit

    // Every cycle visits each vertex once along hypercube arcs; every
    // directed arc of Q_d appears in exactly one cycle.
    void validate() const;
};

struct HamiltonPairDecomposition {
    int d = 0;
    bool degenerate = false;  // d == 1: a_side == b_side, a single edge
    std::vector<PerfectMatching> a_side;
    std::vector<PerfectMatching> b_side;

    // Both sides are factorizations and A_i ∪ B_i is a Hamilton cycle for
    // every i (skipped for the degenerate d == 1 case).
    void validate() const;
};

// A_i = the even-to-odd arcs of cycle i, B_i = the odd-to-even arcs,
// directions dropped.
HamiltonPairDecomposition split_directed_decomposition(const DirectedHamiltonDecomposition& h);

}  // namespace cubefact
