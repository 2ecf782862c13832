#pragma once
// The semi-perfect factorization constructions: Hamilton-pair decompositions
// obtained by splitting directed Hamilton decompositions, the general (k,l)
// product construction, the k=3 variant built on directional Q_3 matchings,
// the stored K_{3,1} certificate for Q_4, and the dispatcher.

#include <optional>

#include "cubefact/certificates.hpp"
#include "cubefact/decomposition.hpp"
#include "cubefact/matching.hpp"

namespace cubefact {

// Obtains a directed Hamilton decomposition (certificate cache first, then
// backtracking search) and splits it. d = 1 yields the degenerate pair with
// A_1 = B_1 the single edge; d = 3 throws UnsupportedDimensionError because
// no directed Hamilton decomposition of Q_3 exists.
HamiltonPairDecomposition hamilton_pair_decomposition(int d,
                                                      const CertificateCache* cache = nullptr);

// The general case: k Hamilton-pair factors acting in directions 1..k and l
// factors in directions k+1..k+l; every cross pair is a Hamilton cycle.
// Preconditions: k,l >= 1, neither equal to 3, not both 1.
Factorization construct_general(int k, int l, const CertificateCache* cache = nullptr);

// The k=3 case for l not 1 or 3: three factors built from directional Q_3
// matchings (cyclically shifted per copy) followed by l Hamilton-pair
// factors; factor order N_1,N_2,N_3,M_1..M_l so the split is k=3.
Factorization construct_k3(int l, const CertificateCache* cache = nullptr);

// A stored Q_4 factorization whose perfection graph is K_{3,1}, factor order
// normalized to (part of size 3, part of size 1).
Factorization construct_31();

// Dispatcher over all (k,l) with k,l >= 1 and (k,l) != (3,3); the first part
// of the resulting perfection graph always has size k. Throws
// OpenProblemError for (3,3).
Factorization construct_semi_perfect(int k, int l, const CertificateCache* cache = nullptr);

}  // namespace cubefact
