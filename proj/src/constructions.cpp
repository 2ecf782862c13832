#include "cubefact/constructions.hpp"

#include <array>
#include <iostream>
#include <string>

#include "cubefact/search.hpp"

namespace cubefact {

HamiltonPairDecomposition hamilton_pair_decomposition(int d, const CertificateCache* cache) {
    check_dimension(d);
    if (d == 3) {
        throw UnsupportedDimensionError(
            "Q_3 has no directed Hamilton decomposition (certified by exhaustive search)");
    }
    if (d == 1) {
        const PerfectMatching edge{1, {1, 0}};
        return HamiltonPairDecomposition{1, true, {edge}, {edge}};
    }
    std::optional<DirectedHamiltonDecomposition> h;
    if (cache != nullptr) h = cache->load(d);
    if (!h) {
        const auto outcome = search_directed_hamilton_decomposition(d, SearchBudget{});
        if (outcome.status != SearchStatus::found) {
            throw Error("directed Hamilton decomposition search failed for d=" + std::to_string(d));
        }
        h = outcome.witness;
        if (cache != nullptr) {
            try {
                cache->store(*h);
            } catch (const std::exception& e) {
                std::cerr << "warning: could not store certificate: " << e.what() << "\n";
            }
        }
    }
    return split_directed_decomposition(*h);
}

Factorization construct_general(int k, int l, const CertificateCache* cache) {
    if (k < 1 || l < 1) throw PreconditionError("block dimensions must be positive");
    if (k == 3 || l == 3) throw PreconditionError("construct_general requires k,l != 3");
    if (k == 1 && l == 1) throw PreconditionError("(1,1) is handled by the dispatcher");
    const int d = k + l;
    check_dimension(d);

    const auto kb = hamilton_pair_decomposition(k, cache);  // A_i, B_i on Q_k
    const auto lb = hamilton_pair_decomposition(l, cache);  // X_j, Y_j on Q_l

    Factorization f{d, {}};
    f.factors.reserve(d);
    std::vector<PerfectMatching> parts;

    // M_i: A_i on the copy of Q_k over the all-zero high part, B_i elsewhere.
    for (int i = 0; i < k; ++i) {
        parts.clear();
        for (Vertex high = 0; high < vertex_count(l); ++high) {
            parts.push_back(high == 0 ? kb.a_side[i] : kb.b_side[i]);
        }
        f.factors.push_back(assemble_low_block(d, k, parts));
    }
    // N_j: X_j on copies of Q_l over even low parts, Y_j over odd ones.
    for (int j = 0; j < l; ++j) {
        parts.clear();
        for (Vertex low = 0; low < vertex_count(k); ++low) {
            parts.push_back(is_even_vertex(low) ? lb.a_side[j] : lb.b_side[j]);
        }
        f.factors.push_back(assemble_high_block(d, k, parts));
    }
    return f;
}

Factorization construct_k3(int l, const CertificateCache* cache) {
    if (l < 2 || l == 3) throw PreconditionError("construct_k3 requires l >= 2 and l != 3");
    const int d = 3 + l;
    check_dimension(d);

    const auto lb = hamilton_pair_decomposition(l, cache);  // A_i, B_i on Q_l
    const std::array<PerfectMatching, 3> directional{
        directional_matching(3, 1), directional_matching(3, 2), directional_matching(3, 3)};

    Factorization f{d, {}};
    f.factors.reserve(d);
    std::vector<PerfectMatching> parts;

    // N_j: the directional Q_3 matchings, shifted cyclically per copy class:
    // X_j on odd copies, X_{j+1} on even copies != 0, X_{j+2} on the 0 copy.
    for (int j = 0; j < 3; ++j) {
        parts.clear();
        for (Vertex high = 0; high < vertex_count(l); ++high) {
            int shift = 0;
            if (high == 0) {
                shift = 2;
            } else if (is_even_vertex(high)) {
                shift = 1;
            }
            parts.push_back(directional[(j + shift) % 3]);
        }
        f.factors.push_back(assemble_low_block(d, 3, parts));
    }
    // M_i: A_i on the five copies of Q_l whose low part is not a singleton,
    // B_i on the three singleton copies.
    for (int i = 0; i < l; ++i) {
        parts.clear();
        for (Vertex low = 0; low < vertex_count(3); ++low) {
            const bool singleton = std::has_single_bit(low);
            parts.push_back(singleton ? lb.b_side[i] : lb.a_side[i]);
        }
        f.factors.push_back(assemble_high_block(d, 3, parts));
    }
    return f;
}

namespace {

// A Q_4 factorization with perfection graph exactly K_{3,1}, found once by
// the switch-walk search and frozen here; the parts are factors {1,2,3} and
// {4}. Regenerate with:
//   cubefact search factorization --d 4 --target complete-bipartite:3,1
constexpr std::array<std::array<Vertex, 16>, 4> k31_partner_tables = {{
    {4, 3, 6, 1, 0, 13, 2, 15, 10, 11, 8, 9, 14, 5, 12, 7},
    {8, 5, 3, 2, 12, 1, 7, 6, 0, 13, 14, 15, 4, 9, 10, 11},
    {1, 0, 10, 11, 6, 7, 4, 5, 9, 8, 2, 3, 13, 12, 15, 14},
    {2, 9, 0, 7, 5, 4, 14, 3, 12, 1, 11, 10, 8, 15, 6, 13},
}};

}  // namespace

Factorization construct_31() {
    Factorization f{4, {}};
    for (const auto& table : k31_partner_tables) {
        f.factors.push_back(PerfectMatching{4, {table.begin(), table.end()}});
    }
    f.validate();
    return f;
}

Factorization construct_semi_perfect(int k, int l, const CertificateCache* cache) {
    if (k < 1 || l < 1) throw PreconditionError("part sizes must be positive");
    if (k == 3 && l == 3) {
        throw OpenProblemError(
            "whether a 1-factorization of Q_6 with perfection graph K_{3,3} exists is open; "
            "use the search harness to experiment");
    }
    check_dimension(k + l);

    if (k == 1 && l == 1) return directional_factorization(2);

    if ((k == 3 && l == 1) || (k == 1 && l == 3)) {
        Factorization raw = construct_31();  // parts (3, 1)
        if (k == 3) return raw;
        Factorization out{4, {raw.factors[3], raw.factors[0], raw.factors[1], raw.factors[2]}};
        return out;
    }

    if (k == 3) return construct_k3(l, cache);

    if (l == 3) {
        // Build on Q_{3+k} with the 3-part first, then swap the coordinate
        // blocks so the k factors come first and use directions 1..k.
        Factorization raw = construct_k3(k, cache);
        const int d = k + 3;
        std::vector<int> perm(d);
        for (int i = 1; i <= 3; ++i) perm[i - 1] = k + i;
        for (int i = 4; i <= d; ++i) perm[i - 1] = i - 3;
        Factorization relabeled = relabel_directions(raw, perm);
        Factorization out{d, {}};
        for (int i = 0; i < k; ++i) out.factors.push_back(relabeled.factors[3 + i]);
        for (int j = 0; j < 3; ++j) out.factors.push_back(relabeled.factors[j]);
        return out;
    }

    return construct_general(k, l, cache);
}

}  // namespace cubefact
