#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "cubefact/constructions.hpp"
#include "cubefact/search.hpp"
#include "cubefact/sign_switch.hpp"
#include "test_util.hpp"

using namespace cubefact;

namespace {

Factorization random_walk_state(int d, int steps, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Factorization f = directional_factorization(d);
    for (int i = 0; i < steps; ++i) {
        const auto moves = find_switchable_squares(f);
        std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
        apply_switch_in_place(f, moves[pick(rng)]);
    }
    return f;
}

}  // namespace

TEST_CASE("even vertex ranking") {
    const auto evens = even_vertices(3);
    CHECK(evens == std::vector<Vertex>{0, 3, 5, 6});
}

TEST_CASE("pair permutation basics") {
    const auto d1 = directional_matching(3, 1);
    const auto d2 = directional_matching(3, 2);

    const auto id = pair_permutation(d1, d1);
    for (std::uint32_t r = 0; r < id.size(); ++r) CHECK(id.map[r] == r);

    // evens of Q_3 are 0,3,5,6; x -> D2(D1(x)) swaps 0<->3 and 5<->6
    const auto p = pair_permutation(d1, d2);
    CHECK(p.map == std::vector<std::uint32_t>{1, 0, 3, 2});
    CHECK(permutation_sign(p) == 1);

    CHECK_THROWS_AS(pair_permutation(d1, directional_matching(2, 1)), DimensionMismatchError);
}

TEST_CASE("composition law pi_kj . pi_ji = pi_ki") {
    // exhaustive over Q_3 factor triples, on directional and switched states
    for (const std::uint64_t seed : {0ULL, 1ULL, 2ULL}) {
        const Factorization f =
            seed == 0 ? directional_factorization(3) : random_walk_state(3, 40, seed);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                for (int k = 0; k < 3; ++k) {
                    const auto ij = pair_permutation(f.factors[i], f.factors[j]);
                    const auto jk = pair_permutation(f.factors[j], f.factors[k]);
                    const auto ik = pair_permutation(f.factors[i], f.factors[k]);
                    CHECK(compose(jk, ij).map == ik.map);
                }
            }
        }
    }
    // randomized spot checks on Q_4 and Q_5
    for (int d = 4; d <= 5; ++d) {
        const Factorization f = random_walk_state(d, 60, 11 + d);
        std::mt19937_64 rng(99);
        std::uniform_int_distribution<int> pick(0, d - 1);
        for (int trial = 0; trial < 20; ++trial) {
            const int i = pick(rng), j = pick(rng), k = pick(rng);
            const auto ij = pair_permutation(f.factors[i], f.factors[j]);
            const auto jk = pair_permutation(f.factors[j], f.factors[k]);
            const auto ik = pair_permutation(f.factors[i], f.factors[k]);
            CHECK(compose(jk, ij).map == ik.map);
        }
    }
}

TEST_CASE("permutation signs from cycle type") {
    EvenPermutationTable identity{4, {0, 1, 2, 3, 4, 5, 6, 7}};
    CHECK(permutation_sign(identity) == 1);
    EvenPermutationTable eight_cycle{4, {1, 2, 3, 4, 5, 6, 7, 0}};
    CHECK(permutation_sign(eight_cycle) == -1);
    EvenPermutationTable bad{4, {1, 1, 2, 3, 4, 5, 6, 7}};
    CHECK_THROWS_AS(bad.validate(), PreconditionError);
}

TEST_CASE("directional pair permutations have sign (-1)^(2^(d-2))") {
    for (int d = 2; d <= 6; ++d) {
        const int expected = (d == 2) ? -1 : 1;  // 2^(d-2) is odd only at d=2
        for (int i = 1; i <= d; ++i) {
            for (int j = 1; j <= d; ++j) {
                if (i == j) continue;
                const auto p =
                    pair_permutation(directional_matching(d, i), directional_matching(d, j));
                CHECK(permutation_sign(p) == expected);
                // 2^(d-2) transpositions on the even vertices
                std::size_t moved = 0;
                for (std::uint32_t r = 0; r < p.size(); ++r) {
                    if (p.map[r] != r) {
                        ++moved;
                        CHECK(p.map[p.map[r]] == r);
                    }
                }
                CHECK(moved == vertex_count(d) / 4 * 2);
            }
        }
    }
}

TEST_CASE("hamilton pairs have odd permutations") {
    CHECK(permutation_sign(pair_permutation(directional_matching(2, 1),
                                            directional_matching(2, 2))) == -1);
    const auto f = construct_semi_perfect(2, 2);
    for (int i = 0; i < 2; ++i) {
        for (int j = 2; j < 4; ++j) {
            CHECK(permutation_sign(pair_permutation(f.factors[i], f.factors[j])) == -1);
        }
    }
}

TEST_CASE("factorization signs") {
    CHECK(factorization_sign(directional_factorization(2)) == -1);  // single Hamilton pair
    for (int d = 3; d <= 6; ++d) {
        CHECK(factorization_sign(directional_factorization(d)) == 1);
    }
    CHECK(factorization_sign(construct_31()) == -1);
}

TEST_CASE("switchable square enumeration") {
    const auto q2 = find_switchable_squares(directional_factorization(2));
    REQUIRE(q2.size() == 1);
    CHECK(q2[0] == SwitchMove{0, 1, 2, 1, 2});

    // Q_3 directional: each direction pair contributes its two parallel
    // squares; cross-check the count against a closed-walk square oracle.
    const auto q3 = find_switchable_squares(directional_factorization(3));
    CHECK(q3.size() == 6);
    CHECK(testutil::brute_force_squares(3).size() == 6);
    std::set<std::pair<int, int>> seen;
    for (const auto& move : q3) {
        CHECK(move.s == move.dir_a);
        CHECK(move.t == move.dir_b);
        CHECK(is_even_vertex(move.anchor));
        seen.insert({move.dir_a, move.dir_b});
    }
    CHECK(seen == std::set<std::pair<int, int>>{{1, 2}, {1, 3}, {2, 3}});

    // a Hamilton pair union contains no alternating square
    const auto f22 = construct_semi_perfect(2, 2);
    for (const auto& move : find_switchable_squares(f22)) {
        const bool cross = (move.s <= 2) != (move.t <= 2);
        CHECK_FALSE(cross);
    }
}

TEST_CASE("applying switches") {
    const auto q2 = directional_factorization(2);
    const SwitchMove move{0, 1, 2, 1, 2};
    const auto swapped = apply_switch(q2, move);
    CHECK(swapped.factors[0] == q2.factors[1]);
    CHECK(swapped.factors[1] == q2.factors[0]);
    CHECK(apply_switch(swapped, move) == q2);  // involution
    // the (s,t) orientation is interchangeable
    CHECK(apply_switch(q2, SwitchMove{0, 1, 2, 2, 1}) == swapped);

    CHECK_THROWS_AS(apply_switch(q2, SwitchMove{1, 1, 2, 1, 2}), NotSwitchableError);
    const auto q3d = directional_factorization(3);
    CHECK_THROWS_AS(apply_switch(q3d, SwitchMove{0, 1, 2, 1, 3}), NotSwitchableError);
    CHECK_THROWS_AS(apply_switch(q3d, SwitchMove{0, 1, 1, 1, 2}), NotSwitchableError);

    // the two-square sequence swapping D_1 and D_2 in Q_3
    const auto q3 = directional_factorization(3);
    auto f = apply_switch(q3, SwitchMove{0, 1, 2, 1, 2});
    f = apply_switch(f, SwitchMove{5, 1, 2, 1, 2});
    CHECK(f.factors[0] == q3.factors[1]);
    CHECK(f.factors[1] == q3.factors[0]);
    CHECK(f.factors[2] == q3.factors[2]);
}

TEST_CASE("switches preserve validity and sign along random walks") {
    for (int d = 3; d <= 5; ++d) {
        std::mt19937_64 rng(31 * d);
        Factorization f = directional_factorization(d);
        const int expected_sign = factorization_sign(f);
        for (int step = 0; step < 200; ++step) {
            const auto moves = find_switchable_squares(f);
            REQUIRE_FALSE(moves.empty());
            std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
            apply_switch_in_place(f, moves[pick(rng)]);
            if (step % 20 == 0) {
                CHECK_NOTHROW(f.validate());
                CHECK(factorization_sign(f) == expected_sign);
            }
        }
        CHECK_NOTHROW(f.validate());
        CHECK(factorization_sign(f) == expected_sign);
    }
}

TEST_CASE("direction respecting classification") {
    for (int k = 1; k <= 3; ++k) CHECK(is_direction_respecting(directional_factorization(4), k));
    CHECK(is_direction_respecting(construct_semi_perfect(2, 2), 2));
    CHECK_FALSE(is_direction_respecting(construct_31(), 3));
    CHECK_THROWS_AS(is_direction_respecting(directional_factorization(4), 4), PreconditionError);
}

TEST_CASE("switch sequence derivation and replay") {
    // directional input needs no switches
    CHECK(derive_switch_sequence(directional_factorization(4), 2).empty());

    // Prop-style construction on Q_5, split 3: replay must reproduce it
    const auto f = construct_semi_perfect(3, 2);
    REQUIRE(is_direction_respecting(f, 3));
    const auto moves = derive_switch_sequence(f, 3);
    CHECK_FALSE(moves.empty());
    CHECK(replay_switches(directional_factorization(5), moves) == f);
    CHECK(factorization_sign(f) == 1);

    const auto g = construct_semi_perfect(2, 2);
    const auto moves_g = derive_switch_sequence(g, 2);
    CHECK(replay_switches(directional_factorization(4), moves_g) == g);

    // sampled direction-respecting factorizations assembled per copy
    const auto blocks = all_factorizations(3, false);
    REQUIRE(blocks.size() == 24);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::size_t> pick(0, blocks.size() - 1);
    for (int trial = 0; trial < 5; ++trial) {
        Factorization f6{6, {}};
        std::vector<PerfectMatching> parts;
        std::vector<std::size_t> low_choice(8), high_choice(8);
        for (auto& c : low_choice) c = pick(rng);
        for (auto& c : high_choice) c = pick(rng);
        for (int i = 0; i < 3; ++i) {
            parts.clear();
            for (int copy = 0; copy < 8; ++copy) {
                parts.push_back(blocks[low_choice[copy]].factors[i]);
            }
            f6.factors.push_back(assemble_low_block(6, 3, parts));
        }
        for (int j = 0; j < 3; ++j) {
            parts.clear();
            for (int copy = 0; copy < 8; ++copy) {
                parts.push_back(blocks[high_choice[copy]].factors[j]);
            }
            f6.factors.push_back(assemble_high_block(6, 3, parts));
        }
        f6.validate();
        REQUIRE(is_direction_respecting(f6, 3));
        const auto seq = derive_switch_sequence(f6, 3);
        CHECK(replay_switches(directional_factorization(6), seq) == f6);
        CHECK(factorization_sign(f6) == 1);
    }

    CHECK_THROWS_AS(derive_switch_sequence(construct_31(), 3), NotDirectionRespectingError);
    CHECK_THROWS_AS(derive_switch_sequence(construct_semi_perfect(4, 4), 4), BlockTooLargeError);
}
