#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "cubefact/constructions.hpp"
#include "cubefact/perfection.hpp"
#include "cubefact/sign_switch.hpp"

using namespace cubefact;

namespace {

PerfectionGraph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    PerfectionGraph g{n, std::vector<std::uint32_t>(n, 0)};
    for (const auto& [a, b] : edges) {
        g.adj[a] |= 1u << b;
        g.adj[b] |= 1u << a;
    }
    return g;
}

void check_bipartite_certificate(const PerfectionGraph& g, const BipartiteCertificate& cert) {
    if (cert.bipartite) {
        REQUIRE(cert.coloring.size() == static_cast<std::size_t>(g.n));
        for (int i = 0; i < g.n; ++i) {
            for (int j = i + 1; j < g.n; ++j) {
                if (g.adjacent(i, j)) CHECK(cert.coloring[i] != cert.coloring[j]);
            }
        }
    } else {
        CHECK(cert.odd_cycle.size() % 2 == 1);
        CHECK(cert.odd_cycle.size() >= 3);
        for (std::size_t i = 0; i < cert.odd_cycle.size(); ++i) {
            const int a = cert.odd_cycle[i];
            const int b = cert.odd_cycle[(i + 1) % cert.odd_cycle.size()];
            CHECK(g.adjacent(a, b));
        }
    }
}

}  // namespace

TEST_CASE("perfection graph of directional factorizations") {
    CHECK(perfection_graph(directional_factorization(3)).edge_count() == 0);
    const auto q2 = perfection_graph(directional_factorization(2));
    CHECK(q2.edge_count() == 1);
    CHECK(q2.adjacent(0, 1));
}

TEST_CASE("parallel pair evaluation matches sequential") {
    const auto f = construct_semi_perfect(2, 2);
    const auto seq = perfection_graph(f, 1);
    const auto par = perfection_graph(f, 4);
    CHECK(seq.adj == par.adj);
}

TEST_CASE("bipartiteness certificates validate themselves") {
    const auto empty3 = graph_from_edges(3, {});
    auto cert = is_bipartite(empty3);
    CHECK(cert.bipartite);
    check_bipartite_certificate(empty3, cert);

    const auto triangle = graph_from_edges(3, {{0, 1}, {1, 2}, {2, 0}});
    cert = is_bipartite(triangle);
    CHECK_FALSE(cert.bipartite);
    check_bipartite_certificate(triangle, cert);

    const auto pentagon_plus = graph_from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {4, 5}});
    cert = is_bipartite(pentagon_plus);
    CHECK_FALSE(cert.bipartite);
    check_bipartite_certificate(pentagon_plus, cert);
}

TEST_CASE("random switch walks never produce an odd cycle in G[F]") {
    // sampled version of the exhaustive acceptance run
    std::mt19937_64 rng(7);
    Factorization f = directional_factorization(4);
    for (int step = 0; step < 500; ++step) {
        const auto moves = find_switchable_squares(f);
        REQUIRE_FALSE(moves.empty());
        std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
        apply_switch_in_place(f, moves[pick(rng)]);
        const auto g = perfection_graph(f);
        const auto cert = is_bipartite(g);
        CHECK(cert.bipartite);
        check_bipartite_certificate(g, cert);
    }
}

TEST_CASE("complete bipartite recognition") {
    const auto empty3 = graph_from_edges(3, {});
    const auto miss = is_complete_bipartite(empty3, 1, 2);
    CHECK_FALSE(miss.ok);
    CHECK(miss.missing_cross_edge.has_value());

    const auto k22 = graph_from_edges(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
    const auto ok = is_complete_bipartite(k22, 2, 2);
    CHECK(ok.ok);
    CHECK(ok.part_a.size() == 2);
    CHECK(ok.part_b.size() == 2);

    // an extra within-part edge breaks it
    auto k22_plus = k22;
    k22_plus.adj[0] |= 1u << 1;
    k22_plus.adj[1] |= 1u << 0;
    const auto bad = is_complete_bipartite(k22_plus, 2, 2);
    CHECK_FALSE(bad.ok);

    // K_{3,4} has 12 = floor(7^2/4) edges
    std::vector<std::pair<int, int>> cross;
    for (int i = 0; i < 3; ++i) {
        for (int j = 3; j < 7; ++j) cross.emplace_back(i, j);
    }
    const auto k34 = graph_from_edges(7, cross);
    CHECK(k34.edge_count() == 12);
    CHECK(is_complete_bipartite(k34, 3, 4).ok);
    CHECK(is_complete_bipartite(k34, 4, 3).ok);
    CHECK_FALSE(is_complete_bipartite(k34, 2, 5).ok);
    CHECK(k34.degree_sequence() == std::vector<int>{3, 3, 3, 3, 4, 4, 4});

    CHECK_THROWS_AS(is_complete_bipartite(k34, 3, 3), PreconditionError);
}

TEST_CASE("constructed K_{2,2} is recognized with the positional parts") {
    const auto f = construct_semi_perfect(2, 2);
    const auto g = perfection_graph(f);
    const auto check = is_complete_bipartite(g, 2, 2);
    REQUIRE(check.ok);
    CHECK(check.part_a == std::vector<int>{0, 1});
    CHECK(check.part_b == std::vector<int>{2, 3});
    CHECK(g.edge_count() == 4);
}

TEST_CASE("dot export lists factors and hamilton pairs") {
    const auto dot = to_dot(perfection_graph(directional_factorization(2)));
    CHECK(dot.find("M1") != std::string::npos);
    CHECK(dot.find("M1 -- M2;") != std::string::npos);
    const auto empty = to_dot(perfection_graph(directional_factorization(3)));
    CHECK(empty.find("--") == std::string::npos);
}
