// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Long-running searches carry explicit budgets.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cubefact/constructions.hpp"
#include "cubefact/json_io.hpp"
#include "cubefact/perfection.hpp"
#include "cubefact/search.hpp"
#include "cubefact/sign_switch.hpp"
#include "test_util.hpp"

#ifndef CUBEFACT_CLI_PATH
#error "CUBEFACT_CLI_PATH must be defined by the build"
#endif
#ifndef CUBEFACT_CERT_DIR_FOR_TESTS
#error "CUBEFACT_CERT_DIR_FOR_TESTS must be defined by the build"
#endif

using namespace cubefact;
namespace fs = std::filesystem;

namespace {

struct Harness {
    int failures = 0;
    fs::path workdir;

    Harness() {
        workdir = fs::temp_directory_path() /
                  ("cubefact-acceptance-" + std::to_string(std::random_device{}()));
        fs::create_directories(workdir);
    }
    ~Harness() { fs::remove_all(workdir); }

    void criterion(const std::string& name, const std::function<std::string()>& run) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool pass = true;
        try {
            detail = run();  // empty string means pass; otherwise failure detail
            pass = detail.empty();
        } catch (const std::exception& e) {
            pass = false;
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ostringstream line;
        line << "criterion " << name << ": " << (pass ? "PASS" : "FAIL");
        if (!detail.empty()) line << " [" << detail << "]";
        line << " (" << std::fixed << secs << "s)";
        std::cout << line.str() << std::endl;
        if (!pass) ++failures;
    }

    int run_cli(const std::string& args) {
        const std::string cmd = std::string(CUBEFACT_CLI_PATH) + " --cert-cache " +
                                std::string(CUBEFACT_CERT_DIR_FOR_TESTS) + " " + args +
                                " > /dev/null 2>&1";
        const int raw = std::system(cmd.c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    }
};

std::string check(bool ok, const std::string& what) { return ok ? "" : what; }

}  // namespace

int main() {
    Harness h;
    const CertificateCache cache{fs::path(CUBEFACT_CERT_DIR_FOR_TESTS)};

    // 1. Every (k,l) with 1 <= k <= l, k+l <= 8, (k,l) != (3,3): construct
    //    and verify through the CLI.
    h.criterion("1 (K_{k,l} constructions, k+l <= 8, via CLI)", [&]() -> std::string {
        for (int k = 1; k <= 4; ++k) {
            for (int l = k; k + l <= 8; ++l) {
                if (k == 3 && l == 3) continue;
                const auto file = h.workdir / ("f" + std::to_string(k) + std::to_string(l) + ".json");
                if (h.run_cli("construct --k " + std::to_string(k) + " --l " + std::to_string(l) +
                              " --out " + file.string()) != 0) {
                    return "construct failed for (" + std::to_string(k) + "," + std::to_string(l) + ")";
                }
                if (h.run_cli("verify " + file.string() + " --expect-complete-bipartite " +
                              std::to_string(k) + " " + std::to_string(l)) != 0) {
                    return "verify failed for (" + std::to_string(k) + "," + std::to_string(l) + ")";
                }
            }
        }
        return "";
    });

    // 2. 10,000 random-switch factorizations of Q_4: G[F] has no odd cycle.
    h.criterion("2 (bipartite perfection graphs over 10,000 switch states)", [&]() -> std::string {
        std::mt19937_64 rng(2024);
        Factorization f = directional_factorization(4);
        for (int step = 0; step < 10000; ++step) {
            const auto moves = find_switchable_squares(f);
            if (moves.empty()) return "no switchable squares at step " + std::to_string(step);
            std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
            apply_switch_in_place(f, moves[pick(rng)]);
            const auto cert = is_bipartite(perfection_graph(f));
            if (!cert.bipartite) {
                return "odd cycle of length " + std::to_string(cert.odd_cycle.size()) +
                       " at step " + std::to_string(step);
            }
        }
        return "";
    });

    // 3. Sign suite.
    h.criterion("3 (factorization sign suite)", [&]() -> std::string {
        std::string detail;
        // (a) directional factorizations of Q_2..Q_6 all claim sign +1
        for (int d = 2; d <= 6; ++d) {
            const int sign = factorization_sign(directional_factorization(d));
            if (sign != 1) {
                detail += "(a) d=" + std::to_string(d) + ": sign=" + std::to_string(sign) +
                          ", expected +1; ";
            }
        }
        // (b) sign invariance under 1,000 random switches on Q_3, Q_4, Q_5
        for (int d = 3; d <= 5; ++d) {
            std::mt19937_64 rng(100 + d);
            Factorization f = directional_factorization(d);
            const int expected = factorization_sign(f);
            for (int step = 0; step < 1000; ++step) {
                const auto moves = find_switchable_squares(f);
                std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
                apply_switch_in_place(f, moves[pick(rng)]);
                if (factorization_sign(f) != expected) {
                    detail += "(b) sign changed on Q_" + std::to_string(d) + " at step " +
                              std::to_string(step) + "; ";
                    break;
                }
            }
        }
        // (c) the stored K_{3,1} certificate has sign -1
        if (factorization_sign(construct_31()) != -1) detail += "(c) certificate sign != -1; ";
        // (d) sampled direction-respecting factorizations of Q_6 at split 3
        {
            const auto blocks = all_factorizations(3, false);
            std::mt19937_64 rng(77);
            std::uniform_int_distribution<std::size_t> pick(0, blocks.size() - 1);
            for (int trial = 0; trial < 30; ++trial) {
                Factorization f6{6, {}};
                std::vector<PerfectMatching> parts;
                for (int i = 0; i < 3; ++i) {
                    parts.clear();
                    for (int copy = 0; copy < 8; ++copy) {
                        parts.push_back(blocks[pick(rng)].factors[i]);
                    }
                    f6.factors.push_back(assemble_low_block(6, 3, parts));
                }
                for (int j = 0; j < 3; ++j) {
                    parts.clear();
                    for (int copy = 0; copy < 8; ++copy) {
                        parts.push_back(blocks[pick(rng)].factors[j]);
                    }
                    f6.factors.push_back(assemble_high_block(6, 3, parts));
                }
                f6.validate();
                if (!is_direction_respecting(f6, 3)) {
                    detail += "(d) sample not direction respecting; ";
                    break;
                }
                if (factorization_sign(f6) != 1) {
                    detail += "(d) direction-respecting sample has sign -1; ";
                    break;
                }
            }
        }
        return detail;
    });

    // 4. Exhaustive direction-respecting (split 3) search on Q_4 for
    //    positional K_{3,1}: no witness, exactly 576 composites.
    h.criterion("4 (576-composite impossibility on Q_4)", [&]() -> std::string {
        const SearchTarget target = SearchTarget::semi_perfect(3, 1);
        FactorizationSearchOptions options;
        options.direction_respecting_split = 3;
        const auto pruned = search_factorization(4, target, options, SearchBudget{});
        options.use_sign_pruning = false;
        const auto unpruned = search_factorization(4, target, options, SearchBudget{});
        std::string detail;
        detail += check(pruned.status == SearchStatus::exhausted_no_witness,
                        "pruned run did not exhaust; ");
        detail += check(pruned.nodes_explored == 576,
                        "pruned nodes=" + std::to_string(pruned.nodes_explored) + "; ");
        detail += check(unpruned.status == SearchStatus::exhausted_no_witness,
                        "unpruned run did not exhaust; ");
        detail += check(unpruned.nodes_explored == 576,
                        "unpruned nodes=" + std::to_string(unpruned.nodes_explored) + "; ");
        return detail;
    });

    // 5. Q_3 structure: 9 perfect matchings; 4 unordered factorizations,
    //    one all-directional and three with exactly one directional factor.
    h.criterion("5 (Q_3 matching and factorization census)", [&]() -> std::string {
        std::string detail;
        detail += check(count_perfect_matchings(3) == 9, "perfect matching count != 9; ");
        int three_directional = 0, one_directional = 0, other = 0;
        const auto total = enumerate_factorizations(3, true, [&](const Factorization& f) {
            int directional = 0;
            for (const auto& m : f.factors) directional += testutil::is_directional(m);
            if (directional == 3) {
                ++three_directional;
            } else if (directional == 1) {
                ++one_directional;
            } else {
                ++other;
            }
            return true;
        });
        detail += check(total == 4, "unordered factorization count = " + std::to_string(total) + "; ");
        detail += check(three_directional == 1 && one_directional == 3 && other == 0,
                        "directional breakdown != 1+3; ");
        return detail;
    });

    // 6. Directed Hamilton decompositions: found for d = 2, 4, 5; exhausted
    //    for d = 3; splits satisfy the paired-factorization invariants.
    h.criterion("6 (directed decomposition search d=2,3,4,5)", [&]() -> std::string {
        std::string detail;
        for (const int d : {2, 4, 5}) {
            SearchBudget budget;
            budget.max_seconds = 600.0;
            const auto outcome = search_directed_hamilton_decomposition(d, budget);
            if (outcome.status != SearchStatus::found) {
                detail += "d=" + std::to_string(d) + " not found; ";
                continue;
            }
            try {
                split_directed_decomposition(*outcome.witness).validate();
            } catch (const std::exception& e) {
                detail += "d=" + std::to_string(d) + " split invalid: " + e.what() + "; ";
            }
        }
        const auto q3 = search_directed_hamilton_decomposition(3, SearchBudget{});
        detail += check(q3.status == SearchStatus::exhausted_no_witness,
                        "d=3 did not exhaust without witness; ");
        return detail;
    });

    // 7. Proof internals of the k=3 construction for l in {2,4,5}: deleting
    //    the four direction-3 edges of the zero copy from M_i ∪ N_1 leaves
    //    four paths with pinned endpoints and vertex counts.
    h.criterion("7 (four-path structure of the k=3 construction)", [&]() -> std::string {
        for (const int l : {2, 4, 5}) {
            const auto f = construct_k3(l, &cache);
            const int d = 3 + l;
            const Vertex scale = Vertex{1} << l;
            for (int i = 0; i < l; ++i) {
                const auto& n1 = f.factors[0];
                const auto& mi = f.factors[3 + i];
                std::set<testutil::Edge> edges;
                for (Vertex v = 0; v < vertex_count(d); ++v) {
                    edges.insert(testutil::make_edge(v, n1.partner[v]));
                    edges.insert(testutil::make_edge(v, mi.partner[v]));
                }
                for (const Vertex u : {0u, 1u, 2u, 3u}) {
                    if (!edges.erase(testutil::make_edge(u, u ^ 4u))) {
                        return "l=" + std::to_string(l) + ": expected direction-3 edge missing";
                    }
                }
                const auto pieces = testutil::decompose_paths(edges, vertex_count(d));
                if (pieces.cycles != 0 || pieces.paths.size() != 4) {
                    return "l=" + std::to_string(l) + " i=" + std::to_string(i + 1) +
                           ": wrong component shape";
                }
                std::set<std::tuple<Vertex, Vertex, int>> got;
                int total = 0;
                for (const auto& p : pieces.paths) {
                    got.insert({std::min(p.from, p.to), std::max(p.from, p.to), p.vertices});
                    total += p.vertices;
                }
                const std::set<std::tuple<Vertex, Vertex, int>> expected{
                    {0, 2, static_cast<int>(2 * scale)},
                    {1, 3, static_cast<int>(2 * scale)},
                    {6, 7, 4},
                    {4, 5, static_cast<int>(4 * scale - 4)}};
                if (got != expected || total != static_cast<int>(8 * scale)) {
                    return "l=" + std::to_string(l) + " i=" + std::to_string(i + 1) +
                           ": endpoints or counts differ";
                }
            }
        }
        return "";
    });

    // 8. (a) factorizations of Q_4 and Q_5 with every pair union below
    //    three cycles exist and are found by search; (b) connectivity
    //    thresholds of the balanced constructions for d = 4, 5, 7.
    h.criterion("8 (pair-cycle witnesses and connectivity thresholds)", [&]() -> std::string {
        std::string detail;
        for (const int d : {4, 5}) {
            FactorizationSearchOptions options;
            options.seed = 1;
            SearchBudget budget;
            budget.max_seconds = 600.0;
            const auto outcome =
                search_factorization(d, SearchTarget::max_cycles(2), options, budget);
            if (outcome.status != SearchStatus::found) {
                detail += "(a) no max-cycles witness on Q_" + std::to_string(d) + "; ";
            } else if (max_pair_cycle_count(*outcome.witness) > 2) {
                detail += "(a) witness exceeds two cycles on Q_" + std::to_string(d) + "; ";
            }
        }
        const std::vector<std::tuple<int, int, int>> cases{{2, 2, 3}, {2, 3, 4}, {3, 4, 5}};
        for (const auto& [k, l, bound] : cases) {
            const auto f = construct_semi_perfect(k, l, &cache);
            const int r = union_connectivity_threshold(f);
            if (r > bound) {
                detail += "(b) threshold " + std::to_string(r) + " > " + std::to_string(bound) +
                          " for (" + std::to_string(k) + "," + std::to_string(l) + "); ";
            }
        }
        return detail;
    });

    // Harness check (not a numbered criterion): the K_{3,3} search runs
    // under budget on Q_6, checkpoints, resumes, and never claims an answer.
    h.criterion("harness (K_{3,3} exploration stays budget-bounded and resumable)",
                [&]() -> std::string {
        std::string detail;
        const auto ckpt = h.workdir / "k33.ckpt";
        const SearchTarget target = SearchTarget::semi_perfect(3, 3);
        FactorizationSearchOptions options;
        options.direction_respecting_split = 3;
        options.checkpoint_out = ckpt;
        SearchBudget slice;
        slice.max_nodes = 20000;
        const auto first = search_factorization(6, target, options, slice);
        detail += check(first.status == SearchStatus::budget_exceeded,
                        "first run did not stop at the budget; ");
        detail += check(first.nodes_explored == 20000, "first run node count off; ");
        detail += check(fs::exists(ckpt), "no checkpoint written; ");

        FactorizationSearchOptions resume = options;
        resume.resume_from = ckpt;
        const auto second = search_factorization(6, target, resume, slice);
        detail += check(second.status == SearchStatus::budget_exceeded,
                        "resumed run did not stop at the budget; ");
        detail += check(second.nodes_explored == 40000,
                        "resumed node count is not cumulative; ");

        FactorizationSearchOptions walk;
        walk.seed = 9;
        SearchBudget walk_budget;
        walk_budget.max_nodes = 2000;
        const auto wandering =
            search_factorization(6, SearchTarget::complete_bipartite(3, 3), walk, walk_budget);
        detail += check(wandering.status == SearchStatus::budget_exceeded,
                        "switch walk claimed an answer on Q_6; ");
        return detail;
    });

    std::cout << (h.failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: " + std::to_string(h.failures))
              << std::endl;
    return h.failures == 0 ? 0 : 1;
}
