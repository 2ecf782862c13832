#pragma once
// Exact search and enumeration engines: directed Hamilton decompositions by
// backtracking, exhaustive 1-factorization enumeration for small d, targeted
// factorization search (direction-respecting composites and switch walks),
// and the pair-union metrics.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cubefact/decomposition.hpp"
#include "cubefact/matching.hpp"

namespace cubefact {

struct SearchBudget {
    std::optional<std::uint64_t> max_nodes;
    std::optional<double> max_seconds;
    bool deterministic = true;  // canonical order, no randomized restarts
};

enum class SearchStatus { found, exhausted_no_witness, budget_exceeded };

const char* to_string(SearchStatus status);

struct DirectedSearchOutcome {
    SearchStatus status = SearchStatus::budget_exceeded;
    std::optional<DirectedHamiltonDecomposition> witness;
    std::uint64_t nodes_explored = 0;
};

// Backtracking over directed arc assignments, building cycles one at a time.
// Cycle c starts at vertex 0 with its first arc pinned to direction c, which
// selects exactly one ordering of every decomposition; exhaustion claims are
// therefore complete. In non-deterministic mode direction orders are
// reshuffled per restart from the seed.
DirectedSearchOutcome search_directed_hamilton_decomposition(int d, const SearchBudget& budget,
                                                             std::uint64_t seed = 0);

// Constrained variant for large d: finds one directed Hamilton cycle whose d
// coordinate rotations are pairwise arc-disjoint; the rotations then form a
// full decomposition. Much smaller search space, but exhaustion here does
// not certify non-existence of unconstrained decompositions.
DirectedSearchOutcome search_rotational_decomposition(int d, const SearchBudget& budget,
                                                      std::uint64_t seed = 0);

// All perfect matchings of Q_d (d <= 5) in lexicographic partner-table order.
std::vector<PerfectMatching> all_perfect_matchings(int d);
std::uint64_t count_perfect_matchings(int d);

// Complete, duplicate-free enumeration. In up_to_ordering mode exactly one
// representative per unordered partition is produced, already in canonical
// order (factors sorted by partner table, which pins factor i's edge at
// vertex 0 to direction i). The visitor returns false to stop early; the
// return value is the number of factorizations visited.
std::uint64_t enumerate_factorizations(int d, bool up_to_ordering,
                                       const std::function<bool(const Factorization&)>& visit);
std::vector<Factorization> all_factorizations(int d, bool up_to_ordering);

// A random proper d-edge-coloring of Q_d, produced by drawing perfect
// matchings of the residual graph with backtracking.
Factorization random_factorization(int d, std::uint64_t seed);

struct SearchTarget {
    enum class Kind {
        complete_bipartite,        // G[F] isomorphic to K_{k,l}
        semi_perfect_positional,   // all pairs i <= k < j Hamilton (first k vs last l factors)
        all_pairs_max_cycles,      // every pair union has at most `bound` cycles
        min_longest_cycle_at_least // f(F) >= bound
    };

    Kind kind = Kind::complete_bipartite;
    int k = 0;
    int l = 0;
    int bound = 0;

    static SearchTarget complete_bipartite(int k, int l);
    static SearchTarget semi_perfect(int k, int l);
    static SearchTarget max_cycles(int bound);
    static SearchTarget min_longest(int bound);

    // "complete-bipartite:K,L" | "k33-style:K,L" | "max-cycles:C" | "min-longest:L"
    static SearchTarget parse(const std::string& spec);
    std::string to_string() const;

    bool evaluate(const Factorization& f) const;

    // The factorization sign forced on any satisfying instance, when the
    // target pins one (complete-bipartite style targets force (-1)^(k*l)).
    std::optional<int> required_sign() const;
};

struct FactorizationSearchOptions {
    std::optional<int> direction_respecting_split;
    std::optional<Factorization> start;  // switch-walk start, default directional
    std::uint64_t seed = 0;
    bool use_sign_pruning = true;
    std::uint64_t restart_interval = 20000;  // switch-walk steps between restarts
    std::optional<std::filesystem::path> checkpoint_out;
    std::optional<std::filesystem::path> resume_from;
};

struct FactorizationSearchOutcome {
    SearchStatus status = SearchStatus::budget_exceeded;
    std::optional<Factorization> witness;
    std::uint64_t nodes_explored = 0;
};

// Hybrid engine. With direction_respecting_split set: exhaustive odometer
// over per-copy block factorizations (nodes = composites enumerated), with
// the sign obstruction as a pruning filter for complete-bipartite targets.
// Otherwise: a randomized switch walk (uniform over switchable squares) with
// periodic restarts; restarts alternate between the start factorization and
// seeded random factorizations so both sign classes are reachable.
FactorizationSearchOutcome search_factorization(int d, const SearchTarget& target,
                                                const FactorizationSearchOptions& options,
                                                const SearchBudget& budget);

// min over unordered factor pairs of the longest cycle in their union.
int min_longest_cycle(const Factorization& f);

// max over unordered factor pairs of the number of cycles in their union.
int max_pair_cycle_count(const Factorization& f);

// Minimal r such that every r-subset of factors has connected union.
int union_connectivity_threshold(const Factorization& f);

// A witness r-subset (1-indexed factor ids) whose union is disconnected.
std::optional<std::vector<int>> find_disconnected_subset(const Factorization& f, int r);

}  // namespace cubefact
