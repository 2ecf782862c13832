#include "cubefact/search.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <climits>
#include <numeric>
#include <random>
#include <sstream>

#include "cubefact/json_io.hpp"
#include "cubefact/perfection.hpp"
#include "cubefact/sign_switch.hpp"

namespace cubefact {

const char* to_string(SearchStatus status) {
    switch (status) {
        case SearchStatus::found: return "found";
        case SearchStatus::exhausted_no_witness: return "exhausted-no-witness";
        case SearchStatus::budget_exceeded: return "budget-exceeded";
    }
    return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// ---------------------------------------------------------------------------
// Directed Hamilton decomposition backtracking.
//
// Cycle c starts at vertex 0 and its first arc is pinned to direction c: the
// d out-arcs of vertex 0 are used by distinct cycles, so ordering cycles by
// that direction picks exactly one ordered representative of every unordered
// decomposition. This keeps exhaustion claims complete while removing the
// d!-fold ordering symmetry and all cyclic rotations.
// ---------------------------------------------------------------------------

class DirectedSearch {
public:
    DirectedSearch(int d, const SearchBudget& budget, std::uint64_t seed)
        : d_(d), n_(vertex_count(d)), budget_(budget), seed_(seed) {}

    DirectedSearchOutcome run() {
        if (budget_.max_seconds) {
            deadline_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                           std::chrono::duration<double>(*budget_.max_seconds));
        }
        DirectedSearchOutcome outcome;
        std::uint64_t attempt = 0;
        while (true) {
            reset_state();
            set_orders(attempt);
            slice_end_ = budget_.deterministic ? UINT64_MAX : nodes_ + kRestartSliceNodes;
            slice_abort_ = false;
            const bool halted = solve_cycle(1);
            if (witness_) {
                outcome.status = SearchStatus::found;
                outcome.witness = std::move(witness_);
                break;
            }
            if (stop_) {
                outcome.status = SearchStatus::budget_exceeded;
                break;
            }
            if (!halted && !slice_abort_) {
                // The DFS ran to completion: the space is fully explored.
                outcome.status = SearchStatus::exhausted_no_witness;
                break;
            }
            ++attempt;  // slice exhausted, reshuffle and restart
        }
        outcome.nodes_explored = nodes_;
        return outcome;
    }

private:
    static constexpr std::uint64_t kRestartSliceNodes = 2'000'000;

    void reset_state() {
        out_used_.assign(n_, 0);
        in_used_.assign(n_, 0);
        stamp_.assign(n_, 0);
        cycles_.clear();
        witness_.reset();
    }

    void set_orders(std::uint64_t attempt) {
        order_.assign(n_, {});
        for (Vertex v = 0; v < n_; ++v) {
            order_[v].resize(d_);
            std::iota(order_[v].begin(), order_[v].end(), 1);
        }
        if (!budget_.deterministic) {
            std::mt19937_64 rng(mix_seed(seed_ ^ mix_seed(attempt)));
            for (Vertex v = 0; v < n_; ++v) {
                std::shuffle(order_[v].begin(), order_[v].end(), rng);
            }
        }
    }

    bool budget_spent() {
        ++nodes_;
        if (budget_.max_nodes && nodes_ >= *budget_.max_nodes) {
            stop_ = true;
            return true;
        }
        if (deadline_ && (nodes_ & 0xfffu) == 0 && Clock::now() > *deadline_) {
            stop_ = true;
            return true;
        }
        if (nodes_ >= slice_end_) {
            slice_abort_ = true;
            return true;
        }
        return false;
    }

    bool solve_cycle(int c) {
        if (c > d_) {
            DirectedHamiltonDecomposition h{d_, cycles_};
            h.validate();
            witness_ = std::move(h);
            return true;
        }
        const Vertex first = direction_mask(c);
        if (out_used_[0] & first) return false;
        const int prev_zero = stamp_[0];
        const int prev_first = stamp_[first];
        out_used_[0] |= first;
        in_used_[first] |= first;
        stamp_[0] = c;
        stamp_[first] = c;
        cycles_.push_back({0, first});
        if (extend(c, first, 2)) return true;
        cycles_.pop_back();
        stamp_[0] = prev_zero;
        stamp_[first] = prev_first;
        out_used_[0] &= ~first;
        in_used_[first] &= ~first;
        return false;
    }

    // `true` means stop unwinding: a witness was completed or the budget ran
    // out; plain dead ends return false.
    bool extend(int c, Vertex cur, Vertex count) {
        if (budget_spent()) return true;
        if (count == n_) {
            if (!std::has_single_bit(cur)) return false;
            const Vertex mask = cur;  // direction mask of the closing arc equals the vertex
            if (out_used_[cur] & mask) return false;
            out_used_[cur] |= mask;
            in_used_[0] |= mask;
            if (solve_cycle(c + 1)) return true;
            out_used_[cur] &= ~mask;
            in_used_[0] &= ~mask;
            return false;
        }
        if (!feasible(c, cur)) return false;
        for (const int dir : order_[cur]) {
            const Vertex mask = direction_mask(dir);
            if (out_used_[cur] & mask) continue;
            const Vertex w = cur ^ mask;
            if (stamp_[w] == c) continue;
            // Restore the previous stamp on undo: vertices of completed
            // cycles keep their own cycle's stamp while deeper cycles
            // backtrack through them.
            const int prev = stamp_[w];
            out_used_[cur] |= mask;
            in_used_[w] |= mask;
            stamp_[w] = c;
            cycles_.back().push_back(w);
            if (extend(c, w, count + 1)) return true;
            cycles_.back().pop_back();
            stamp_[w] = prev;
            out_used_[cur] &= ~mask;
            in_used_[w] &= ~mask;
        }
        return false;
    }

    // Degree-exhaustion pruning: every vertex still to be visited by the
    // current cycle needs a free out-arc towards an unvisited vertex or 0,
    // and a free in-arc from an unvisited vertex or the path end; vertex 0
    // needs a free closing in-arc.
    bool feasible(int c, Vertex cur) const {
        {
            bool ok = false;
            for (int dir = 1; dir <= d_ && !ok; ++dir) {
                const Vertex mask = direction_mask(dir);
                if (in_used_[0] & mask) continue;
                const Vertex src = mask;
                if (stamp_[src] != c || src == cur) ok = true;
            }
            if (!ok) return false;
        }
        for (Vertex v = 1; v < n_; ++v) {
            if (stamp_[v] == c) continue;
            bool out_ok = false;
            bool in_ok = false;
            for (int dir = 1; dir <= d_ && !(out_ok && in_ok); ++dir) {
                const Vertex mask = direction_mask(dir);
                const Vertex w = v ^ mask;
                if (!out_ok && !(out_used_[v] & mask) && (stamp_[w] != c || w == 0)) out_ok = true;
                if (!in_ok && !(in_used_[v] & mask) && (stamp_[w] != c || w == cur)) in_ok = true;
            }
            if (!out_ok || !in_ok) return false;
        }
        return true;
    }

    int d_;
    Vertex n_;
    SearchBudget budget_;
    std::uint64_t seed_;
    std::vector<std::uint32_t> out_used_, in_used_;
    std::vector<int> stamp_;
    std::vector<std::vector<Vertex>> cycles_;
    std::vector<std::vector<int>> order_;
    std::uint64_t nodes_ = 0;
    std::uint64_t slice_end_ = UINT64_MAX;
    bool stop_ = false;
    bool slice_abort_ = false;
    std::optional<Clock::time_point> deadline_;
    std::optional<DirectedHamiltonDecomposition> witness_;
};

}  // namespace

DirectedSearchOutcome search_directed_hamilton_decomposition(int d, const SearchBudget& budget,
                                                             std::uint64_t seed) {
    check_dimension(d);
    if (d < 2) throw PreconditionError("directed decomposition search requires d >= 2");
    return DirectedSearch(d, budget, seed).run();
}

namespace {

// One Hamilton cycle whose coordinate rotations tile the arc set. Arcs are
// claimed together with all their rotated images, so any completed cycle
// lifts to a full decomposition.
class RotationalSearch {
public:
    RotationalSearch(int d, const SearchBudget& budget, std::uint64_t seed)
        : d_(d), n_(vertex_count(d)), budget_(budget), seed_(seed) {}

    DirectedSearchOutcome run() {
        if (budget_.max_seconds) {
            deadline_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                           std::chrono::duration<double>(*budget_.max_seconds));
        }
        DirectedSearchOutcome outcome;
        std::uint64_t attempt = 0;
        while (true) {
            arc_used_.assign(n_, 0);
            visited_.assign(n_, 0);
            path_.clear();
            witness_.reset();
            set_orders(attempt);
            slice_end_ = budget_.deterministic ? UINT64_MAX : nodes_ + kRestartSliceNodes;
            slice_abort_ = false;

            visited_[0] = 1;
            path_.push_back(0);
            const bool halted = extend(0, 1);
            if (witness_) {
                outcome.status = SearchStatus::found;
                outcome.witness = std::move(witness_);
                break;
            }
            if (stop_) {
                outcome.status = SearchStatus::budget_exceeded;
                break;
            }
            if (!halted && !slice_abort_) {
                outcome.status = SearchStatus::exhausted_no_witness;
                break;
            }
            ++attempt;
        }
        outcome.nodes_explored = nodes_;
        return outcome;
    }

private:
    static constexpr std::uint64_t kRestartSliceNodes = 4'000'000;

    Vertex rotate(Vertex v) const { return ((v << 1) | (v >> (d_ - 1))) & (n_ - 1); }

    void set_orders(std::uint64_t attempt) {
        order_.assign(n_, {});
        for (Vertex v = 0; v < n_; ++v) {
            order_[v].resize(d_);
            std::iota(order_[v].begin(), order_[v].end(), 1);
        }
        if (!budget_.deterministic) {
            std::mt19937_64 rng(mix_seed(seed_ ^ mix_seed(attempt * 31 + 7)));
            for (Vertex v = 0; v < n_; ++v) {
                std::shuffle(order_[v].begin(), order_[v].end(), rng);
            }
        }
    }

    // Claim an arc and its rotations; returns false (claiming nothing) if any
    // image is taken.
    bool claim(Vertex u, int dir) {
        Vertex src = u;
        Vertex mask = direction_mask(dir);
        for (int j = 0; j < d_; ++j) {
            if (arc_used_[src] & mask) {
                release(u, dir, j);
                return false;
            }
            arc_used_[src] |= mask;
            src = rotate(src);
            mask = rotate(mask);
        }
        return true;
    }

    void release(Vertex u, int dir, int upto = -1) {
        Vertex src = u;
        Vertex mask = direction_mask(dir);
        const int limit = upto < 0 ? d_ : upto;
        for (int j = 0; j < limit; ++j) {
            arc_used_[src] &= ~mask;
            src = rotate(src);
            mask = rotate(mask);
        }
    }

    bool budget_spent() {
        ++nodes_;
        if (budget_.max_nodes && nodes_ >= *budget_.max_nodes) {
            stop_ = true;
            return true;
        }
        if (deadline_ && (nodes_ & 0xfffu) == 0 && Clock::now() > *deadline_) {
            stop_ = true;
            return true;
        }
        if (nodes_ >= slice_end_) {
            slice_abort_ = true;
            return true;
        }
        return false;
    }

    bool extend(Vertex cur, Vertex count) {
        if (budget_spent()) return true;
        if (count == n_) {
            int dir = 0;
            try {
                dir = edge_direction(cur, 0);
            } catch (const NotAnEdgeError&) {
                return false;
            }
            if (!claim(cur, dir)) return false;
            DirectedHamiltonDecomposition h{d_, {}};
            h.cycles.push_back(path_);
            for (int j = 1; j < d_; ++j) {
                std::vector<Vertex> image(n_);
                for (Vertex i = 0; i < n_; ++i) image[i] = rotate(h.cycles[j - 1][i]);
                h.cycles.push_back(std::move(image));
            }
            h.validate();
            witness_ = std::move(h);
            return true;
        }
        for (const int dir : order_[cur]) {
            const Vertex w = cur ^ direction_mask(dir);
            if (visited_[w]) continue;
            if (!claim(cur, dir)) continue;
            visited_[w] = 1;
            path_.push_back(w);
            if (extend(w, count + 1)) return true;
            path_.pop_back();
            visited_[w] = 0;
            release(cur, dir);
        }
        return false;
    }

    int d_;
    Vertex n_;
    SearchBudget budget_;
    std::uint64_t seed_;
    std::vector<std::uint32_t> arc_used_;
    std::vector<char> visited_;
    std::vector<Vertex> path_;
    std::vector<std::vector<int>> order_;
    std::uint64_t nodes_ = 0;
    std::uint64_t slice_end_ = UINT64_MAX;
    bool stop_ = false;
    bool slice_abort_ = false;
    std::optional<Clock::time_point> deadline_;
    std::optional<DirectedHamiltonDecomposition> witness_;
};

}  // namespace

DirectedSearchOutcome search_rotational_decomposition(int d, const SearchBudget& budget,
                                                      std::uint64_t seed) {
    check_dimension(d);
    if (d < 2) throw PreconditionError("directed decomposition search requires d >= 2");
    return RotationalSearch(d, budget, seed).run();
}

// ---------------------------------------------------------------------------
// Matching and factorization enumeration.
// ---------------------------------------------------------------------------

namespace {

constexpr Vertex kUnmatched = ~Vertex{0};

// Enumerates perfect matchings of the residual graph given by per-vertex
// direction masks, always extending the lowest unmatched vertex.
struct MatchingEnumerator {
    int d;
    Vertex n;
    const std::vector<std::uint32_t>& avail;
    std::vector<Vertex> partner;
    std::function<bool(const std::vector<Vertex>&)> emit;  // false stops
    bool stopped = false;
    std::uint32_t pin_mask_at_zero = ~std::uint32_t{0};

    MatchingEnumerator(int d_, const std::vector<std::uint32_t>& avail_)
        : d(d_), n(vertex_count(d_)), avail(avail_), partner(n, kUnmatched) {}

    void run() { rec(0); }

    void rec(Vertex from) {
        if (stopped) return;
        Vertex u = from;
        while (u < n && partner[u] != kUnmatched) ++u;
        if (u == n) {
            if (!emit(partner)) stopped = true;
            return;
        }
        std::uint32_t options = avail[u];
        if (u == 0) options &= pin_mask_at_zero;
        while (options != 0 && !stopped) {
            const int bit = std::countr_zero(options);
            options &= options - 1;
            const Vertex w = u ^ (Vertex{1} << bit);
            if (partner[w] != kUnmatched) continue;
            partner[u] = w;
            partner[w] = u;
            rec(u + 1);
            partner[u] = kUnmatched;
            partner[w] = kUnmatched;
        }
    }
};

struct FactorizationEnumerator {
    int d;
    Vertex n;
    bool canonical;
    const std::function<bool(const Factorization&)>& visit;
    std::vector<std::uint32_t> avail;
    Factorization current;
    std::uint64_t count = 0;
    bool stopped = false;

    FactorizationEnumerator(int d_, bool canonical_,
                            const std::function<bool(const Factorization&)>& visit_)
        : d(d_), n(vertex_count(d_)), canonical(canonical_), visit(visit_),
          avail(n, vertex_count(d_) - 1), current{d_, {}} {}

    void rec(int index) {
        if (stopped) return;
        if (index == d) {
            ++count;
            if (!visit(current)) stopped = true;
            return;
        }
        MatchingEnumerator me(d, avail);
        if (canonical) me.pin_mask_at_zero = direction_mask(index + 1);
        me.emit = [&](const std::vector<Vertex>& partner) {
            current.factors.push_back(PerfectMatching{d, partner});
            for (Vertex v = 0; v < n; ++v) {
                const Vertex w = partner[v];
                if (v < w) {
                    const Vertex mask = v ^ w;
                    avail[v] &= ~mask;
                    avail[w] &= ~mask;
                }
            }
            rec(index + 1);
            for (Vertex v = 0; v < n; ++v) {
                const Vertex w = partner[v];
                if (v < w) {
                    const Vertex mask = v ^ w;
                    avail[v] |= mask;
                    avail[w] |= mask;
                }
            }
            current.factors.pop_back();
            return !stopped;
        };
        me.run();
    }
};

}  // namespace

std::vector<PerfectMatching> all_perfect_matchings(int d) {
    check_dimension(d);
    if (d > 5) throw DimensionTooLargeError("perfect matching enumeration is capped at d <= 5");
    std::vector<std::uint32_t> avail(vertex_count(d), vertex_count(d) - 1);
    std::vector<PerfectMatching> out;
    MatchingEnumerator me(d, avail);
    me.emit = [&](const std::vector<Vertex>& partner) {
        out.push_back(PerfectMatching{d, partner});
        return true;
    };
    me.run();
    return out;
}

std::uint64_t count_perfect_matchings(int d) {
    check_dimension(d);
    if (d > 5) throw DimensionTooLargeError("perfect matching enumeration is capped at d <= 5");
    std::vector<std::uint32_t> avail(vertex_count(d), vertex_count(d) - 1);
    std::uint64_t count = 0;
    MatchingEnumerator me(d, avail);
    me.emit = [&](const std::vector<Vertex>&) {
        ++count;
        return true;
    };
    me.run();
    return count;
}

std::uint64_t enumerate_factorizations(int d, bool up_to_ordering,
                                       const std::function<bool(const Factorization&)>& visit) {
    check_dimension(d);
    if (d > 4) throw DimensionTooLargeError("factorization enumeration is capped at d <= 4");
    FactorizationEnumerator fe(d, up_to_ordering, visit);
    fe.rec(0);
    return fe.count;
}

std::vector<Factorization> all_factorizations(int d, bool up_to_ordering) {
    std::vector<Factorization> out;
    enumerate_factorizations(d, up_to_ordering, [&](const Factorization& f) {
        out.push_back(f);
        return true;
    });
    return out;
}

namespace {

bool random_matching_rec(int d, const std::vector<std::uint32_t>& avail,
                         std::vector<Vertex>& partner, Vertex from, std::mt19937_64& rng) {
    const Vertex n = vertex_count(d);
    Vertex u = from;
    while (u < n && partner[u] != kUnmatched) ++u;
    if (u == n) return true;
    std::vector<int> bits;
    for (std::uint32_t options = avail[u]; options != 0; options &= options - 1) {
        bits.push_back(std::countr_zero(options));
    }
    std::shuffle(bits.begin(), bits.end(), rng);
    for (const int bit : bits) {
        const Vertex w = u ^ (Vertex{1} << bit);
        if (partner[w] != kUnmatched) continue;
        partner[u] = w;
        partner[w] = u;
        if (random_matching_rec(d, avail, partner, u + 1, rng)) return true;
        partner[u] = kUnmatched;
        partner[w] = kUnmatched;
    }
    return false;
}

}  // namespace

Factorization random_factorization(int d, std::uint64_t seed) {
    check_dimension(d);
    std::mt19937_64 rng(mix_seed(seed));
    const Vertex n = vertex_count(d);
    std::vector<std::uint32_t> avail(n, vertex_count(d) - 1);
    Factorization f{d, {}};
    for (int i = 0; i < d; ++i) {
        std::vector<Vertex> partner(n, kUnmatched);
        // The residual graph is regular bipartite, so a perfect matching
        // always exists and the randomized backtracking cannot fail.
        if (!random_matching_rec(d, avail, partner, 0, rng)) {
            throw Error("internal: residual graph lost its perfect matching");
        }
        for (Vertex v = 0; v < n; ++v) {
            const Vertex w = partner[v];
            if (v < w) {
                const Vertex mask = v ^ w;
                avail[v] &= ~mask;
                avail[w] &= ~mask;
            }
        }
        f.factors.push_back(PerfectMatching{d, std::move(partner)});
    }
    return f;
}

// ---------------------------------------------------------------------------
// Search targets.
// ---------------------------------------------------------------------------

SearchTarget SearchTarget::complete_bipartite(int k, int l) {
    SearchTarget t;
    t.kind = Kind::complete_bipartite;
    t.k = k;
    t.l = l;
    return t;
}

SearchTarget SearchTarget::semi_perfect(int k, int l) {
    SearchTarget t;
    t.kind = Kind::semi_perfect_positional;
    t.k = k;
    t.l = l;
    return t;
}

SearchTarget SearchTarget::max_cycles(int bound) {
    SearchTarget t;
    t.kind = Kind::all_pairs_max_cycles;
    t.bound = bound;
    return t;
}

SearchTarget SearchTarget::min_longest(int bound) {
    SearchTarget t;
    t.kind = Kind::min_longest_cycle_at_least;
    t.bound = bound;
    return t;
}

SearchTarget SearchTarget::parse(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw PreconditionError("invalid target spec: " + spec);
    const std::string name = spec.substr(0, colon);
    const std::string args = spec.substr(colon + 1);
    auto parse_int = [&](const std::string& s) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(s, &used);
            if (used != s.size()) throw PreconditionError("invalid target spec: " + spec);
            return v;
        } catch (const std::exception&) {
            throw PreconditionError("invalid target spec: " + spec);
        }
    };
    if (name == "complete-bipartite" || name == "k33-style") {
        const auto comma = args.find(',');
        if (comma == std::string::npos) throw PreconditionError("invalid target spec: " + spec);
        const int k = parse_int(args.substr(0, comma));
        const int l = parse_int(args.substr(comma + 1));
        return name == "complete-bipartite" ? complete_bipartite(k, l) : semi_perfect(k, l);
    }
    if (name == "max-cycles") return max_cycles(parse_int(args));
    if (name == "min-longest") return min_longest(parse_int(args));
    throw PreconditionError("unknown target kind: " + name);
}

std::string SearchTarget::to_string() const {
    switch (kind) {
        case Kind::complete_bipartite:
            return "complete-bipartite:" + std::to_string(k) + "," + std::to_string(l);
        case Kind::semi_perfect_positional:
            return "k33-style:" + std::to_string(k) + "," + std::to_string(l);
        case Kind::all_pairs_max_cycles: return "max-cycles:" + std::to_string(bound);
        case Kind::min_longest_cycle_at_least: return "min-longest:" + std::to_string(bound);
    }
    return "?";
}

bool SearchTarget::evaluate(const Factorization& f) const {
    switch (kind) {
        case Kind::complete_bipartite: {
            return is_complete_bipartite(perfection_graph(f), k, l).ok;
        }
        case Kind::semi_perfect_positional: {
            for (int i = 0; i < k; ++i) {
                for (int j = k; j < f.size(); ++j) {
                    if (!is_hamilton_pair(f.factors[i], f.factors[j])) return false;
                }
            }
            return true;
        }
        case Kind::all_pairs_max_cycles: return max_pair_cycle_count(f) <= bound;
        case Kind::min_longest_cycle_at_least: return min_longest_cycle(f) >= bound;
    }
    return false;
}

std::optional<int> SearchTarget::required_sign() const {
    if (kind == Kind::complete_bipartite || kind == Kind::semi_perfect_positional) {
        return (k * l) % 2 == 0 ? 1 : -1;
    }
    return std::nullopt;
}

namespace {

void check_target_for_dimension(const SearchTarget& target, int d) {
    switch (target.kind) {
        case SearchTarget::Kind::complete_bipartite:
        case SearchTarget::Kind::semi_perfect_positional:
            if (target.k < 1 || target.l < 1 || target.k + target.l != d) {
                throw PreconditionError("target part sizes must be positive and sum to d");
            }
            break;
        case SearchTarget::Kind::all_pairs_max_cycles:
            if (target.bound < 1) throw PreconditionError("cycle bound must be positive");
            break;
        case SearchTarget::Kind::min_longest_cycle_at_least:
            if (target.bound < 4) throw PreconditionError("cycle length bound must be at least 4");
            break;
    }
}

// ---------------------------------------------------------------------------
// Exhaustive direction-respecting composite engine.
// ---------------------------------------------------------------------------

struct CompositeSpace {
    int d = 0, k = 0, l = 0;
    std::vector<Factorization> base_low;   // ordered factorizations of Q_k
    std::vector<Factorization> base_high;  // ordered factorizations of Q_l
    Vertex low_slots = 0;                  // 2^l copies of Q_k
    Vertex high_slots = 0;                 // 2^k copies of Q_l
    std::vector<std::uint32_t> odometer;

    CompositeSpace(int d_, int k_) : d(d_), k(k_), l(d_ - k_) {
        base_low = all_factorizations(k, false);
        base_high = all_factorizations(l, false);
        low_slots = vertex_count(l);
        high_slots = vertex_count(k);
        odometer.assign(low_slots + high_slots, 0);
    }

    Factorization assemble() const {
        Factorization f{d, {}};
        std::vector<PerfectMatching> parts;
        for (int i = 0; i < k; ++i) {
            parts.clear();
            for (Vertex high = 0; high < low_slots; ++high) {
                parts.push_back(base_low[odometer[high]].factors[i]);
            }
            f.factors.push_back(assemble_low_block(d, k, parts));
        }
        for (int j = 0; j < l; ++j) {
            parts.clear();
            for (Vertex low = 0; low < high_slots; ++low) {
                parts.push_back(base_high[odometer[low_slots + low]].factors[j]);
            }
            f.factors.push_back(assemble_high_block(d, k, parts));
        }
        return f;
    }

    // Little-endian increment; false when the odometer wraps around.
    bool advance() {
        for (std::size_t slot = 0; slot < odometer.size(); ++slot) {
            const std::uint32_t limit = slot < low_slots
                                            ? static_cast<std::uint32_t>(base_low.size())
                                            : static_cast<std::uint32_t>(base_high.size());
            if (++odometer[slot] < limit) return true;
            odometer[slot] = 0;
        }
        return false;
    }
};

FactorizationSearchOutcome run_composite_engine(int d, const SearchTarget& target,
                                                const FactorizationSearchOptions& options,
                                                const SearchBudget& budget) {
    const int k = *options.direction_respecting_split;
    if (k < 1 || k >= d) throw PreconditionError("split must satisfy 1 <= k < d");
    if (k > 3 || d - k > 3) {
        throw BlockTooLargeError("composite enumeration requires both blocks of dimension <= 3");
    }
    CompositeSpace space(d, k);
    std::uint64_t nodes = 0;

    if (options.resume_from) {
        const auto j = load_json_file(*options.resume_from);
        try {
            if (j.at("engine").get<std::string>() != "direction-respecting-composite" ||
                j.at("d").get<int>() != d || j.at("split").get<int>() != k ||
                j.at("target").get<std::string>() != target.to_string() ||
                j.at("sign_pruning").get<bool>() != options.use_sign_pruning) {
                throw CheckpointMismatchError("checkpoint does not match this search");
            }
            const auto odo = j.at("odometer").get<std::vector<std::uint32_t>>();
            if (odo.size() != space.odometer.size()) {
                throw CheckpointMismatchError("checkpoint odometer has wrong shape");
            }
            space.odometer = odo;
            nodes = j.at("nodes").get<std::uint64_t>();
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("malformed checkpoint: ") + e.what());
        }
    }

    const auto write_checkpoint = [&]() {
        if (!options.checkpoint_out) return;
        nlohmann::json j{{"version", 1},
                         {"engine", "direction-respecting-composite"},
                         {"d", d},
                         {"split", k},
                         {"target", target.to_string()},
                         {"sign_pruning", options.use_sign_pruning},
                         {"seed", options.seed},
                         {"nodes", nodes},
                         {"odometer", space.odometer}};
        atomic_write(*options.checkpoint_out, j.dump() + "\n");
    };

    const std::optional<int> required =
        options.use_sign_pruning ? target.required_sign() : std::nullopt;
    const std::uint64_t start_nodes = nodes;
    std::optional<Clock::time_point> deadline;
    if (budget.max_seconds) {
        deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                      std::chrono::duration<double>(*budget.max_seconds));
    }

    while (true) {
        if ((budget.max_nodes && nodes - start_nodes >= *budget.max_nodes) ||
            (deadline && (nodes & 0xffu) == 0 && Clock::now() > *deadline)) {
            write_checkpoint();
            return {SearchStatus::budget_exceeded, std::nullopt, nodes};
        }
        Factorization f = space.assemble();
        ++nodes;
        const bool pruned = required && factorization_sign(f) != *required;
        if (!pruned && target.evaluate(f)) {
            f.validate();
            if (!target.evaluate(f)) throw Error("internal: witness failed re-verification");
            return {SearchStatus::found, std::move(f), nodes};
        }
        if (!space.advance()) {
            return {SearchStatus::exhausted_no_witness, std::nullopt, nodes};
        }
    }
}

// ---------------------------------------------------------------------------
// Randomized switch-walk engine.
// ---------------------------------------------------------------------------

FactorizationSearchOutcome run_walk_engine(int d, const SearchTarget& target,
                                           const FactorizationSearchOptions& options,
                                           const SearchBudget& budget) {
    Factorization start = options.start ? *options.start : directional_factorization(d);
    if (options.start) {
        start.validate();
        if (start.d != d) throw DimensionMismatchError("start factorization has wrong dimension");
    }

    std::mt19937_64 rng(mix_seed(options.seed));
    Factorization current = start;
    std::uint64_t nodes = 0;
    std::uint64_t segment = 0;
    std::uint64_t steps_in_segment = 0;

    const std::optional<int> required =
        options.use_sign_pruning ? target.required_sign() : std::nullopt;

    // The factorization sign is invariant under switches, so a whole walk
    // segment can be skipped when its starting sign cannot match the target.
    bool segment_viable = true;
    const auto seed_segment = [&]() {
        steps_in_segment = 0;
        segment_viable = !required || factorization_sign(current) == *required;
    };

    if (options.resume_from) {
        const auto j = load_json_file(*options.resume_from);
        try {
            if (j.at("engine").get<std::string>() != "switch-walk" || j.at("d").get<int>() != d ||
                j.at("target").get<std::string>() != target.to_string() ||
                j.at("seed").get<std::uint64_t>() != options.seed) {
                throw CheckpointMismatchError("checkpoint does not match this search");
            }
            nodes = j.at("nodes").get<std::uint64_t>();
            segment = j.at("segment").get<std::uint64_t>();
            steps_in_segment = j.at("steps_in_segment").get<std::uint64_t>();
            current = factorization_from_json(j.at("current"));
            std::istringstream state(j.at("rng").get<std::string>());
            state >> rng;
            if (!state) throw CheckpointMismatchError("cannot restore RNG state");
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("malformed checkpoint: ") + e.what());
        }
        segment_viable = !required || factorization_sign(current) == *required;
    } else {
        seed_segment();
    }

    const auto write_checkpoint = [&]() {
        if (!options.checkpoint_out) return;
        std::ostringstream state;
        state << rng;
        nlohmann::json j{{"version", 1},
                         {"engine", "switch-walk"},
                         {"d", d},
                         {"target", target.to_string()},
                         {"seed", options.seed},
                         {"nodes", nodes},
                         {"segment", segment},
                         {"steps_in_segment", steps_in_segment},
                         {"rng", state.str()},
                         {"current", to_json(current)}};
        atomic_write(*options.checkpoint_out, j.dump() + "\n");
    };

    const std::uint64_t start_nodes = nodes;
    std::optional<Clock::time_point> deadline;
    if (budget.max_seconds) {
        deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                      std::chrono::duration<double>(*budget.max_seconds));
    }

    while (true) {
        if ((budget.max_nodes && nodes - start_nodes >= *budget.max_nodes) ||
            (deadline && (nodes & 0xffu) == 0 && Clock::now() > *deadline)) {
            write_checkpoint();
            return {SearchStatus::budget_exceeded, std::nullopt, nodes};
        }
        ++nodes;
        if (segment_viable && target.evaluate(current)) {
            current.validate();
            if (!target.evaluate(current)) throw Error("internal: witness failed re-verification");
            return {SearchStatus::found, std::move(current), nodes};
        }
        const bool want_restart =
            !segment_viable ||
            (options.restart_interval > 0 && steps_in_segment >= options.restart_interval);
        if (want_restart) {
            ++segment;
            // Even restarts return to the start; odd ones draw a random
            // factorization so both sign classes stay reachable.
            current = (segment % 2 == 0)
                          ? start
                          : random_factorization(d, mix_seed(options.seed ^ (segment * 2654435761ULL)));
            seed_segment();
            continue;
        }
        const auto moves = find_switchable_squares(current);
        if (moves.empty()) {
            ++segment;
            current = (segment % 2 == 0)
                          ? start
                          : random_factorization(d, mix_seed(options.seed ^ (segment * 2654435761ULL)));
            seed_segment();
            continue;
        }
        std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
        apply_switch_in_place(current, moves[pick(rng)]);
        ++steps_in_segment;
    }
}

}  // namespace

FactorizationSearchOutcome search_factorization(int d, const SearchTarget& target,
                                                const FactorizationSearchOptions& options,
                                                const SearchBudget& budget) {
    check_dimension(d);
    if (d < 2) throw PreconditionError("factorization search requires d >= 2");
    check_target_for_dimension(target, d);
    if (options.direction_respecting_split) {
        return run_composite_engine(d, target, options, budget);
    }
    return run_walk_engine(d, target, options, budget);
}

// ---------------------------------------------------------------------------
// Pair-union metrics.
// ---------------------------------------------------------------------------

int min_longest_cycle(const Factorization& f) {
    if (f.size() < 2) throw PreconditionError("metric requires at least two factors");
    int best = INT_MAX;
    for (int i = 0; i < f.size(); ++i) {
        for (int j = i + 1; j < f.size(); ++j) {
            best = std::min(best, union_cycles(f.factors[i], f.factors[j]).longest());
        }
    }
    return best;
}

int max_pair_cycle_count(const Factorization& f) {
    if (f.size() < 2) throw PreconditionError("metric requires at least two factors");
    int worst = 0;
    for (int i = 0; i < f.size(); ++i) {
        for (int j = i + 1; j < f.size(); ++j) {
            worst = std::max(worst, union_cycles(f.factors[i], f.factors[j]).cycle_count());
        }
    }
    return worst;
}

namespace {

struct DisjointSet {
    std::vector<Vertex> parent;
    Vertex components;

    explicit DisjointSet(Vertex n) : parent(n), components(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }

    Vertex find(Vertex v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    }

    void unite(Vertex a, Vertex b) {
        a = find(a);
        b = find(b);
        if (a != b) {
            parent[a] = b;
            --components;
        }
    }
};

}  // namespace

std::optional<std::vector<int>> find_disconnected_subset(const Factorization& f, int r) {
    const int d = f.size();
    if (r < 1 || r > d) throw PreconditionError("subset size out of range");
    const Vertex n = vertex_count(f.d);
    // Gosper's hack over d-bit masks of popcount r.
    std::uint32_t subset = (std::uint32_t{1} << r) - 1;
    const std::uint32_t limit = std::uint32_t{1} << d;
    while (subset < limit) {
        DisjointSet dsu(n);
        for (int i = 0; i < d; ++i) {
            if (!(subset & (std::uint32_t{1} << i))) continue;
            for (Vertex v = 0; v < n; ++v) dsu.unite(v, f.factors[i].partner[v]);
        }
        if (dsu.components > 1) {
            std::vector<int> ids;
            for (int i = 0; i < d; ++i) {
                if (subset & (std::uint32_t{1} << i)) ids.push_back(i + 1);
            }
            return ids;
        }
        const std::uint32_t low = subset & -subset;
        const std::uint32_t carry = subset + low;
        subset = carry | (((subset ^ carry) / low) >> 2);
    }
    return std::nullopt;
}

int union_connectivity_threshold(const Factorization& f) {
    for (int r = 1; r <= f.size(); ++r) {
        if (!find_disconnected_subset(f, r)) return r;
    }
    return f.size();  // the full union is Q_d, which is connected
}

}  // namespace cubefact
