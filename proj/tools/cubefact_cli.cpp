// Command-line surface: construct / verify / analyze / enumerate / search /
// derive-switches / replay-switches, with JSON and DOT outputs.
//
// Exit codes: 0 success, 2 parse or I/O error, 3 expectation failed or
// search exhausted with no witness, 4 open problem, 5 budget exceeded.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cubefact/constructions.hpp"
#include "cubefact/json_io.hpp"
#include "cubefact/perfection.hpp"
#include "cubefact/search.hpp"
#include "cubefact/sign_switch.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitCheckFailed = 3;
constexpr int kExitOpenProblem = 4;
constexpr int kExitBudget = 5;

using nlohmann::json;
using namespace cubefact;

struct GlobalOptions {
    std::uint64_t seed = 0;
    int threads = 1;
    bool deterministic = false;
    std::string cert_dir;
    std::string report_path;
};

struct RunReport {
    json body;
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

    RunReport(int argc, char** argv, const GlobalOptions& global) {
        json cmd = json::array();
        for (int i = 0; i < argc; ++i) cmd.push_back(argv[i]);
        body["command"] = std::move(cmd);
        body["seed"] = global.seed;
        body["results"] = json::array();
        body["inputs"] = json::object();
    }

    void input(const std::string& name, const std::filesystem::path& path) {
        body["inputs"][name] = {{"path", path.string()}, {"digest", file_digest_hex(path)}};
    }

    void result(const std::string& check, bool pass, json certificate = {}) {
        json r{{"check", check}, {"pass", pass}};
        if (!certificate.is_null()) r["certificate"] = std::move(certificate);
        body["results"].push_back(std::move(r));
    }

    void finish(const GlobalOptions& global, int exit_code) {
        body["exit_code"] = exit_code;
        body["elapsed_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - started)
                                 .count();
        if (!global.report_path.empty()) {
            atomic_write(global.report_path, body.dump(2) + "\n");
        }
    }
};

CertificateCache make_cache(const GlobalOptions& global) {
    return CertificateCache(global.cert_dir.empty() ? CertificateCache::default_dir()
                                                    : std::filesystem::path(global.cert_dir));
}

SearchBudget make_budget(std::uint64_t nodes, double seconds, bool deterministic) {
    SearchBudget budget;
    if (nodes > 0) budget.max_nodes = nodes;
    if (seconds > 0) budget.max_seconds = seconds;
    budget.deterministic = deterministic;
    return budget;
}

json summarize_perfection(const Factorization& f, int threads) {
    const auto g = perfection_graph(f, threads);
    json edges = json::array();
    for (int i = 0; i < g.n; ++i) {
        for (int j = i + 1; j < g.n; ++j) {
            if (g.adjacent(i, j)) edges.push_back(json::array({i + 1, j + 1}));
        }
    }
    return json{{"factors", g.n},
                {"hamilton_pairs", g.edge_count()},
                {"edges", std::move(edges)},
                {"degree_sequence", g.degree_sequence()}};
}

int cmd_construct(const GlobalOptions& global, RunReport& report, int k, int l,
                  const std::string& out_path, const std::string& dot_path) {
    const auto cache = make_cache(global);
    Factorization f;
    try {
        f = construct_semi_perfect(k, l, &cache);
    } catch (const OpenProblemError& e) {
        std::cerr << "open problem: " << e.what() << "\n";
        report.result("construct", false, json{{"reason", e.what()}});
        return kExitOpenProblem;
    }
    f.validate();
    save_factorization(out_path, f);

    const auto g = perfection_graph(f, global.threads);
    const auto check = is_complete_bipartite(g, k, l);
    std::cout << "wrote " << out_path << " (d=" << f.d << ")\n";
    std::cout << "G[F] = K_{" << k << "," << l << "}: " << (check.ok ? "yes" : "NO") << "\n";
    std::cout << "sign = " << factorization_sign(f) << "\n";
    if (!dot_path.empty()) atomic_write(dot_path, to_dot(g));
    report.result("construct", check.ok, summarize_perfection(f, global.threads));
    return check.ok ? kExitOk : kExitCheckFailed;
}

int cmd_verify(const GlobalOptions& global, RunReport& report, const std::string& path,
               std::vector<int> expect_kl, bool expect_bipartite, int expect_dr,
               std::optional<int> expect_sign) {
    const Factorization f = load_factorization(path);  // validates all invariants
    report.input("factorization", path);
    std::cout << "invariants: ok (d=" << f.d << ", " << f.size() << " factors)\n";
    report.result("invariants", true);
    bool all_ok = true;

    if (!expect_kl.empty()) {
        const auto check = is_complete_bipartite(perfection_graph(f, global.threads),
                                                 expect_kl[0], expect_kl[1]);
        json cert;
        if (check.ok) {
            cert = json{{"part_a", check.part_a}, {"part_b", check.part_b}};
        } else {
            cert = json{{"reason", check.reason}};
            if (check.missing_cross_edge) {
                cert["missing_cross_pair"] = {check.missing_cross_edge->first + 1,
                                              check.missing_cross_edge->second + 1};
            }
            if (check.unexpected_edge) {
                cert["unexpected_pair"] = {check.unexpected_edge->first + 1,
                                           check.unexpected_edge->second + 1};
            }
        }
        std::cout << "complete-bipartite K_{" << expect_kl[0] << "," << expect_kl[1]
                  << "}: " << (check.ok ? "pass" : "FAIL") << "\n";
        if (!check.ok) std::cout << "  " << check.reason << "\n";
        report.result("complete-bipartite", check.ok, cert);
        all_ok = all_ok && check.ok;
    }
    if (expect_bipartite) {
        const auto cert = is_bipartite(perfection_graph(f, global.threads));
        std::cout << "bipartite perfection graph: " << (cert.bipartite ? "pass" : "FAIL") << "\n";
        report.result("bipartite-perfection-graph", cert.bipartite,
                      cert.bipartite ? json{{"coloring", cert.coloring}}
                                     : json{{"odd_cycle", cert.odd_cycle}});
        all_ok = all_ok && cert.bipartite;
    }
    if (expect_dr > 0) {
        const bool ok = is_direction_respecting(f, expect_dr);
        std::cout << "direction respecting at split " << expect_dr << ": "
                  << (ok ? "pass" : "FAIL") << "\n";
        report.result("direction-respecting", ok);
        all_ok = all_ok && ok;
    }
    if (expect_sign) {
        const int sign = factorization_sign(f);
        const bool ok = sign == *expect_sign;
        std::cout << "sign " << (ok ? "pass" : "FAIL") << " (computed " << sign << ")\n";
        report.result("sign", ok, json{{"computed", sign}, {"expected", *expect_sign}});
        all_ok = all_ok && ok;
    }
    return all_ok ? kExitOk : kExitCheckFailed;
}

int cmd_analyze(const GlobalOptions& global, RunReport& report, const std::string& path,
                const std::vector<std::string>& metrics, const std::string& dot_path,
                const std::vector<int>& dot_union, const std::string& dot_union_path) {
    const Factorization f = load_factorization(path);
    report.input("factorization", path);
    auto wants = [&](const std::string& m) {
        return metrics.empty() ||
               std::find(metrics.begin(), metrics.end(), m) != metrics.end() ||
               std::find(metrics.begin(), metrics.end(), "all") != metrics.end();
    };

    json out{{"d", f.d}};
    if (wants("f")) out["f"] = min_longest_cycle(f);
    if (wants("cycles")) out["max_pair_cycles"] = max_pair_cycle_count(f);
    if (wants("sign")) out["sign"] = factorization_sign(f);
    if (wants("connectivity")) {
        const int r = union_connectivity_threshold(f);
        out["connectivity_threshold"] = r;
        if (r > 1) {
            if (const auto witness = find_disconnected_subset(f, r - 1)) {
                out["disconnected_subset"] = *witness;
            }
        }
    }
    if (wants("pairs")) {
        json pairs = json::array();
        for (int i = 0; i < f.size(); ++i) {
            for (int j = i + 1; j < f.size(); ++j) {
                const auto cs = union_cycles(f.factors[i], f.factors[j]);
                pairs.push_back(json{{"i", i + 1},
                                     {"j", j + 1},
                                     {"cycles", cs.cycle_count()},
                                     {"lengths", cs.lengths}});
            }
        }
        out["pairs"] = std::move(pairs);
    }
    if (wants("perfection")) out["perfection"] = summarize_perfection(f, global.threads);

    if (!dot_path.empty()) atomic_write(dot_path, to_dot(perfection_graph(f, global.threads)));
    if (!dot_union.empty()) {
        const auto cs = union_cycles(f.factors[dot_union[0] - 1], f.factors[dot_union[1] - 1]);
        std::string dot = "graph pair_union {\n";
        dot += "  // cycle lengths:";
        for (int len : cs.lengths) dot += " " + std::to_string(len);
        dot += "\n";
        for (const auto& cycle : cs.components) {
            for (std::size_t i = 0; i < cycle.size(); ++i) {
                dot += "  v" + std::to_string(cycle[i]) + " -- v" +
                       std::to_string(cycle[(i + 1) % cycle.size()]) + ";\n";
            }
        }
        dot += "}\n";
        atomic_write(dot_union_path.empty() ? "pair_union.dot" : dot_union_path, dot);
    }

    std::cout << out.dump(2) << "\n";
    report.body["metrics"] = out;
    return kExitOk;
}

int cmd_enumerate(RunReport& report, int d, bool up_to_ordering, bool count_only,
                  std::uint64_t limit, const std::string& out_path) {
    std::ofstream stream;
    if (!out_path.empty()) {
        stream.open(out_path, std::ios::trunc);
        if (!stream) {
            std::cerr << "cannot open " << out_path << "\n";
            return kExitParse;
        }
    }
    std::uint64_t emitted = 0;
    const std::uint64_t count =
        enumerate_factorizations(d, up_to_ordering, [&](const Factorization& f) {
            ++emitted;
            if (stream.is_open()) stream << to_json(f).dump() << "\n";
            return limit == 0 || emitted < limit;
        });
    if (count_only) {
        std::cout << count << "\n";
    } else {
        std::cout << "factorizations: " << count << (limit && emitted >= limit ? " (limit hit)" : "")
                  << "\n";
    }
    report.result("enumerate", true, json{{"count", count}});
    return kExitOk;
}

int search_exit(SearchStatus status) {
    switch (status) {
        case SearchStatus::found: return kExitOk;
        case SearchStatus::exhausted_no_witness: return kExitCheckFailed;
        case SearchStatus::budget_exceeded: return kExitBudget;
    }
    return kExitParse;
}

int cmd_search_dhd(const GlobalOptions& global, RunReport& report, int d, std::uint64_t nodes,
                   double seconds, bool rotational, const std::string& out_path) {
    const auto budget = make_budget(nodes, seconds, global.deterministic || (nodes == 0 && seconds == 0));
    const auto outcome = rotational
                             ? search_rotational_decomposition(d, budget, global.seed)
                             : search_directed_hamilton_decomposition(d, budget, global.seed);
    std::cout << "status: " << to_string(outcome.status) << "\n";
    std::cout << "nodes: " << outcome.nodes_explored << "\n";
    if (outcome.witness && !out_path.empty()) {
        save_directed_decomposition(out_path, *outcome.witness);
        std::cout << "wrote " << out_path << "\n";
    }
    report.result("directed-hamilton", outcome.status == SearchStatus::found,
                  json{{"status", to_string(outcome.status)}, {"nodes", outcome.nodes_explored}});
    return search_exit(outcome.status);
}

int cmd_search_factorization(const GlobalOptions& global, RunReport& report, int d,
                             const std::string& target_spec, int dr_split, std::uint64_t nodes,
                             double seconds, const std::string& start_path,
                             const std::string& checkpoint, const std::string& resume,
                             bool no_sign_pruning, std::uint64_t restart_interval,
                             const std::string& out_path) {
    const auto target = SearchTarget::parse(target_spec);
    FactorizationSearchOptions options;
    options.seed = global.seed;
    options.use_sign_pruning = !no_sign_pruning;
    options.restart_interval = restart_interval;
    if (dr_split > 0) options.direction_respecting_split = dr_split;
    if (!start_path.empty()) options.start = load_factorization(start_path);
    if (!checkpoint.empty()) options.checkpoint_out = checkpoint;
    if (!resume.empty()) options.resume_from = resume;

    const auto outcome =
        search_factorization(d, target, options, make_budget(nodes, seconds, global.deterministic));
    std::cout << "status: " << to_string(outcome.status) << "\n";
    std::cout << "nodes: " << outcome.nodes_explored << "\n";
    if (outcome.witness && !out_path.empty()) {
        save_factorization(out_path, *outcome.witness);
        std::cout << "wrote " << out_path << "\n";
    }
    report.result("search", outcome.status == SearchStatus::found,
                  json{{"status", to_string(outcome.status)},
                       {"nodes", outcome.nodes_explored},
                       {"target", target.to_string()}});
    return search_exit(outcome.status);
}

int cmd_derive_switches(RunReport& report, const std::string& path, int split,
                        const std::string& out_path) {
    const Factorization f = load_factorization(path);
    report.input("factorization", path);
    const auto moves = derive_switch_sequence(f, split);
    // Replay as a self-check before writing anything.
    const Factorization replayed = replay_switches(directional_factorization(f.d), moves);
    const bool ok = replayed == f;
    std::cout << "moves: " << moves.size() << ", replay reproduces input: " << (ok ? "yes" : "NO")
              << "\n";
    if (!out_path.empty()) save_switch_sequence(out_path, moves);
    report.result("derive-switches", ok, json{{"moves", moves.size()}});
    return ok ? kExitOk : kExitCheckFailed;
}

int cmd_replay_switches(RunReport& report, int d, const std::string& moves_path,
                        const std::string& start_path, const std::string& out_path) {
    const auto moves = load_switch_sequence(moves_path);
    report.input("moves", moves_path);
    Factorization f = start_path.empty() ? directional_factorization(d)
                                         : load_factorization(start_path);
    f = replay_switches(std::move(f), moves);
    f.validate();
    if (!out_path.empty()) save_factorization(out_path, f);
    std::cout << "replayed " << moves.size() << " switches (d=" << f.d
              << ", sign=" << factorization_sign(f) << ")\n";
    report.result("replay-switches", true, json{{"moves", moves.size()}});
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-semi-perfect 1-factorizations of the hypercube: constructions, verification, "
                 "and search"};
    app.require_subcommand(1);

    GlobalOptions global;
    app.add_option("--seed", global.seed, "seed for all randomized components");
    app.add_option("--threads", global.threads, "worker threads for pair checks")
        ->check(CLI::Range(1, 256));
    app.add_flag("--deterministic", global.deterministic,
                 "canonical search order, single worker");
    app.add_option("--cert-cache", global.cert_dir, "directory for decomposition certificates");
    app.add_option("--report", global.report_path, "write a JSON run report to this path");

    // construct
    auto* construct = app.add_subcommand("construct", "build a factorization with G[F] = K_{k,l}");
    int ck = 0, cl = 0;
    std::string construct_out = "factorization.json", construct_dot;
    construct->add_option("--k", ck, "first part size")->required();
    construct->add_option("--l", cl, "second part size")->required();
    construct->add_option("--out", construct_out, "output factorization path");
    construct->add_option("--dot", construct_dot, "write perfection graph DOT here");

    // verify
    auto* verify = app.add_subcommand("verify", "validate a factorization file and expectations");
    std::string verify_path;
    std::vector<int> expect_kl;
    bool expect_bipartite = false;
    int expect_dr = 0;
    int expect_sign_value = 0;
    bool has_expect_sign = false;
    verify->add_option("file", verify_path, "factorization JSON")->required();
    verify->add_option("--expect-complete-bipartite", expect_kl, "expected part sizes k l")
        ->expected(2);
    verify->add_flag("--expect-bipartite-perfection-graph", expect_bipartite,
                     "require G[F] bipartite");
    verify->add_option("--expect-direction-respecting", expect_dr, "required split k");
    auto* sign_opt =
        verify->add_option("--expect-sign", expect_sign_value, "required factorization sign (+1/-1)");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "compute metrics of a factorization file");
    std::string analyze_path, analyze_dot, analyze_union_dot;
    std::vector<std::string> analyze_metrics;
    std::vector<int> analyze_union;
    analyze->add_option("file", analyze_path, "factorization JSON")->required();
    analyze->add_option("--metric", analyze_metrics,
                        "metrics: f, cycles, sign, connectivity, pairs, perfection, all");
    analyze->add_option("--dot", analyze_dot, "write perfection graph DOT here");
    analyze->add_option("--dot-union", analyze_union, "factor pair i j for a union DOT")
        ->expected(2);
    analyze->add_option("--dot-union-out", analyze_union_dot, "union DOT output path");

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "enumerate 1-factorizations of Q_d (d <= 4)");
    int ed = 3;
    bool e_up_to_ordering = false, e_count = false;
    std::uint64_t e_limit = 0;
    std::string e_out;
    enumerate->add_option("--d", ed, "dimension")->required();
    enumerate->add_flag("--up-to-ordering", e_up_to_ordering,
                        "one representative per unordered partition");
    enumerate->add_flag("--count", e_count, "print only the count");
    enumerate->add_option("--limit", e_limit, "stop after this many factorizations");
    enumerate->add_option("--out", e_out, "write factorizations as JSON lines");

    // search
    auto* search = app.add_subcommand("search", "search engines");
    search->require_subcommand(1);

    auto* sdhd = search->add_subcommand("directed-hamilton",
                                        "directed Hamilton decomposition backtracking");
    int sd = 4;
    std::uint64_t s_nodes = 0;
    double s_seconds = 0;
    bool s_rotational = false;
    std::string sdhd_out;
    sdhd->add_option("--d", sd, "dimension")->required();
    sdhd->add_option("--budget-nodes", s_nodes, "node budget (0 = unbounded)");
    sdhd->add_option("--budget-seconds", s_seconds, "time budget (0 = unbounded)");
    sdhd->add_flag("--rotational", s_rotational,
                   "restrict to decompositions generated by one cycle's coordinate rotations");
    sdhd->add_option("--out", sdhd_out, "write the found certificate here");

    auto* sfact = search->add_subcommand("factorization", "targeted factorization search");
    int fd = 4, f_split = 0;
    std::uint64_t f_nodes = 0, f_restart = 20000;
    double f_seconds = 0;
    std::string f_target, f_start, f_checkpoint, f_resume, f_out;
    bool f_no_prune = false;
    sfact->add_option("--d", fd, "dimension")->required();
    sfact->add_option("--target", f_target,
                      "complete-bipartite:K,L | k33-style:K,L | max-cycles:C | min-longest:L")
        ->required();
    sfact->add_option("--direction-respecting", f_split,
                      "exhaustive per-copy composition at this split");
    sfact->add_option("--budget-nodes", f_nodes, "node budget (0 = unbounded)");
    sfact->add_option("--budget-seconds", f_seconds, "time budget (0 = unbounded)");
    sfact->add_option("--start", f_start, "switch-walk start factorization file");
    sfact->add_option("--checkpoint", f_checkpoint, "write a resumable checkpoint here on budget");
    sfact->add_option("--resume", f_resume, "resume from this checkpoint");
    sfact->add_flag("--no-sign-pruning", f_no_prune, "disable the sign obstruction filter");
    sfact->add_option("--restart-interval", f_restart, "switch-walk steps between restarts");
    sfact->add_option("--out", f_out, "write the witness factorization here");

    // derive-switches / replay-switches
    auto* derive = app.add_subcommand("derive-switches",
                                      "switch sequence from the directional factorization");
    std::string derive_path, derive_out;
    int derive_split = 0;
    derive->add_option("file", derive_path, "factorization JSON")->required();
    derive->add_option("--split", derive_split, "direction-respecting split k")->required();
    derive->add_option("--out", derive_out, "write the moves here");

    auto* replay = app.add_subcommand("replay-switches", "apply a switch sequence");
    std::string replay_moves, replay_start, replay_out;
    int replay_d = 0;
    replay->add_option("--d", replay_d, "dimension")->required();
    replay->add_option("--moves", replay_moves, "switch sequence JSON")->required();
    replay->add_option("--start", replay_start, "start factorization (default directional)");
    replay->add_option("--out", replay_out, "write the result here");

    CLI11_PARSE(app, argc, argv);

    RunReport report(argc, argv, global);
    int code = kExitOk;
    try {
        if (*construct) {
            code = cmd_construct(global, report, ck, cl, construct_out, construct_dot);
        } else if (*verify) {
            has_expect_sign = sign_opt->count() > 0;
            code = cmd_verify(global, report, verify_path, expect_kl, expect_bipartite, expect_dr,
                              has_expect_sign ? std::optional<int>(expect_sign_value)
                                              : std::nullopt);
        } else if (*analyze) {
            code = cmd_analyze(global, report, analyze_path, analyze_metrics, analyze_dot,
                               analyze_union, analyze_union_dot);
        } else if (*enumerate) {
            code = cmd_enumerate(report, ed, e_up_to_ordering, e_count, e_limit, e_out);
        } else if (*sdhd) {
            code = cmd_search_dhd(global, report, sd, s_nodes, s_seconds, s_rotational, sdhd_out);
        } else if (*sfact) {
            code = cmd_search_factorization(global, report, fd, f_target, f_split, f_nodes,
                                            f_seconds, f_start, f_checkpoint, f_resume, f_no_prune,
                                            f_restart, f_out);
        } else if (*derive) {
            code = cmd_derive_switches(report, derive_path, derive_split, derive_out);
        } else if (*replay) {
            code = cmd_replay_switches(report, replay_d, replay_moves, replay_start, replay_out);
        }
    } catch (const OpenProblemError& e) {
        std::cerr << "open problem: " << e.what() << "\n";
        code = kExitOpenProblem;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        code = kExitParse;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        code = kExitCheckFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        code = kExitParse;
    }
    report.finish(global, code);
    return code;
}
