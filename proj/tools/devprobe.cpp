// Scratch driver used while bringing the library up; replaced by the real CLI.
#include <chrono>
#include <iostream>

#include "cubefact/constructions.hpp"
#include "cubefact/json_io.hpp"
#include "cubefact/perfection.hpp"
#include "cubefact/search.hpp"
#include "cubefact/sign_switch.hpp"

using namespace cubefact;

int main(int argc, char** argv) {
    const std::string mode = argc > 1 ? argv[1] : "counts";

    if (mode == "counts") {
        std::cout << "PM(Q_2) = " << count_perfect_matchings(2) << "\n";
        std::cout << "PM(Q_3) = " << count_perfect_matchings(3) << "\n";
        std::cout << "PM(Q_4) = " << count_perfect_matchings(4) << "\n";
        std::cout << "fact(Q_2, unordered) = "
                  << enumerate_factorizations(2, true, [](const Factorization&) { return true; })
                  << "\n";
        std::cout << "fact(Q_3, unordered) = "
                  << enumerate_factorizations(3, true, [](const Factorization&) { return true; })
                  << "\n";
        std::cout << "fact(Q_3, ordered) = "
                  << enumerate_factorizations(3, false, [](const Factorization&) { return true; })
                  << "\n";
    } else if (mode == "dhd") {
        const int d = argc > 2 ? std::stoi(argv[2]) : 4;
        SearchBudget budget;
        budget.deterministic = argc > 3 ? std::string(argv[3]) != "random" : true;
        const auto t0 = std::chrono::steady_clock::now();
        const auto outcome = search_directed_hamilton_decomposition(d, budget, 1);
        const auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
        std::cout << "d=" << d << " status=" << to_string(outcome.status)
                  << " nodes=" << outcome.nodes_explored << " time=" << dt.count() << "s\n";
        if (outcome.witness && argc > 4) {
            save_directed_decomposition(argv[4], *outcome.witness);
            std::cout << "saved to " << argv[4] << "\n";
        }
    } else if (mode == "signs") {
        for (int d = 2; d <= 6; ++d) {
            std::cout << "sign(directional Q_" << d << ") = "
                      << factorization_sign(directional_factorization(d)) << "\n";
        }
    } else if (mode == "k31") {
        SearchBudget budget;
        budget.max_nodes = argc > 2 ? std::stoull(argv[2]) : 2000000;
        FactorizationSearchOptions options;
        options.seed = argc > 3 ? std::stoull(argv[3]) : 1;
        const auto t0 = std::chrono::steady_clock::now();
        const auto outcome =
            search_factorization(4, SearchTarget::complete_bipartite(3, 1), options, budget);
        const auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
        std::cout << "status=" << to_string(outcome.status) << " nodes=" << outcome.nodes_explored
                  << " time=" << dt.count() << "s\n";
        if (outcome.witness) {
            const auto check = is_complete_bipartite(perfection_graph(*outcome.witness), 3, 1);
            std::cout << "witness sign=" << factorization_sign(*outcome.witness) << " parts ok="
                      << check.ok << "\n";
            std::cout << to_json(*outcome.witness).dump() << "\n";
        }
    }
    return 0;
}
