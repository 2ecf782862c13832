#pragma once
// Canonical JSON formats: factorizations, switch-move sequences, directed
// Hamilton decomposition certificates, and file digests.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "cubefact/decomposition.hpp"
#include "cubefact/matching.hpp"
#include "cubefact/sign_switch.hpp"

namespace cubefact {

// {"d": d, "factors": [[p_0, ..., p_{2^d-1}], ...]}
nlohmann::json to_json(const Factorization& f);
Factorization factorization_from_json(const nlohmann::json& j);  // validates, throws ParseError

void save_factorization(const std::filesystem::path& path, const Factorization& f);
Factorization load_factorization(const std::filesystem::path& path);

// {"anchor": v, "dirs": [a, b], "s": s, "t": t}
nlohmann::json to_json(const SwitchMove& move);
SwitchMove switch_move_from_json(const nlohmann::json& j);

nlohmann::json to_json(const std::vector<SwitchMove>& moves);
std::vector<SwitchMove> switch_sequence_from_json(const nlohmann::json& j);
void save_switch_sequence(const std::filesystem::path& path, const std::vector<SwitchMove>& moves);
std::vector<SwitchMove> load_switch_sequence(const std::filesystem::path& path);

// {"kind": "directed-hamilton-decomposition", "d": d, "cycles": [[...], ...]}
nlohmann::json to_json(const DirectedHamiltonDecomposition& h);
DirectedHamiltonDecomposition directed_decomposition_from_json(const nlohmann::json& j);

void save_directed_decomposition(const std::filesystem::path& path,
                                 const DirectedHamiltonDecomposition& h);
DirectedHamiltonDecomposition load_directed_decomposition(const std::filesystem::path& path);

// Write text atomically: temp file in the same directory, then rename.
void atomic_write(const std::filesystem::path& path, const std::string& text);

nlohmann::json load_json_file(const std::filesystem::path& path);  // throws ParseError

std::uint64_t fnv1a64(const std::string& bytes);
std::string file_digest_hex(const std::filesystem::path& path);

}  // namespace cubefact
