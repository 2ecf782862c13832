#include "cubefact/json_io.hpp"

#include <fstream>
#include <sstream>

namespace cubefact {

using nlohmann::json;

json to_json(const Factorization& f) {
    json factors = json::array();
    for (const auto& m : f.factors) factors.push_back(m.partner);
    return json{{"d", f.d}, {"factors", std::move(factors)}};
}

Factorization factorization_from_json(const json& j) {
    try {
        Factorization f;
        f.d = j.at("d").get<int>();
        check_dimension(f.d);
        const auto& factors = j.at("factors");
        if (!factors.is_array()) throw ParseError("\"factors\" must be an array");
        for (const auto& table : factors) {
            PerfectMatching m{f.d, table.get<std::vector<Vertex>>()};
            f.factors.push_back(std::move(m));
        }
        f.validate();
        return f;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed factorization JSON: ") + e.what());
    } catch (const Error& e) {
        throw ParseError(std::string("invalid factorization: ") + e.what());
    }
}

void save_factorization(const std::filesystem::path& path, const Factorization& f) {
    atomic_write(path, to_json(f).dump() + "\n");
}

Factorization load_factorization(const std::filesystem::path& path) {
    return factorization_from_json(load_json_file(path));
}

json to_json(const SwitchMove& move) {
    return json{{"anchor", move.anchor},
                {"dirs", json::array({move.dir_a, move.dir_b})},
                {"s", move.s},
                {"t", move.t}};
}

SwitchMove switch_move_from_json(const json& j) {
    try {
        SwitchMove move;
        move.anchor = j.at("anchor").get<Vertex>();
        const auto& dirs = j.at("dirs");
        if (!dirs.is_array() || dirs.size() != 2) throw ParseError("\"dirs\" must hold two directions");
        move.dir_a = dirs[0].get<int>();
        move.dir_b = dirs[1].get<int>();
        move.s = j.at("s").get<int>();
        move.t = j.at("t").get<int>();
        return move;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed switch move: ") + e.what());
    }
}

json to_json(const std::vector<SwitchMove>& moves) {
    json out = json::array();
    for (const auto& move : moves) out.push_back(to_json(move));
    return out;
}

std::vector<SwitchMove> switch_sequence_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("switch sequence must be a JSON array");
    std::vector<SwitchMove> moves;
    moves.reserve(j.size());
    for (const auto& item : j) moves.push_back(switch_move_from_json(item));
    return moves;
}

void save_switch_sequence(const std::filesystem::path& path, const std::vector<SwitchMove>& moves) {
    atomic_write(path, to_json(moves).dump() + "\n");
}

std::vector<SwitchMove> load_switch_sequence(const std::filesystem::path& path) {
    return switch_sequence_from_json(load_json_file(path));
}

json to_json(const DirectedHamiltonDecomposition& h) {
    json cycles = json::array();
    for (const auto& cycle : h.cycles) cycles.push_back(cycle);
    return json{{"kind", "directed-hamilton-decomposition"}, {"d", h.d}, {"cycles", std::move(cycles)}};
}

DirectedHamiltonDecomposition directed_decomposition_from_json(const json& j) {
    try {
        if (j.at("kind").get<std::string>() != "directed-hamilton-decomposition") {
            throw ParseError("unexpected certificate kind");
        }
        DirectedHamiltonDecomposition h;
        h.d = j.at("d").get<int>();
        for (const auto& cycle : j.at("cycles")) {
            h.cycles.push_back(cycle.get<std::vector<Vertex>>());
        }
        h.validate();
        return h;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed decomposition JSON: ") + e.what());
    } catch (const Error& e) {
        throw ParseError(std::string("invalid decomposition: ") + e.what());
    }
}

void save_directed_decomposition(const std::filesystem::path& path,
                                 const DirectedHamiltonDecomposition& h) {
    atomic_write(path, to_json(h).dump() + "\n");
}

DirectedHamiltonDecomposition load_directed_decomposition(const std::filesystem::path& path) {
    return directed_decomposition_from_json(load_json_file(path));
}

void atomic_write(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out << text;
        if (!out) throw Error("failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError("cannot parse " + path.string() + ": " + e.what());
    }
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (const unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string file_digest_hex(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    std::ostringstream hex;
    hex << std::hex << fnv1a64(buf.str());
    return hex.str();
}

}  // namespace cubefact
