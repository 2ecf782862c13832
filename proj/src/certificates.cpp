#include "cubefact/certificates.hpp"

#include <cstdlib>

#include "cubefact/json_io.hpp"

#ifndef CUBEFACT_DATA_DIR
#define CUBEFACT_DATA_DIR "."
#endif

namespace cubefact {

std::filesystem::path CertificateCache::path_for(int d) const {
    return dir_ / ("dhd_d" + std::to_string(d) + ".json");
}

std::optional<DirectedHamiltonDecomposition> CertificateCache::load(int d) const {
    const auto path = path_for(d);
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) return std::nullopt;
    auto h = load_directed_decomposition(path);
    if (h.d != d) throw ParseError("certificate " + path.string() + " has wrong dimension");
    return h;
}

void CertificateCache::store(const DirectedHamiltonDecomposition& h) const {
    save_directed_decomposition(path_for(h.d), h);
}

std::filesystem::path CertificateCache::default_dir() {
    if (const char* env = std::getenv("CUBEFACT_CERT_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return std::filesystem::path(CUBEFACT_DATA_DIR) / "certificates";
}

}  // namespace cubefact
