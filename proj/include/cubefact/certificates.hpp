#pragma once
// On-disk cache of directed Hamilton decomposition certificates, keyed by
// dimension. Certificates are validated on load; writes go through a temp
// file plus rename.

#include <filesystem>
#include <optional>

#include "cubefact/decomposition.hpp"

namespace cubefact {

class CertificateCache {
public:
    explicit CertificateCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    const std::filesystem::path& dir() const { return dir_; }

    std::filesystem::path path_for(int d) const;

    // nullopt when no certificate exists; throws ParseError on a corrupt one.
    std::optional<DirectedHamiltonDecomposition> load(int d) const;

    void store(const DirectedHamiltonDecomposition& h) const;

    // CUBEFACT_CERT_DIR environment variable when set, else the certificates
    // directory shipped with the source tree.
    static std::filesystem::path default_dir();

private:
    std::filesystem::path dir_;
};

}  // namespace cubefact
