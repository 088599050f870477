#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "elex/json_io.hpp"
#include "elex/version.hpp"

namespace elex::cli {

inline std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

/// Provenance record written next to every output: tool version, the effective
/// configuration and the content hash of each input. Inputs are named by basename
/// and thread counts are left out, so reruns elsewhere produce identical bytes.
class RunManifest {
public:
    explicit RunManifest(std::string command) : command_(std::move(command)) {}

    Json& config() { return config_; }

    void add_input(const std::string& role, const std::string& path) {
        inputs_.push_back({{"role", role},
                           {"file", std::filesystem::path(path).filename().string()},
                           {"sha256", sha256_hex(read_text_file(path))}});
    }

    std::string dump() const {
        Json j;
        j["tool_version"] = kToolVersion;
        j["command"] = command_;
        j["config"] = config_;
        j["inputs"] = inputs_;
        return dump_json(j, RealFormat::shortest, 2) + "\n";
    }

    void write_for(const std::string& output_path) const { write_text_file(output_path + ".manifest.json", dump()); }

private:
    std::string command_;
    Json config_ = Json::object();
    Json inputs_ = Json::array();
};

}  // namespace elex::cli
