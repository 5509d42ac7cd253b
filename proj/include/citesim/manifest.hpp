#ifndef CITESIM_MANIFEST_HPP
#define CITESIM_MANIFEST_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace citesim {

// FNV-1a 64-bit content hashes; enough to detect input/output drift in
// run manifests (not a cryptographic guarantee).
std::uint64_t fnv1a64(const void* data, std::size_t len);
std::string fnv1a64_hex(const std::string& data);
std::string digest_file(const std::filesystem::path& path);

// Reproduction record written next to every command's outputs: the resolved
// configuration plus digests of everything read and written. Re-running the
// command with the recorded config reproduces the outputs byte for byte
// (wall clock and the manifest itself excepted).
struct RunManifest {
    std::string command;
    nlohmann::json config;
    std::vector<std::uint64_t> seeds;
    std::vector<std::pair<std::string, std::string>> inputs;   // path, digest
    std::vector<std::pair<std::string, std::string>> outputs;  // path, digest
    double wall_clock_seconds = 0;
    std::string version;

    void add_input(const std::filesystem::path& path);
    void add_output(const std::filesystem::path& path);
    nlohmann::json to_json() const;
    static RunManifest from_json(const nlohmann::json& j);
};

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path);
RunManifest read_manifest(const std::filesystem::path& path);

}  // namespace citesim

#endif
