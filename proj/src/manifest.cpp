#include "citesim/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "citesim/csv.hpp"
#include "citesim/errors.hpp"
#include "citesim/version.hpp"

namespace citesim {

std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 14695981039346656037ULL;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

namespace {

std::string to_hex(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace

std::string fnv1a64_hex(const std::string& data) {
    return to_hex(fnv1a64(data.data(), data.size()));
}

std::string digest_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot digest missing file '" + path.string() + "'");
    std::uint64_t h = 14695981039346656037ULL;
    char buf[1 << 16];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        auto n = static_cast<std::size_t>(in.gcount());
        for (std::size_t i = 0; i < n; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ULL;
        }
    }
    return to_hex(h);
}

void RunManifest::add_input(const std::filesystem::path& path) {
    inputs.emplace_back(path.string(), digest_file(path));
}

void RunManifest::add_output(const std::filesystem::path& path) {
    outputs.emplace_back(path.string(), digest_file(path));
}

nlohmann::json RunManifest::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["config"] = config;
    j["seeds"] = seeds;
    auto files = [](const std::vector<std::pair<std::string, std::string>>& v) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [path, digest] : v) {
            arr.push_back({{"path", path}, {"digest", digest}});
        }
        return arr;
    };
    j["inputs"] = files(inputs);
    j["outputs"] = files(outputs);
    j["wall_clock_seconds"] = wall_clock_seconds;
    j["version"] = version.empty() ? kVersion : version;
    return j;
}

RunManifest RunManifest::from_json(const nlohmann::json& j) {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.config = j.at("config");
    m.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    for (const auto& e : j.at("inputs")) {
        m.inputs.emplace_back(e.at("path").get<std::string>(), e.at("digest").get<std::string>());
    }
    for (const auto& e : j.at("outputs")) {
        m.outputs.emplace_back(e.at("path").get<std::string>(),
                               e.at("digest").get<std::string>());
    }
    m.wall_clock_seconds = j.value("wall_clock_seconds", 0.0);
    m.version = j.value("version", "");
    return m;
}

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path) {
    auto out = open_output(path);
    out << manifest.to_json().dump(2) << '\n';
}

RunManifest read_manifest(const std::filesystem::path& path) {
    auto in = open_input(path);
    nlohmann::json j;
    try {
        in >> j;
        return RunManifest::from_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path.string() + ": invalid manifest: " + e.what());
    }
}

}  // namespace citesim
