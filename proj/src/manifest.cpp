#include "cavmagic/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace cavmagic {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string fnv1a64_hex(std::string_view bytes) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

nlohmann::json RunManifest::to_json() const {
    nlohmann::json j;
    j["tool"] = "cavmagic";
    j["version"] = std::string(tool_version);
    j["subcommand"] = subcommand;
    j["parameters"] = parameters;
    j["level_scheme_checksum"] = level_scheme_checksum;
    if (seed) j["seed"] = *seed;
    if (!rng_name.empty()) j["rng"] = rng_name;
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    j["timestamp_utc"] = stamp;
    return j;
}

void RunManifest::write(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("manifest: cannot write '" + path + "'");
    out << to_json().dump(2) << "\n";
}

}  // namespace cavmagic
