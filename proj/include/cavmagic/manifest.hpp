#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace cavmagic {

inline constexpr std::string_view tool_version = "0.1.0";

/// FNV-1a 64-bit hash, hex encoded; used to fingerprint input documents in
/// run manifests and fit outputs.
std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

/// Everything needed to bit-reproduce a CLI run: the subcommand, every
/// resolved parameter, the level-document checksum and the seed.
struct RunManifest {
    std::string subcommand;
    nlohmann::json parameters;
    std::string level_scheme_checksum;
    std::optional<std::uint64_t> seed;
    std::string rng_name;

    nlohmann::json to_json() const;
    void write(const std::string& path) const;
};

}  // namespace cavmagic
