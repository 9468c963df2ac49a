#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "core/types.hpp"

namespace sqha {

/// Flat key = value configuration, one [section] per module. Top-level keys
/// (before any section header) live in the unnamed section. Serialization
/// is canonical (sorted sections/keys), so serialize(parse(text)) is
/// idempotent and hashable.
class ConfigMap {
public:
    static ConfigMap parse_text(const std::string& text);
    static ConfigMap parse_file(const std::filesystem::path& path);

    std::string serialize() const;
    std::uint64_t hash() const;  // FNV-1a of the canonical serialization

    bool has(const std::string& section, const std::string& key) const;
    void set(const std::string& section, const std::string& key, const std::string& value);

    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    std::uint64_t get_u64(const std::string& section, const std::string& key,
                          std::uint64_t fallback) const;
    std::size_t get_size(const std::string& section, const std::string& key,
                         std::size_t fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;

    std::string require_string(const std::string& section, const std::string& key) const;
    double require_double(const std::string& section, const std::string& key) const;

    const std::map<std::string, std::map<std::string, std::string>>& sections() const {
        return sections_;
    }

private:
    std::map<std::string, std::map<std::string, std::string>> sections_;
    std::optional<std::string> find(const std::string& section, const std::string& key) const;
};

/// [grid] section -> Grid1D; every field has a default so experiments can
/// run without a config file.
Grid1D grid_from_config(const ConfigMap& cfg, double def_min, double def_max,
                        std::size_t def_points);

/// [physical] section -> PhysicalParams (potential: free | harmonic | csv).
PhysicalParams params_from_config(const ConfigMap& cfg);

} // namespace sqha
