#include "core/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "core/csv.hpp"
#include "core/errors.hpp"

namespace sqha {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string where(const std::string& section, const std::string& key) {
    return section.empty() ? key : section + "." + key;
}

} // namespace

ConfigMap ConfigMap::parse_text(const std::string& text) {
    ConfigMap cfg;
    std::istringstream in(text);
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw ConfigError("config line " + std::to_string(lineno) + ": empty section name");
            cfg.sections_[section];  // register even when empty
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key = value, got '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        cfg.sections_[section][key] = value;
    }
    return cfg;
}

ConfigMap ConfigMap::parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
}

std::string ConfigMap::serialize() const {
    std::ostringstream out;
    // Unnamed section first, then the named ones (map iteration is sorted).
    auto emit = [&](const std::map<std::string, std::string>& kv) {
        for (const auto& [k, v] : kv) out << k << " = " << v << "\n";
    };
    if (auto it = sections_.find(""); it != sections_.end()) emit(it->second);
    for (const auto& [name, kv] : sections_) {
        if (name.empty()) continue;
        out << "[" << name << "]\n";
        emit(kv);
    }
    return out.str();
}

std::uint64_t ConfigMap::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : serialize()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::optional<std::string> ConfigMap::find(const std::string& section,
                                           const std::string& key) const {
    auto s = sections_.find(section);
    if (s == sections_.end()) return std::nullopt;
    auto k = s->second.find(key);
    if (k == s->second.end()) return std::nullopt;
    return k->second;
}

bool ConfigMap::has(const std::string& section, const std::string& key) const {
    return find(section, key).has_value();
}

void ConfigMap::set(const std::string& section, const std::string& key,
                    const std::string& value) {
    sections_[section][key] = value;
}

std::string ConfigMap::get_string(const std::string& section, const std::string& key,
                                  const std::string& fallback) const {
    auto v = find(section, key);
    return v ? *v : fallback;
}

double ConfigMap::get_double(const std::string& section, const std::string& key,
                             double fallback) const {
    auto v = find(section, key);
    if (!v) return fallback;
    try {
        std::size_t pos = 0;
        double d = std::stod(*v, &pos);
        if (pos != v->size()) throw std::invalid_argument("trailing");
        return d;
    } catch (const std::exception&) {
        throw ConfigError(where(section, key) + ": not a number: '" + *v + "'");
    }
}

std::uint64_t ConfigMap::get_u64(const std::string& section, const std::string& key,
                                 std::uint64_t fallback) const {
    auto v = find(section, key);
    if (!v) return fallback;
    try {
        std::size_t pos = 0;
        std::uint64_t u = std::stoull(*v, &pos);
        if (pos != v->size()) throw std::invalid_argument("trailing");
        return u;
    } catch (const std::exception&) {
        throw ConfigError(where(section, key) + ": not an unsigned integer: '" + *v + "'");
    }
}

std::size_t ConfigMap::get_size(const std::string& section, const std::string& key,
                                std::size_t fallback) const {
    return static_cast<std::size_t>(get_u64(section, key, fallback));
}

bool ConfigMap::get_bool(const std::string& section, const std::string& key,
                         bool fallback) const {
    auto v = find(section, key);
    if (!v) return fallback;
    std::string s = *v;
    std::transform(s.begin(), s.end(), s.begin(), ::tolower);
    if (s == "true" || s == "on" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "off" || s == "0" || s == "no") return false;
    throw ConfigError(where(section, key) + ": not a boolean: '" + *v + "'");
}

std::string ConfigMap::require_string(const std::string& section, const std::string& key) const {
    auto v = find(section, key);
    if (!v) throw ConfigError(where(section, key) + ": required key is missing");
    return *v;
}

double ConfigMap::require_double(const std::string& section, const std::string& key) const {
    if (!has(section, key)) throw ConfigError(where(section, key) + ": required key is missing");
    return get_double(section, key, 0.0);
}

Grid1D grid_from_config(const ConfigMap& cfg, double def_min, double def_max,
                        std::size_t def_points) {
    const double x_min = cfg.get_double("grid", "x_min", def_min);
    const double x_max = cfg.get_double("grid", "x_max", def_max);
    const std::size_t n = cfg.get_size("grid", "n_points", def_points);
    try {
        return Grid1D(x_min, x_max, n);
    } catch (const InvalidInput& e) {
        throw ConfigError(std::string("grid: ") + e.what());
    }
}

PhysicalParams params_from_config(const ConfigMap& cfg) {
    PhysicalParams p;
    p.mass = cfg.get_double("physical", "mass", 1.0);
    p.hbar = cfg.get_double("physical", "hbar", 1.0);
    p.boltzmann = cfg.get_double("physical", "boltzmann", 1.0);
    p.temperature = cfg.get_double("physical", "temperature", 0.0);
    p.light_speed = cfg.get_double("physical", "light_speed", 299792458.0);

    const std::string pot = cfg.get_string("physical", "potential", "free");
    if (pot == "free") {
        p.potential = Potential::free_particle();
    } else if (pot == "harmonic") {
        p.potential = Potential::harmonic(cfg.get_double("physical", "omega", 1.0),
                                          cfg.get_double("physical", "potential_center", 0.0));
    } else if (pot == "csv") {
        p.potential =
            Potential::tabulated(read_real_field_csv(cfg.require_string("physical", "potential_csv")));
    } else {
        throw ConfigError("physical.potential: unknown form '" + pot +
                          "' (free | harmonic | csv)");
    }
    try {
        p.validate();
    } catch (const InvalidInput& e) {
        throw ConfigError(std::string("physical: ") + e.what());
    }
    return p;
}

} // namespace sqha
