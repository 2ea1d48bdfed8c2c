#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cdlab/errors.hpp"

namespace cdlab {

/// Sectioned key=value configuration. Lines are `[section]`, `key = value`,
/// blank, or `#` comments. Values keep their raw text; typed getters parse
/// on access. Serialization is canonical (sections and keys sorted), so the
/// config hash is independent of input ordering.
class Config {
public:
    Config() = default;

    static Config parse(const std::string& text) {
        Config cfg;
        std::istringstream in(text);
        std::string line, section = "global";
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const std::string t = trim(line);
            if (t.empty() || t[0] == '#' || t[0] == ';') continue;
            if (t.front() == '[' && t.back() == ']') {
                section = trim(t.substr(1, t.size() - 2));
                cfg.data_[section];
                continue;
            }
            const auto eq = t.find('=');
            if (eq == std::string::npos)
                throw DomainError("Config: line " + std::to_string(lineno) +
                                  " is not key = value");
            cfg.data_[section][trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
        }
        return cfg;
    }

    static Config load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw DomainError("Config: cannot open " + path);
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse(ss.str());
    }

    bool has(const std::string& section, const std::string& key) const {
        const auto s = data_.find(section);
        return s != data_.end() && s->second.count(key) > 0;
    }

    void set(const std::string& section, const std::string& key, const std::string& value) {
        data_[section][key] = value;
    }
    void set(const std::string& section, const std::string& key, double value) {
        std::ostringstream ss;
        ss.precision(17);
        ss << value;
        set(section, key, ss.str());
    }

    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback = "") const {
        const auto s = data_.find(section);
        if (s == data_.end()) return fallback;
        const auto k = s->second.find(key);
        return k == s->second.end() ? fallback : k->second;
    }

    double get_double(const std::string& section, const std::string& key,
                      double fallback) const {
        if (!has(section, key)) return fallback;
        return std::stod(get_string(section, key));
    }

    long get_long(const std::string& section, const std::string& key, long fallback) const {
        if (!has(section, key)) return fallback;
        return std::stol(get_string(section, key));
    }

    bool get_bool(const std::string& section, const std::string& key, bool fallback) const {
        if (!has(section, key)) return fallback;
        const std::string v = get_string(section, key);
        return v == "1" || v == "true" || v == "yes" || v == "on";
    }

    std::vector<double> get_list(const std::string& section, const std::string& key) const {
        std::vector<double> vals;
        std::istringstream ss(get_string(section, key));
        std::string item;
        while (std::getline(ss, item, ','))
            if (!trim(item).empty()) vals.push_back(std::stod(trim(item)));
        return vals;
    }

    /// Canonical text: sorted sections and keys, one key = value per line.
    std::string serialize() const {
        std::ostringstream out;
        for (const auto& [section, kv] : data_) {
            out << "[" << section << "]\n";
            for (const auto& [k, v] : kv) out << k << " = " << v << "\n";
        }
        return out.str();
    }

    /// FNV-1a 64-bit digest of the canonical serialization, as 16 hex chars.
    std::string hash() const {
        const std::string text = serialize();
        std::uint64_t h = 1469598103934665603ull;
        for (unsigned char ch : text) {
            h ^= ch;
            h *= 1099511628211ull;
        }
        char buf[17];
        std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }

    const std::map<std::string, std::map<std::string, std::string>>& sections() const {
        return data_;
    }

private:
    static std::string trim(const std::string& s) {
        const auto b = s.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) return "";
        const auto e = s.find_last_not_of(" \t\r\n");
        return s.substr(b, e - b + 1);
    }

    std::map<std::string, std::map<std::string, std::string>> data_;
};

} // namespace cdlab
