#pragma once

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "cdlab/errors.hpp"
#include "cdlab/ini.hpp"
#include "cdlab/params.hpp"

namespace cdlab {

inline constexpr const char* kArtifactVersion = "0.1.0";

/// Root directory for run outputs; CDLAB_RUNS_ROOT overrides ./runs.
inline std::filesystem::path runs_root() {
    if (const char* env = std::getenv("CDLAB_RUNS_ROOT")) return env;
    return "runs";
}

/// A run directory `runs/<run_id>/` with its manifest. Every file written
/// through the helper is recorded, so the manifest lists all artifacts.
class RunDir {
public:
    RunDir(const std::string& run_id, const Config& cfg) : id_(run_id), cfg_(cfg) {
        root_ = runs_root() / id_;
        std::filesystem::create_directories(root_ / "data");
        std::filesystem::create_directories(root_ / "plots");
        started_ = now_iso();
        // persist the canonical config next to the manifest
        std::ofstream out(root_ / "config.ini");
        out << cfg_.serialize();
        files_.push_back("config.ini");
    }

    const std::string& id() const { return id_; }
    const std::filesystem::path& root() const { return root_; }

    /// Register and return a path under the run directory.
    std::string file(const std::string& rel) {
        files_.push_back(rel);
        return (root_ / rel).string();
    }

    void verdict(const std::string& name, bool pass) { verdicts_[name] = pass; }
    void note(const std::string& key, const std::string& value) { notes_[key] = value; }
    void note(const std::string& key, double value) { notes_[key] = format_double(value); }

    bool all_passed() const {
        for (const auto& [k, v] : verdicts_)
            if (!v) return false;
        return true;
    }

    void write_manifest(const Params* params = nullptr) {
        nlohmann::json j;
        j["run_id"] = id_;
        j["config_hash"] = cfg_.hash();
        j["artifact_version"] = kArtifactVersion;
        j["started"] = started_;
        j["finished"] = now_iso();
        if (params)
            j["params"] = {{"a", params->a}, {"b", params->b}, {"d", params->d}, {"r", params->r}};
        j["files"] = files_;
        j["verdicts"] = verdicts_;
        j["notes"] = notes_;
        std::ofstream out(root_ / "manifest.json");
        out << j.dump(2) << "\n";
    }

    static nlohmann::json load_manifest(const std::string& run_id) {
        const auto path = runs_root() / run_id / "manifest.json";
        std::ifstream in(path);
        if (!in) throw UnknownRun("no manifest at " + path.string());
        nlohmann::json j;
        in >> j;
        return j;
    }

private:
    static std::string now_iso() {
        const auto now = std::chrono::system_clock::now();
        const std::time_t tt = std::chrono::system_clock::to_time_t(now);
        char buf[32];
        std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
        return buf;
    }

    std::string id_;
    Config cfg_;
    std::filesystem::path root_;
    std::string started_;
    std::vector<std::string> files_;
    std::map<std::string, bool> verdicts_;
    std::map<std::string, std::string> notes_;
};

} // namespace cdlab
