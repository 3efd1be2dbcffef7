#pragma once

// Experiment outputs: one CSV per measured table (documented header row)
// and one JSON summary per experiment with fitted quantities, tolerances
// and pass/fail per acceptance criterion.

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "nlse/errors.hpp"

#ifndef NLSE_BUILD_ID
#define NLSE_BUILD_ID "unknown"
#endif

namespace nlse {

inline const char* build_id() { return NLSE_BUILD_ID; }

class CsvWriter {
  public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns) {
        std::filesystem::create_directories(path.parent_path());
        out_.open(path);
        if (!out_) throw ConfigError("csv: cannot open " + path.string());
        out_.precision(17);
        for (std::size_t i = 0; i < columns.size(); ++i)
            out_ << (i ? "," : "") << columns[i];
        out_ << "\n";
        width_ = columns.size();
    }

    void row(const std::vector<double>& values) {
        if (values.size() != width_) throw DomainError("csv: column count mismatch");
        for (std::size_t i = 0; i < values.size(); ++i)
            out_ << (i ? "," : "") << values[i];
        out_ << "\n";
    }

  private:
    std::ofstream out_;
    std::size_t width_ = 0;
};

struct CriterionResult {
    std::string id;          // acceptance criterion, e.g. "AC3"
    std::string description;
    double measured = 0.0;
    double bound = 0.0;
    bool pass = false;
};

struct ExperimentReport {
    std::string experiment;
    std::map<std::string, std::string> config_echo;
    std::vector<CriterionResult> criteria;
    nlohmann::json tables; // fitted exponents, measured series summaries
    double wall_seconds = 0.0;

    bool all_pass() const {
        for (const auto& c : criteria)
            if (!c.pass) return false;
        return true;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["experiment"] = experiment;
        j["build_id"] = build_id();
        j["wall_seconds"] = wall_seconds;
        j["config"] = config_echo;
        j["results"] = tables;
        j["criteria"] = nlohmann::json::array();
        for (const auto& c : criteria) {
            j["criteria"].push_back({{"id", c.id},
                                     {"description", c.description},
                                     {"measured", c.measured},
                                     {"bound", c.bound},
                                     {"pass", c.pass}});
        }
        j["pass"] = all_pass();
        return j;
    }

    void write_summary(const std::filesystem::path& out_dir) const {
        std::filesystem::create_directories(out_dir);
        std::ofstream out(out_dir / (experiment + "_summary.json"));
        out << to_json().dump(2) << "\n";
    }
};

class WallTimer {
  public:
    WallTimer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_;
};

} // namespace nlse
