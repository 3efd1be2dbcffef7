#pragma once

// Plain-text key-value config with [section] headers:
//
//   [solver]
//   dt = 1e-3
//   snapshots = 64      # comment
//
// Values run to the end of line ('#' starts a comment). Unknown
// section/key pairs are errors: every key the harness understands is
// registered in the schema below.

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "nlse/errors.hpp"

namespace nlse {

class Config {
  public:
    Config() = default;

    static Config parse_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("config: cannot open " + path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        return parse(buffer.str(), path);
    }

    static Config parse(const std::string& text, const std::string& origin = "<string>") {
        Config cfg;
        std::istringstream in(text);
        std::string line, section;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            const std::string trimmed = trim(line);
            if (trimmed.empty()) continue;
            if (trimmed.front() == '[') {
                if (trimmed.back() != ']')
                    throw ConfigError(origin + ":" + std::to_string(line_no) +
                                      ": malformed section header");
                section = trim(trimmed.substr(1, trimmed.size() - 2));
                continue;
            }
            const auto eq = trimmed.find('=');
            if (eq == std::string::npos)
                throw ConfigError(origin + ":" + std::to_string(line_no) +
                                  ": expected key = value");
            const std::string key = trim(trimmed.substr(0, eq));
            const std::string value = trim(trimmed.substr(eq + 1));
            if (key.empty())
                throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty key");
            cfg.values_[section + "." + key] = value;
        }
        return cfg;
    }

    bool has(const std::string& section, const std::string& key) const {
        return values_.count(section + "." + key) != 0;
    }

    std::string get_string(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
        const auto it = values_.find(section + "." + key);
        return it == values_.end() ? fallback : it->second;
    }

    double get_double(const std::string& section, const std::string& key,
                      double fallback) const {
        const auto it = values_.find(section + "." + key);
        if (it == values_.end()) return fallback;
        return parse_double(it->first, it->second);
    }

    long get_int(const std::string& section, const std::string& key, long fallback) const {
        const auto it = values_.find(section + "." + key);
        if (it == values_.end()) return fallback;
        try {
            std::size_t pos = 0;
            const long v = std::stol(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument("");
            return v;
        } catch (const std::exception&) {
            throw ConfigError("config: bad integer for " + it->first + ": " + it->second);
        }
    }

    bool get_bool(const std::string& section, const std::string& key, bool fallback) const {
        const auto it = values_.find(section + "." + key);
        if (it == values_.end()) return fallback;
        if (it->second == "true" || it->second == "on" || it->second == "1") return true;
        if (it->second == "false" || it->second == "off" || it->second == "0") return false;
        throw ConfigError("config: bad boolean for " + it->first + ": " + it->second);
    }

    std::vector<double> get_doubles(const std::string& section, const std::string& key,
                                    std::vector<double> fallback) const {
        const auto it = values_.find(section + "." + key);
        if (it == values_.end()) return fallback;
        std::vector<double> out;
        std::istringstream in(it->second);
        std::string token;
        while (in >> token) out.push_back(parse_double(it->first, token));
        if (out.empty())
            throw ConfigError("config: empty list for " + it->first);
        return out;
    }

    // Reject any key outside the registered schema.
    void require_known(const std::set<std::string>& schema) const {
        for (const auto& [key, value] : values_)
            if (schema.count(key) == 0)
                throw ConfigError("config: unknown key '" + key + "'");
    }

    // Echo for report reproducibility.
    std::map<std::string, std::string> entries() const { return values_; }

  private:
    static std::string trim(const std::string& s) {
        const auto begin = s.find_first_not_of(" \t\r\n");
        if (begin == std::string::npos) return "";
        const auto end = s.find_last_not_of(" \t\r\n");
        return s.substr(begin, end - begin + 1);
    }

    static double parse_double(const std::string& key, const std::string& value) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(value, &pos);
            if (pos != value.size()) throw std::invalid_argument("");
            return v;
        } catch (const std::exception&) {
            throw ConfigError("config: bad number for " + key + ": " + value);
        }
    }

    std::map<std::string, std::string> values_;
};

// Every (section, key) the experiment harness understands.
inline const std::set<std::string>& config_schema() {
    static const std::set<std::string> schema = {
        "problem.p", "problem.sigma", "problem.s",
        "bubble.gamma", "bubble.beta",
        "grid.dim", "grid.n", "grid.half_width",
        "solver.dt", "solver.t_end", "solver.snapshots", "solver.dealias",
        "solver.theta_max", "solver.dispersion", "solver.store_fields",
        "tanghuru.k0", "tanghuru.K", "tanghuru.ladder", "tanghuru.a",
        "tanghuru.n0", "tanghuru.ratio",
        "tanghuru.u0_amplitude", "tanghuru.u0_radius",
        "sweep.n_values", "sweep.m_values",
        "sweep.moll_n", "sweep.moll_grid_n", "sweep.moll_half_width",
        "sweep.eps_n_min", "sweep.eps_n_max", "sweep.eps_n_count",
        "sweep.do_n_sweep", "sweep.do_moll_sweep", "sweep.do_lower_bound",
        "separation.m_low", "separation.m_high",
        "inflation.run_k", "inflation.leakage_abort",
        "random.samples", "random.base_width", "random.base_amplitude",
        "random.T", "random.q", "random.r", "random.time_stamps",
        "convergence.eps0", "convergence.rungs", "convergence.omegas",
        "convergence.T",
        "bilinear.n_low", "bilinear.m_values", "bilinear.samples",
        "bilinear.T", "bilinear.time_stamps",
        "validation.field_count",
    };
    return schema;
}

} // namespace nlse
