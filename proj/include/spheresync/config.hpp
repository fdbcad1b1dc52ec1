#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "spheresync/graph.hpp"

namespace spheresync {

/// Experiment description parsed from a flat key-value file:
///
///   graph.family = directed_cycle     # or graph.path = some.edges
///   graph.m      = 4
///   sim.n        = 3
///   sim.seed     = 1                  # seeds the initial state and, for the
///   sim.spread   = 0.05               # random family, the graph
///   sim.h        = 0.001              # omit for the automatic step
///   sim.t_end    = 15                 # omit for the automatic horizon
///   fit.window_lo = 3                 # optional manual fit window
///   fit.window_hi = 12
///   out.csv      = trajectory.csv
///   out.summary  = summary.txt
///
/// Lines starting with '#' are comments. Unknown keys are rejected.
struct ExperimentConfig {
    std::string graph_family;
    int graph_m = 0;
    std::string graph_path;

    int n = 3;
    std::uint64_t seed = 0;
    double spread = 0.05;
    double h = 0.0;     // 0 = automatic
    double t_end = 0.0; // 0 = automatic

    double fit_window_lo = -1.0;
    double fit_window_hi = -1.0;

    std::string out_csv;
    std::string out_summary;
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline std::invalid_argument config_error(const std::string& key, const std::string& what) {
    return std::invalid_argument("config: " + key + ": " + what);
}

inline double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw config_error(key, "expected a number, got '" + value + "'");
    }
}

inline long long parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw config_error(key, "expected an integer, got '" + value + "'");
    }
}

} // namespace detail

inline ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = detail::trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config, line " + std::to_string(line_no) +
                                        ": expected 'key = value'");
        const std::string key = detail::trim(stripped.substr(0, eq));
        const std::string value = detail::trim(stripped.substr(eq + 1));
        if (value.empty())
            throw detail::config_error(key, "missing value");

        if (key == "graph.family") {
            family_from_name(value); // validates
            cfg.graph_family = value;
        } else if (key == "graph.m") {
            const long long m = detail::parse_int(key, value);
            if (m < 2) throw detail::config_error(key, "need at least 2 nodes");
            cfg.graph_m = static_cast<int>(m);
        } else if (key == "graph.path") {
            cfg.graph_path = value;
        } else if (key == "sim.n") {
            const long long n = detail::parse_int(key, value);
            if (n < 2) throw detail::config_error(key, "ambient dimension must be at least 2");
            cfg.n = static_cast<int>(n);
        } else if (key == "sim.seed") {
            const long long s = detail::parse_int(key, value);
            if (s < 0) throw detail::config_error(key, "seed must be nonnegative");
            cfg.seed = static_cast<std::uint64_t>(s);
        } else if (key == "sim.spread") {
            cfg.spread = detail::parse_double(key, value);
            if (cfg.spread < 0.0 || cfg.spread >= std::acos(-1.0) / 2.0)
                throw detail::config_error(key, "spread must lie in [0, pi/2)");
        } else if (key == "sim.h") {
            cfg.h = detail::parse_double(key, value);
            if (cfg.h <= 0.0) throw detail::config_error(key, "step size must be positive");
        } else if (key == "sim.t_end") {
            cfg.t_end = detail::parse_double(key, value);
            if (cfg.t_end <= 0.0) throw detail::config_error(key, "horizon must be positive");
        } else if (key == "fit.window_lo") {
            cfg.fit_window_lo = detail::parse_double(key, value);
            if (cfg.fit_window_lo < 0.0) throw detail::config_error(key, "window must be nonnegative");
        } else if (key == "fit.window_hi") {
            cfg.fit_window_hi = detail::parse_double(key, value);
            if (cfg.fit_window_hi <= 0.0) throw detail::config_error(key, "window end must be positive");
        } else if (key == "out.csv") {
            cfg.out_csv = value;
        } else if (key == "out.summary") {
            cfg.out_summary = value;
        } else {
            throw detail::config_error(key, "unknown key");
        }
    }

    if (cfg.graph_family.empty() && cfg.graph_path.empty())
        throw std::invalid_argument("config: need graph.family (with graph.m) or graph.path");
    if (!cfg.graph_family.empty() && !cfg.graph_path.empty())
        throw std::invalid_argument("config: graph.family and graph.path are mutually exclusive");
    if (!cfg.graph_family.empty() && cfg.graph_m < 2)
        throw std::invalid_argument("config: graph.family requires graph.m >= 2");
    if (cfg.fit_window_lo >= 0.0 && cfg.fit_window_hi > 0.0 && cfg.fit_window_lo >= cfg.fit_window_hi)
        throw std::invalid_argument("config: fit.window_lo must be below fit.window_hi");
    return cfg;
}

inline ExperimentConfig parse_config(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

inline ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open config file: " + path);
    return parse_config(in);
}

/// Materialize the graph a config refers to.
inline Digraph config_graph(const ExperimentConfig& cfg) {
    if (!cfg.graph_path.empty()) return read_edge_list_file(cfg.graph_path);
    return generate(family_from_name(cfg.graph_family), cfg.graph_m, cfg.seed);
}

} // namespace spheresync
