#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ridgeless/errors.hpp"
#include "ridgeless/sweep.hpp"

namespace ridgeless {

namespace detail {

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string tok;
    for (char ch : s) {
        if (ch == ',' || ch == ' ' || ch == '\t') {
            if (!tok.empty()) out.push_back(tok);
            tok.clear();
        } else {
            tok += ch;
        }
    }
    if (!tok.empty()) out.push_back(tok);
    return out;
}

inline std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace detail

/// Flat key-value grid config. Keys mirror the SweepGrid fields:
///   d_list, n_list, c_rule (absolute | multiples_of_nd), c_values,
///   seeds, f0, m_test, alpha_witness
/// Lists are comma- or space-separated; '#' starts a comment. Missing
/// keys keep the default grid values; unknown keys are a usage error.
inline SweepGrid parse_grid_config(std::istream& in) {
    SweepGrid grid;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw usage_error("grid config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        const auto items = detail::split_list(value);
        try {
            if (key == "d_list") {
                grid.d_list.clear();
                for (const auto& v : items) grid.d_list.push_back(std::stoi(v));
            } else if (key == "n_list") {
                grid.n_list.clear();
                for (const auto& v : items) grid.n_list.push_back(std::stoll(v));
            } else if (key == "c_rule") {
                if (value == "absolute") grid.c_rule = BandwidthRule::absolute;
                else if (value == "multiples_of_nd") grid.c_rule = BandwidthRule::multiples_of_nd;
                else throw usage_error("grid config: c_rule must be absolute or multiples_of_nd");
            } else if (key == "c_values") {
                grid.c_values.clear();
                for (const auto& v : items) grid.c_values.push_back(std::stod(v));
            } else if (key == "seeds") {
                grid.seeds.clear();
                for (const auto& v : items) grid.seeds.push_back(std::stoull(v));
            } else if (key == "f0") {
                grid.f0 = target_function_from_string(value);
            } else if (key == "m_test") {
                grid.m_test = std::stoull(value);
            } else if (key == "alpha_witness") {
                grid.alpha_witness = std::stod(value);
            } else {
                throw usage_error("grid config line " + std::to_string(lineno) + ": unknown key '" +
                                  key + "'");
            }
        } catch (const usage_error&) {
            throw;
        } catch (const std::exception&) {
            throw usage_error("grid config line " + std::to_string(lineno) + ": cannot parse value '" +
                              value + "' for key '" + key + "'");
        }
    }
    grid.validate();
    return grid;
}

inline SweepGrid load_grid_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open grid config: " + path);
    return parse_grid_config(in);
}

} // namespace ridgeless
