#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ridgeless/errors.hpp"
#include "ridgeless/sweep.hpp"

namespace ridgeless {

namespace detail {

inline std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_safe(std::string s) {
    for (char& ch : s)
        if (ch == ',' || ch == '\n' || ch == '\r') ch = ';';
    return s;
}

} // namespace detail

/// Fixed CSV column order; documented in the README and relied upon by
/// read_csv. Numeric fields carry 17 significant digits, lines end in LF.
inline const std::vector<std::string>& record_columns() {
    static const std::vector<std::string> cols = {
        "d", "n", "c_value", "c", "seed",
        "risk_p_mean", "risk_p_se", "l2_fhat_mean", "l2_fhat_se", "l2_f0",
        "conv_norm_fhat", "witness_norm", "witness_divergent", "certificate", "sum_rd",
        "pow_avg_km1", "pow_avg_k1", "pow_avg_kd",
        "jitter_used", "condition_estimate", "residual_max",
        "m_test", "alpha_witness", "f0", "grid_hash", "version", "status"};
    return cols;
}

inline std::vector<std::string> record_fields(const SweepRecord& r) {
    using detail::fmt_full;
    return {std::to_string(r.d),
            std::to_string(r.n),
            fmt_full(r.c_value),
            fmt_full(r.c),
            std::to_string(r.seed),
            fmt_full(r.risk_p_mean),
            fmt_full(r.risk_p_se),
            fmt_full(r.l2_fhat_mean),
            fmt_full(r.l2_fhat_se),
            fmt_full(r.l2_f0),
            fmt_full(r.conv_norm_fhat),
            fmt_full(r.witness_norm),
            std::to_string(r.witness_divergent),
            fmt_full(r.certificate),
            fmt_full(r.sum_rd),
            fmt_full(r.pow_avg_km1),
            fmt_full(r.pow_avg_k1),
            fmt_full(r.pow_avg_kd),
            fmt_full(r.jitter_used),
            fmt_full(r.condition_estimate),
            fmt_full(r.residual_max),
            std::to_string(r.m_test),
            fmt_full(r.alpha_witness),
            to_string(r.f0),
            std::to_string(r.grid_hash),
            r.version,
            detail::csv_safe(r.status)};
}

inline void emit_csv(const std::vector<SweepRecord>& records, const std::string& path) {
    if (records.empty()) throw std::invalid_argument("emit_csv: no records");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_csv: cannot open " + path);
    const auto& cols = record_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << cols[i] << (i + 1 < cols.size() ? "," : "");
    out << '\n';
    for (const auto& r : records) {
        const auto fields = record_fields(r);
        for (std::size_t i = 0; i < fields.size(); ++i)
            out << fields[i] << (i + 1 < fields.size() ? "," : "");
        out << '\n';
    }
    if (!out) throw std::runtime_error("emit_csv: write failed for " + path);
}

namespace detail {

inline SweepRecord record_from_fields(const std::vector<std::string>& f) {
    if (f.size() != record_columns().size())
        throw std::runtime_error("read_csv: wrong field count: " + std::to_string(f.size()));
    SweepRecord r;
    std::size_t i = 0;
    r.d = std::stoi(f[i++]);
    r.n = static_cast<Eigen::Index>(std::stoll(f[i++]));
    r.c_value = std::strtod(f[i++].c_str(), nullptr);
    r.c = std::strtod(f[i++].c_str(), nullptr);
    r.seed = std::stoull(f[i++]);
    r.risk_p_mean = std::strtod(f[i++].c_str(), nullptr);
    r.risk_p_se = std::strtod(f[i++].c_str(), nullptr);
    r.l2_fhat_mean = std::strtod(f[i++].c_str(), nullptr);
    r.l2_fhat_se = std::strtod(f[i++].c_str(), nullptr);
    r.l2_f0 = std::strtod(f[i++].c_str(), nullptr);
    r.conv_norm_fhat = std::strtod(f[i++].c_str(), nullptr);
    r.witness_norm = std::strtod(f[i++].c_str(), nullptr);
    r.witness_divergent = std::stoi(f[i++]);
    r.certificate = std::strtod(f[i++].c_str(), nullptr);
    r.sum_rd = std::strtod(f[i++].c_str(), nullptr);
    r.pow_avg_km1 = std::strtod(f[i++].c_str(), nullptr);
    r.pow_avg_k1 = std::strtod(f[i++].c_str(), nullptr);
    r.pow_avg_kd = std::strtod(f[i++].c_str(), nullptr);
    r.jitter_used = std::strtod(f[i++].c_str(), nullptr);
    r.condition_estimate = std::strtod(f[i++].c_str(), nullptr);
    r.residual_max = std::strtod(f[i++].c_str(), nullptr);
    r.m_test = std::stoull(f[i++]);
    r.alpha_witness = std::strtod(f[i++].c_str(), nullptr);
    r.f0 = target_function_from_string(f[i++]);
    r.grid_hash = std::stoull(f[i++]);
    r.version = f[i++];
    r.status = f[i++];
    return r;
}

} // namespace detail

inline std::vector<SweepRecord> read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("read_csv: empty file " + path);
    std::vector<SweepRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) fields.push_back(tok);
        if (line.back() == ',') fields.push_back("");
        records.push_back(detail::record_from_fields(fields));
    }
    return records;
}

inline void emit_json(const std::vector<SweepRecord>& records, const std::string& path) {
    if (records.empty()) throw std::invalid_argument("emit_json: no records");
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : records) {
        nlohmann::ordered_json o;
        o["d"] = r.d;
        o["n"] = static_cast<long long>(r.n);
        o["c_value"] = r.c_value;
        o["c"] = r.c;
        o["seed"] = r.seed;
        o["risk_p_mean"] = r.risk_p_mean;
        o["risk_p_se"] = r.risk_p_se;
        o["l2_fhat_mean"] = r.l2_fhat_mean;
        o["l2_fhat_se"] = r.l2_fhat_se;
        o["l2_f0"] = r.l2_f0;
        o["conv_norm_fhat"] = r.conv_norm_fhat;
        o["witness_norm"] = r.witness_norm;
        o["witness_divergent"] = r.witness_divergent;
        o["certificate"] = r.certificate;
        o["sum_rd"] = r.sum_rd;
        o["pow_avg_km1"] = r.pow_avg_km1;
        o["pow_avg_k1"] = r.pow_avg_k1;
        o["pow_avg_kd"] = r.pow_avg_kd;
        o["jitter_used"] = r.jitter_used;
        o["condition_estimate"] = r.condition_estimate;
        o["residual_max"] = r.residual_max;
        o["m_test"] = r.m_test;
        o["alpha_witness"] = r.alpha_witness;
        o["f0"] = to_string(r.f0);
        o["grid_hash"] = r.grid_hash;
        o["version"] = r.version;
        o["status"] = r.status;
        arr.push_back(std::move(o));
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_json: cannot open " + path);
    out << arr.dump(2) << '\n';
    if (!out) throw std::runtime_error("emit_json: write failed for " + path);
}

inline std::vector<SweepRecord> read_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_json: cannot open " + path);
    nlohmann::json arr = nlohmann::json::parse(in);
    std::vector<SweepRecord> records;
    for (const auto& o : arr) {
        SweepRecord r;
        r.d = o.at("d").get<int>();
        r.n = o.at("n").get<long long>();
        r.c_value = o.at("c_value").get<double>();
        r.c = o.at("c").get<double>();
        r.seed = o.at("seed").get<std::uint64_t>();
        r.risk_p_mean = o.at("risk_p_mean").get<double>();
        r.risk_p_se = o.at("risk_p_se").get<double>();
        r.l2_fhat_mean = o.at("l2_fhat_mean").get<double>();
        r.l2_fhat_se = o.at("l2_fhat_se").get<double>();
        r.l2_f0 = o.at("l2_f0").get<double>();
        r.conv_norm_fhat = o.at("conv_norm_fhat").get<double>();
        r.witness_norm = o.at("witness_norm").get<double>();
        r.witness_divergent = o.at("witness_divergent").get<int>();
        r.certificate = o.at("certificate").get<double>();
        r.sum_rd = o.at("sum_rd").get<double>();
        r.pow_avg_km1 = o.at("pow_avg_km1").get<double>();
        r.pow_avg_k1 = o.at("pow_avg_k1").get<double>();
        r.pow_avg_kd = o.at("pow_avg_kd").get<double>();
        r.jitter_used = o.at("jitter_used").get<double>();
        r.condition_estimate = o.at("condition_estimate").get<double>();
        r.residual_max = o.at("residual_max").get<double>();
        r.m_test = o.at("m_test").get<std::size_t>();
        r.alpha_witness = o.at("alpha_witness").get<double>();
        r.f0 = target_function_from_string(o.at("f0").get<std::string>());
        r.grid_hash = o.at("grid_hash").get<std::uint64_t>();
        r.version = o.at("version").get<std::string>();
        r.status = o.at("status").get<std::string>();
        records.push_back(std::move(r));
    }
    return records;
}

} // namespace ridgeless
