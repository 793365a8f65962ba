#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "ridgeless/errors.hpp"
#include "ridgeless/math.hpp"
#include "ridgeless/sweep.hpp"

namespace ridgeless {

/// min-over-c excess risk per (d, n): the empirical counterpart of the
/// inconsistency statement. Records with jitter or errors are excluded
/// and counted.
struct InconsistencyRow {
    int d = 0;
    Eigen::Index n = 0;
    double min_risk = 0.0; // min over c of the seed-mean risk
    double c_at_min = 0.0;
    double band_lo = 0.0; // seed spread of the risk at the minimizing c
    double band_hi = 0.0;
};

struct InconsistencySummary {
    std::vector<InconsistencyRow> rows;
    std::size_t excluded = 0; // jitter-contaminated or error records
};

namespace detail {

inline bool record_usable(const SweepRecord& r) {
    return r.status == "ok" && r.jitter_used == 0.0 && std::isfinite(r.risk_p_mean);
}

} // namespace detail

inline InconsistencySummary inconsistency_summary(const std::vector<SweepRecord>& records) {
    std::map<std::pair<int, Eigen::Index>, std::map<double, std::vector<double>>> grouped;
    InconsistencySummary out;
    for (const auto& r : records) {
        if (!detail::record_usable(r)) {
            ++out.excluded;
            continue;
        }
        grouped[{r.d, r.n}][r.c].push_back(r.risk_p_mean);
    }
    for (const auto& [key, by_c] : grouped) {
        if (by_c.size() < 2)
            throw std::invalid_argument("inconsistency_summary: need >= 2 bandwidth values per (d, n)");
        InconsistencyRow row;
        row.d = key.first;
        row.n = key.second;
        row.min_risk = std::numeric_limits<double>::infinity();
        for (const auto& [c, risks] : by_c) {
            double mean = 0.0;
            for (double v : risks) mean += v;
            mean /= static_cast<double>(risks.size());
            if (mean < row.min_risk) {
                row.min_risk = mean;
                row.c_at_min = c;
                row.band_lo = *std::min_element(risks.begin(), risks.end());
                row.band_hi = *std::max_element(risks.begin(), risks.end());
            }
        }
        out.rows.push_back(row);
    }
    return out;
}

/// Spearman correlation of min-over-c risk against n, per dimension.
/// A strongly negative value would indicate the risk floor decays with n.
inline std::map<int, double> min_risk_trend(const InconsistencySummary& summary) {
    std::map<int, std::pair<std::vector<double>, std::vector<double>>> per_d;
    for (const auto& row : summary.rows) {
        per_d[row.d].first.push_back(static_cast<double>(row.n));
        per_d[row.d].second.push_back(row.min_risk);
    }
    std::map<int, double> out;
    for (const auto& [d, xy] : per_d) out[d] = spearman(xy.first, xy.second);
    return out;
}

/// |fhat|^2_{L2} / |f0|^2_{L2} per (d, n, c/n^{1/d}): the collapse of the
/// interpolant's mass in the spike regime c >> n^{1/d}.
struct SpikeRow {
    int d = 0;
    Eigen::Index n = 0;
    double c_value = 0.0; // c / n^{1/d} under the multiples rule
    double ratio_mean = 0.0;
    double ratio_min = 0.0;
    double ratio_max = 0.0;
};

inline std::vector<SpikeRow> spike_regime_summary(const std::vector<SweepRecord>& records) {
    std::map<std::tuple<int, Eigen::Index, double>, std::vector<double>> grouped;
    for (const auto& r : records) {
        if (!detail::record_usable(r) || !(r.l2_f0 > 0.0)) continue;
        grouped[{r.d, r.n, r.c_value}].push_back(r.l2_fhat_mean / r.l2_f0);
    }
    if (grouped.empty()) throw std::invalid_argument("spike_regime_summary: no usable records");
    std::set<double> cs;
    for (const auto& [key, _] : grouped) cs.insert(std::get<2>(key));
    if (cs.size() < 2)
        throw std::invalid_argument("spike_regime_summary: need >= 2 bandwidth values");
    std::vector<SpikeRow> rows;
    for (const auto& [key, ratios] : grouped) {
        SpikeRow row;
        row.d = std::get<0>(key);
        row.n = std::get<1>(key);
        row.c_value = std::get<2>(key);
        row.ratio_min = *std::min_element(ratios.begin(), ratios.end());
        row.ratio_max = *std::max_element(ratios.begin(), ratios.end());
        for (double v : ratios) row.ratio_mean += v;
        row.ratio_mean /= static_cast<double>(ratios.size());
        rows.push_back(row);
    }
    return rows;
}

} // namespace ridgeless
