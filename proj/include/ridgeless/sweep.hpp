#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ridgeless/bump.hpp"
#include "ridgeless/errors.hpp"
#include "ridgeless/geometry.hpp"
#include "ridgeless/interpolant.hpp"
#include "ridgeless/kernel.hpp"
#include "ridgeless/math.hpp"
#include "ridgeless/risk.hpp"
#include "ridgeless/version.hpp"

namespace ridgeless {

enum class BandwidthRule {
    absolute,       // c_values used verbatim
    multiples_of_nd // c = c_value * n^{1/d}
};

inline const char* to_string(BandwidthRule r) {
    return r == BandwidthRule::absolute ? "absolute" : "multiples_of_nd";
}

/// Experiment grid: the cross product of dimensions, sample sizes,
/// bandwidth values and seeds, one SweepRecord per cell.
struct SweepGrid {
    std::vector<int> d_list{1, 3};
    std::vector<Eigen::Index> n_list{100, 200, 400, 800, 1600};
    BandwidthRule c_rule = BandwidthRule::multiples_of_nd;
    std::vector<double> c_values{0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0};
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    TargetFunctionId f0 = TargetFunctionId::const_one;
    std::size_t m_test = 20000;
    double alpha_witness = 0.4;

    void validate() const {
        if (d_list.empty() || n_list.empty() || c_values.empty() || seeds.empty())
            throw usage_error("sweep grid: d_list, n_list, c_values and seeds must be nonempty");
        for (int d : d_list) require_odd_dimension(d);
        for (Eigen::Index n : n_list)
            if (n < 1) throw usage_error("sweep grid: n values must be >= 1");
        for (double c : c_values)
            if (!(c > 0.0)) throw usage_error("sweep grid: c values must be positive");
        if (m_test < 2) throw usage_error("sweep grid: m_test must be >= 2");
        if (!(alpha_witness > 0.0 && alpha_witness < 0.5))
            throw usage_error("sweep grid: alpha_witness must be in (0, 1/2)");
    }

    std::string canonical_string() const {
        std::ostringstream os;
        os << "d:";
        for (int d : d_list) os << d << ',';
        os << ";n:";
        for (auto n : n_list) os << n << ',';
        os << ";rule:" << to_string(c_rule) << ";c:";
        char buf[32];
        for (double c : c_values) {
            std::snprintf(buf, sizeof buf, "%.17g,", c);
            os << buf;
        }
        os << ";seeds:";
        for (auto s : seeds) os << s << ',';
        os << ";f0:" << to_string(f0) << ";m:" << m_test << ";alpha:";
        std::snprintf(buf, sizeof buf, "%.17g", alpha_witness);
        os << buf;
        return os.str();
    }

    std::uint64_t hash() const {
        const std::string s = canonical_string();
        return fnv1a(s.data(), s.size());
    }
};

/// One (d, n, c, seed) experiment cell.
struct SweepRecord {
    int d = 1;
    Eigen::Index n = 0;
    double c_value = 0.0; // grid value (multiplier under multiples_of_nd)
    double c = 0.0;       // resolved absolute bandwidth
    std::uint64_t seed = 0;

    double risk_p_mean = 0.0, risk_p_se = 0.0;
    double l2_fhat_mean = 0.0, l2_fhat_se = 0.0;
    double l2_f0 = 0.0;
    double conv_norm_fhat = 0.0;
    double witness_norm = 0.0; // finite part; see witness_divergent
    int witness_divergent = 0;
    double certificate = 0.0;
    double sum_rd = 0.0;
    double pow_avg_km1 = 0.0, pow_avg_k1 = 0.0, pow_avg_kd = 0.0;
    double jitter_used = 0.0, condition_estimate = 0.0, residual_max = 0.0;

    std::size_t m_test = 0;
    double alpha_witness = 0.0;
    TargetFunctionId f0 = TargetFunctionId::const_one;
    std::uint64_t grid_hash = 0;
    std::string version = version_string;
    std::string status = "ok";
};

inline double resolve_bandwidth(BandwidthRule rule, double c_value, Eigen::Index n, int d) {
    return rule == BandwidthRule::absolute
               ? c_value
               : c_value * std::pow(static_cast<double>(n), 1.0 / static_cast<double>(d));
}

/// Compute one cell. The sample depends on (d, n, seed) only, so a
/// c-sweep at fixed seed sees the same data; test draws likewise.
inline SweepRecord run_cell(int d, Eigen::Index n, double c_value, double c_abs, std::uint64_t seed,
                            TargetFunctionId f0_id, std::size_t m_test, double alpha_witness,
                            std::uint64_t grid_hash) {
    SweepRecord rec;
    rec.d = d;
    rec.n = n;
    rec.c_value = c_value;
    rec.c = c_abs;
    rec.seed = seed;
    rec.m_test = m_test;
    rec.alpha_witness = alpha_witness;
    rec.f0 = f0_id;
    rec.grid_hash = grid_hash;
    try {
        const Domain domain(d);
        const TargetFunction f0{f0_id};
        const std::uint64_t cell = derive_seed(seed, {static_cast<std::uint64_t>(d),
                                                      static_cast<std::uint64_t>(n)});
        SampleSet sample = attach_labels(sample_uniform_ball(n, d, derive_seed(cell, {1})), f0,
                                         derive_seed(cell, {2}));
        const SeparationStats stats = make_separation_stats(sample.points, d, true);
        rec.sum_rd = stats.sum_rd;
        rec.pow_avg_km1 = stats.power_averages.at(-1);
        rec.pow_avg_k1 = stats.power_averages.at(1);
        rec.pow_avg_kd = stats.power_averages.at(d);

        const KernelConfig cfg(d, c_abs, KernelScale::paper);
        const Interpolant model = fit_min_norm(cfg, sample);
        rec.jitter_used = model.diagnostics.jitter_used;
        rec.condition_estimate = model.diagnostics.condition_estimate;
        rec.residual_max = model.diagnostics.residual_max;
        rec.conv_norm_fhat = convention_norm(model);

        const CellEstimates est = mc_risk_and_norm(model, f0, domain, m_test, derive_seed(cell, {3}));
        rec.risk_p_mean = est.risk_p.mean;
        rec.risk_p_se = est.risk_p.std_error;
        rec.l2_fhat_mean = est.l2_norm.mean;
        rec.l2_fhat_se = est.l2_norm.std_error;
        rec.l2_f0 = f0.l2_norm_sq_on_omega(d);

        const WitnessNormParts wit =
            witness_convention_norm_parts(build_witness(sample, stats.radii, alpha_witness), cfg);
        rec.witness_norm = wit.finite_part;
        rec.witness_divergent = wit.divergent ? 1 : 0;

        const BulkSubset bulk = bulk_subset(stats.radii, 0.9);
        rec.certificate = holder_certificate(model, sample, stats, bulk.indices, cfg, alpha_witness).value;
    } catch (const std::exception& e) {
        rec.status = std::string("error: ") + e.what();
        const double nan = std::numeric_limits<double>::quiet_NaN();
        rec.risk_p_mean = rec.risk_p_se = rec.l2_fhat_mean = rec.l2_fhat_se = nan;
        rec.conv_norm_fhat = rec.witness_norm = rec.certificate = nan;
    }
    return rec;
}

/// Run every cell of the grid. Cells are independent and are executed
/// by a bounded worker pool; record content is a pure function of the
/// cell coordinates and seed, so the output is byte-identical for any
/// `jobs`. Records come back sorted by (d, n, c, seed).
inline std::vector<SweepRecord> run_sweep(const SweepGrid& grid, int jobs = 0) {
    grid.validate();
    if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs < 1) jobs = 1;

    struct Cell {
        int d;
        Eigen::Index n;
        double c_value, c_abs;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    for (int d : grid.d_list)
        for (Eigen::Index n : grid.n_list)
            for (double cv : grid.c_values)
                for (std::uint64_t s : grid.seeds)
                    cells.push_back({d, n, cv, resolve_bandwidth(grid.c_rule, cv, n, d), s});

    // eta profiles are lazily cached behind a mutex; warm them up front so
    // workers do not serialize on the first witness evaluation
    for (int d : grid.d_list) eta_moments(d);

    std::vector<SweepRecord> records(cells.size());
    std::atomic<std::size_t> next{0};
    const std::uint64_t gh = grid.hash();
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            const Cell& cell = cells[i];
            records[i] = run_cell(cell.d, cell.n, cell.c_value, cell.c_abs, cell.seed, grid.f0,
                                  grid.m_test, grid.alpha_witness, gh);
        }
    };
    std::vector<std::thread> pool;
    const int nthreads = std::min<int>(jobs, static_cast<int>(cells.size()));
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return records;
}

} // namespace ridgeless
