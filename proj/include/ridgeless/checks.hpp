#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "ridgeless/bump.hpp"
#include "ridgeless/geometry.hpp"
#include "ridgeless/grid_fourier.hpp"
#include "ridgeless/interpolant.hpp"
#include "ridgeless/math.hpp"
#include "ridgeless/rng.hpp"

namespace ridgeless {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace checks {

inline std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

/// Fourier-side verification of the closed convention norm (d=1).
inline CheckResult prop_a1_suite(std::uint64_t seed = 20240601) {
    double worst = 0.0;
    int count = 0;
    for (double c : {0.5, 2.0, 8.0}) {
        for (Eigen::Index n : {1, 10, 50}) {
            SampleSet s = attach_labels(
                sample_uniform_ball(n, 1, derive_seed(seed, {static_cast<std::uint64_t>(n),
                                                             static_cast<std::uint64_t>(count)})),
                TargetFunction{TargetFunctionId::const_one},
                derive_seed(seed, {77, static_cast<std::uint64_t>(count)}));
            const PropA1Report rep = verify_prop_a1(s, c);
            worst = std::max(worst, std::abs(rep.ratio - 1.0));
            ++count;
        }
    }
    return {"fourier convention norm ratio (d=1)", worst <= 0.02,
            fmt("max |ratio-1| = %.5f over %.0f instances (tol 0.02)", worst, count)};
}

/// Min-norm fit never beats the bump witness; d >= 3 comparisons are
/// trivially true (witness norm diverges) and are counted separately.
inline CheckResult norm_comparison_suite(std::uint64_t seed = 8231) {
    int violations = 0, trivial = 0, total = 0;
    Rng pick(seed);
    for (int d : {1, 3}) {
        for (int rep = 0; rep < 15; ++rep) {
            const auto n = static_cast<Eigen::Index>(5 + pick.bits() % 40);
            const double c = std::exp(pick.uniform(std::log(0.5), std::log(32.0)));
            const double alpha = (rep % 3 == 0) ? 0.1 : (rep % 3 == 1) ? 0.25 : 0.4;
            SampleSet s = attach_labels(
                sample_uniform_ball(n, d, derive_seed(seed, {1, static_cast<std::uint64_t>(total)})),
                TargetFunction{TargetFunctionId::const_one},
                derive_seed(seed, {2, static_cast<std::uint64_t>(total)}));
            const KernelConfig cfg(d, c, KernelScale::paper);
            const Interpolant fit = fit_min_norm(cfg, s);
            const Eigen::VectorXd radii = separation_radii(s.points, true);
            const WitnessNormParts wit = witness_convention_norm_parts(build_witness(s, radii, alpha), cfg);
            if (wit.divergent) ++trivial;
            if (!(convention_norm(fit) <= wit.total * (1.0 + 1e-9))) ++violations;
            ++total;
        }
    }
    return {"min-norm <= witness convention norm",
            violations == 0,
            fmt("%.0f violations / %.0f instances (%.0f trivially satisfied: witness divergent at d>=3)",
                violations, total, trivial)};
}

/// Deterministic volume bound sum r_i^d <= 2^d (boundary-inclusive radii).
inline CheckResult sum_rd_suite(std::uint64_t seed = 5150, int configs = 200) {
    int bad = 0;
    Rng pick(seed);
    for (int t = 0; t < configs; ++t) {
        const int d = (t % 2) ? 3 : 1;
        const auto n = static_cast<Eigen::Index>(2 + pick.bits() % 400);
        const SampleSet s = sample_uniform_ball(n, d, derive_seed(seed, {static_cast<std::uint64_t>(t)}));
        const Eigen::VectorXd r = separation_radii(s.points, true);
        double sum = 0.0;
        for (Eigen::Index i = 0; i < r.size(); ++i) sum += std::pow(r(i), d);
        if (!(sum <= std::pow(2.0, d))) ++bad;
    }
    return {"sum r_i^d <= 2^d", bad == 0, fmt("%.0f violations / %.0f configurations", bad, configs)};
}

/// log-log slope of the separation power averages against n.
/// Fits over all (seed, n) points; target -k/d within 0.15.
inline double power_average_slope(int d, double k, const std::vector<Eigen::Index>& ns, int n_seeds,
                                  std::uint64_t seed) {
    std::vector<double> xs, ys;
    for (Eigen::Index n : ns) {
        for (int s = 0; s < n_seeds; ++s) {
            const SampleSet smp = sample_uniform_ball(
                n, d, derive_seed(seed, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(s)}));
            const Eigen::VectorXd r = separation_radii(smp.points, true);
            xs.push_back(std::log(static_cast<double>(n)));
            ys.push_back(std::log(power_average(r, k)));
        }
    }
    return fit_slope(xs, ys);
}

inline CheckResult scaling_slope_suite(int n_seeds = 8, std::uint64_t seed = 424242) {
    double worst = 0.0;
    std::string detail;
    bool pass = true;
    struct Case {
        int d;
        double k;
        std::vector<Eigen::Index> ns;
    };
    // larger-n band for d=3: the boundary layer biases small-n slopes
    const std::vector<Case> cases = {{1, -1.0, {100, 400, 1600}},
                                     {1, 1.0, {100, 400, 1600}},
                                     {3, -1.0, {400, 800, 1600}},
                                     {3, 1.0, {400, 800, 1600}},
                                     {3, 3.0, {400, 800, 1600}}};
    for (const auto& cs : cases) {
        const double slope = power_average_slope(cs.d, cs.k, cs.ns, n_seeds, seed);
        const double err = std::abs(slope + cs.k / cs.d);
        worst = std::max(worst, err);
        if (err > 0.15) pass = false;
        detail += fmt("d=%.0f k=%+.0f: ", cs.d, cs.k) + fmt("slope %+.3f; ", slope);
    }
    return {"power-average scaling slopes -k/d (tol 0.15)", pass, detail};
}

inline std::vector<CheckResult> run_all() {
    return {prop_a1_suite(), norm_comparison_suite(), sum_rd_suite(), scaling_slope_suite()};
}

} // namespace checks

} // namespace ridgeless
