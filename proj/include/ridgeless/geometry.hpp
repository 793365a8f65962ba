#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "ridgeless/errors.hpp"
#include "ridgeless/math.hpp"
#include "ridgeless/quadrature.hpp"
#include "ridgeless/rng.hpp"

namespace ridgeless {

inline constexpr double duplicate_threshold = 1e-12;

/// Sampling domain: the closed unit ball in odd dimension d, uniform density.
struct Domain {
    int d = 1;
    double radius = 1.0;

    explicit Domain(int dim) : d(dim) { require_odd_dimension(dim); }

    double volume() const { return unit_ball_volume(d); }
    double density() const { return 1.0 / volume(); } // c_rho = C_rho = 1/vol
};

enum class TargetFunctionId { const_one, gauss_bump, coord_linear };

inline const char* to_string(TargetFunctionId id) {
    switch (id) {
        case TargetFunctionId::const_one: return "const_one";
        case TargetFunctionId::gauss_bump: return "gauss_bump";
        case TargetFunctionId::coord_linear: return "coord_linear";
    }
    return "?";
}

inline TargetFunctionId target_function_from_string(const std::string& s) {
    if (s == "const_one") return TargetFunctionId::const_one;
    if (s == "gauss_bump") return TargetFunctionId::gauss_bump;
    if (s == "coord_linear") return TargetFunctionId::coord_linear;
    throw usage_error("unknown target function id: " + s);
}

/// Smooth nonzero regression target with a known squared L2(Omega) norm.
struct TargetFunction {
    TargetFunctionId id = TargetFunctionId::const_one;

    double operator()(const Eigen::Ref<const Eigen::RowVectorXd>& x) const {
        switch (id) {
            case TargetFunctionId::const_one: return 1.0;
            case TargetFunctionId::gauss_bump: return std::exp(-x.squaredNorm());
            case TargetFunctionId::coord_linear: return x(0);
        }
        return 0.0;
    }

    /// ||f0||^2_{L2(Omega)} on the unit ball in R^d. Analytic where a
    /// closed form exists, radial quadrature for the Gaussian bump.
    double l2_norm_sq_on_omega(int d) const {
        require_odd_dimension(d);
        switch (id) {
            case TargetFunctionId::const_one: return unit_ball_volume(d);
            case TargetFunctionId::coord_linear: return unit_ball_volume(d) / (d + 2);
            case TargetFunctionId::gauss_bump: {
                const double s = unit_sphere_area(d);
                return s * adaptive_simpson(
                               [d](double r) { return std::exp(-2.0 * r * r) * std::pow(r, d - 1); },
                               0.0, 1.0, 1e-14);
            }
        }
        return 0.0;
    }
};

/// Design points in the closed unit ball plus targets Y_i = f0(X_i) + xi_i.
struct SampleSet {
    Eigen::MatrixXd points;  // n x d, each row in the closed unit ball
    Eigen::VectorXd targets; // Y_i
    Eigen::VectorXd noise;   // xi_i in {-1, +1}
    TargetFunctionId f0_id = TargetFunctionId::const_one;
    std::uint64_t seed = 0;

    Eigen::Index n() const { return points.rows(); }
    int d() const { return static_cast<int>(points.cols()); }
};

namespace detail {

/// Exact duplicate scan. Quadratic for small n, cell-hash for large n
/// (cells of the duplicate threshold size; colliding cells only).
inline bool has_near_duplicate(const Eigen::MatrixXd& pts, std::size_t* out_i, std::size_t* out_j) {
    const Eigen::Index n = pts.rows();
    if (n <= 4096) {
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = i + 1; j < n; ++j)
                if ((pts.row(i) - pts.row(j)).norm() <= duplicate_threshold) {
                    *out_i = static_cast<std::size_t>(i);
                    *out_j = static_cast<std::size_t>(j);
                    return true;
                }
        return false;
    }
    std::unordered_map<std::uint64_t, std::vector<Eigen::Index>> cells;
    cells.reserve(static_cast<std::size_t>(n) * 2);
    const double cell = 16.0 * duplicate_threshold;
    for (Eigen::Index i = 0; i < n; ++i) {
        std::uint64_t h = 1469598103934665603ull;
        for (Eigen::Index k = 0; k < pts.cols(); ++k) {
            const auto q = static_cast<std::int64_t>(std::floor(pts(i, k) / cell));
            h = fnv1a(&q, sizeof q, h);
        }
        auto& bucket = cells[h];
        for (Eigen::Index j : bucket)
            if ((pts.row(i) - pts.row(j)).norm() <= duplicate_threshold) {
                *out_i = static_cast<std::size_t>(j);
                *out_j = static_cast<std::size_t>(i);
                return true;
            }
        bucket.push_back(i);
    }
    return false;
}

} // namespace detail

/// n i.i.d. uniform draws from the closed unit ball in R^d.
/// Deterministic in (n, d, seed); re-draws internally (up to 3 times)
/// in the probability-zero event of a near-duplicate pair.
inline SampleSet sample_uniform_ball(Eigen::Index n, int d, std::uint64_t seed) {
    require_odd_dimension(d);
    if (d > 16) throw invalid_dimension_error(d);
    if (n < 0) throw std::invalid_argument("sample_uniform_ball: n must be >= 0");
    SampleSet s;
    s.seed = seed;
    s.points.resize(n, d);
    std::size_t di = 0, dj = 0;
    for (int attempt = 0; attempt < 4; ++attempt) {
        Rng rng(derive_seed(seed, {0x706f696e7473ull, static_cast<std::uint64_t>(n),
                                   static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(attempt)}));
        for (Eigen::Index i = 0; i < n; ++i) {
            std::array<double, 16> buf{};
            rng.ball_point(d, buf.begin());
            for (int k = 0; k < d; ++k) s.points(i, k) = buf[static_cast<std::size_t>(k)];
        }
        if (n < 2 || !detail::has_near_duplicate(s.points, &di, &dj)) return s;
    }
    throw duplicate_point_error(di, dj, duplicate_threshold);
}

/// Attach labels Y_i = f0(X_i) + xi_i with Rademacher noise from `seed`.
inline SampleSet attach_labels(SampleSet s, const TargetFunction& f0, std::uint64_t seed) {
    const Eigen::Index n = s.n();
    s.f0_id = f0.id;
    s.targets.resize(n);
    s.noise.resize(n);
    Rng rng(derive_seed(seed, {0x6c6162656c73ull, static_cast<std::uint64_t>(n)}));
    for (Eigen::Index i = 0; i < n; ++i) {
        s.noise(i) = rng.sign();
        s.targets(i) = f0(s.points.row(i)) + s.noise(i);
    }
    return s;
}

/// Separation radii r_i. With the boundary included,
/// r_i = min(min_{j != i} |X_i - X_j|, 1 - |X_i|); without it, the
/// nearest-neighbor distance alone. Exact O(n^2) scan.
inline Eigen::VectorXd separation_radii(const Eigen::MatrixXd& points, bool include_boundary) {
    const Eigen::Index n = points.rows();
    if (n == 0) return Eigen::VectorXd();
    if (n == 1 && !include_boundary)
        throw std::invalid_argument("separation_radii: a single point has no pairwise distance; "
                                    "enable include_boundary");
    Eigen::VectorXd r(n);
    if (include_boundary)
        for (Eigen::Index i = 0; i < n; ++i) r(i) = 1.0 - points.row(i).norm();
    else
        r.setConstant(std::numeric_limits<double>::infinity());
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double dist = (points.row(i) - points.row(j)).norm();
            if (dist <= duplicate_threshold)
                throw duplicate_point_error(static_cast<std::size_t>(i), static_cast<std::size_t>(j), dist);
            if (dist < r(i)) r(i) = dist;
            if (dist < r(j)) r(j) = dist;
        }
    }
    return r;
}

/// (1/n) sum r_i^k for real k >= -1.
inline double power_average(const Eigen::VectorXd& radii, double k) {
    if (k < -1.0) throw std::invalid_argument("power_average: k must be >= -1");
    if (radii.size() == 0) throw std::invalid_argument("power_average: empty radii");
    double s = 0.0;
    for (Eigen::Index i = 0; i < radii.size(); ++i) {
        if (!(radii(i) > 0.0)) throw std::invalid_argument("power_average: radii must be positive");
        s += std::pow(radii(i), k);
    }
    return s / static_cast<double>(radii.size());
}

/// Separation-radius statistics for a sample in dimension d.
struct SeparationStats {
    Eigen::VectorXd radii;
    bool include_boundary = true;
    std::map<int, double> power_averages; // k in {-1} and {1..d}
    double sum_rd = 0.0;
};

inline SeparationStats make_separation_stats(const Eigen::MatrixXd& points, int d, bool include_boundary) {
    SeparationStats st;
    st.include_boundary = include_boundary;
    st.radii = separation_radii(points, include_boundary);
    st.power_averages[-1] = power_average(st.radii, -1.0);
    for (int k = 1; k <= d; ++k) st.power_averages[k] = power_average(st.radii, k);
    st.sum_rd = st.power_averages[d] * static_cast<double>(st.radii.size());
    return st;
}

/// Middle quantile band of the radii: drop (1-alpha)/2 rank mass from each
/// tail, then include every index whose value lies within the band (so
/// ties never split; all-equal radii yield every index).
struct BulkSubset {
    std::vector<Eigen::Index> indices;
    double min_r = 0.0;
    double max_r = 0.0;
};

inline BulkSubset bulk_subset(const Eigen::VectorXd& radii, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("bulk_subset: alpha must be in (0,1)");
    const Eigen::Index n = radii.size();
    if (n == 0) throw std::invalid_argument("bulk_subset: empty radii");
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return radii(a) < radii(b); });
    const auto want = static_cast<Eigen::Index>(std::ceil(alpha * static_cast<double>(n)));
    Eigen::Index lo = static_cast<Eigen::Index>(std::floor(0.5 * (1.0 - alpha) * static_cast<double>(n)));
    if (lo + want > n) lo = n - want;
    const double lo_val = radii(order[static_cast<std::size_t>(lo)]);
    const double hi_val = radii(order[static_cast<std::size_t>(lo + want - 1)]);
    BulkSubset out;
    out.min_r = lo_val;
    out.max_r = hi_val;
    for (Eigen::Index i = 0; i < n; ++i)
        if (radii(i) >= lo_val && radii(i) <= hi_val) out.indices.push_back(i);
    return out;
}

} // namespace ridgeless
