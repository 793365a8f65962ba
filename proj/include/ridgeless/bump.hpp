#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <mutex>
#include <vector>

#include "ridgeless/errors.hpp"
#include "ridgeless/geometry.hpp"
#include "ridgeless/kernel.hpp"
#include "ridgeless/math.hpp"
#include "ridgeless/quadrature.hpp"

namespace ridgeless {

/// Radial bump profile: 1 on [0, 1/4], e^{1 - 1/(2-4r)} on (1/4, 1/2),
/// 0 beyond. Continuous everywhere; the derivative jumps from 0 to -4
/// at r = 1/4 (see eta_moments on the consequences).
inline double eta_radial(double r) {
    if (r <= 0.25) return 1.0;
    if (r >= 0.5) return 0.0;
    return std::exp(1.0 - 1.0 / (2.0 - 4.0 * r));
}

inline double eta_radial_deriv(double r) {
    if (r <= 0.25 || r >= 0.5) return 0.0;
    const double u = 2.0 - 4.0 * r;
    return -4.0 * std::exp(1.0 - 1.0 / u) / (u * u);
}

inline double eta(const Eigen::Ref<const Eigen::RowVectorXd>& x) { return eta_radial(x.norm()); }

/// One Fourier-side moment <eta>_k = int |F eta|^2 |p|^{2k} dp.
/// `divergent` marks the moments that are +infinity (k >= 2: the
/// derivative corner at r = 1/4 gives |F eta(p)| ~ sin(p/4) p^{-(d+3)/2},
/// so the k-th moment integrand does not decay once 2k - 4 >= 0).
struct EtaMoment {
    double value = 0.0;
    bool divergent = false;
};

/// Cached per-dimension profile constants of eta.
struct BumpProfile {
    int d = 1;
    double l2_norm_sq = 0.0;                // ||eta||^2_{L2(R^d)}, spatial quadrature
    std::vector<EtaMoment> sobolev_moments; // k = 1 .. (d+1)/2

    EtaMoment moment(int k) const {
        if (k == 0) return {l2_norm_sq, false};
        return sobolev_moments.at(static_cast<std::size_t>(k) - 1);
    }
};

namespace detail {

inline constexpr double eta_support = 0.5;
inline constexpr double eta_plateau = 0.25;
// eta < 1e-30 beyond this radius; integrands are cut here
inline constexpr double eta_rmax = 0.4965;

/// j_l(z) / z^l by series (any l >= 0, |z| < ~1).
inline double jl_over_zl_series(int l, double z) {
    const double z2 = z * z;
    double dfact = 1.0;
    for (int t = 2 * l + 1; t > 1; t -= 2) dfact *= t;
    double term = 1.0 / dfact, sum = term;
    for (int m = 0; m < 60; ++m) {
        term *= -z2 / (2.0 * (m + 1) * (2 * l + 2 * m + 3));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

/// G_d(z): the radial Fourier kernel with the r^{d-1} weight factored
/// out, i.e. W_d(p) = A_d int eta(r) r^{d-1} G_d(pr) dr with
/// A_d = 2^{(d+1)/2} pi^{(d-1)/2}. G_1 = cos; for odd d >= 3,
/// G_d(z) = j_{(d-3)/2}(z) / z^{(d-3)/2}.
inline double eta_kernel_g(int d, double z) {
    if (d == 1) return std::cos(z);
    const int l = (d - 3) / 2;
    if (std::abs(z) < 1.0) return jl_over_zl_series(l, z);
    std::vector<double> j;
    spherical_bessel(l, std::abs(z), j);
    return j[static_cast<std::size_t>(l)] / std::pow(std::abs(z), l);
}

inline double eta_amplitude(int d) {
    return std::pow(2.0, 0.5 * (d + 1)) * std::pow(pi, 0.5 * (d - 1));
}

/// Fourier transform of the indicator of B(0, R) in R^d (odd d):
/// A_d R^{(d+1)/2} p^{-(d-1)/2} j_{(d-1)/2}(pR).
inline double ball_indicator_ft(int d, double p, double R) {
    if (p == 0.0) return unit_ball_volume(d) * std::pow(R, d);
    const int l = (d - 1) / 2;
    const double z = p * R;
    double jl;
    if (z < 1.0) {
        jl = jl_over_zl_series(l, z) * std::pow(z, l);
    } else {
        std::vector<double> j;
        spherical_bessel(l, z, j);
        jl = j[static_cast<std::size_t>(l)];
    }
    return eta_amplitude(d) * std::pow(R, 0.5 * (d + 1)) * std::pow(p, -0.5 * (d - 1)) * jl;
}

/// Radial Fourier transform W_d(p) = int_{R^d} eta(|x|) e^{-ip.x} dx
/// (non-unitary), evaluated by closed form on the plateau ball plus a
/// Filon-Legendre panel quadrature on the annulus. Accuracy is
/// p-independent: panels freeze Legendre coefficients of the smooth
/// factors once, and oscillatory moments use exact identities.
class EtaTransform {
public:
    explicit EtaTransform(int d) : d_(d) {
        require_odd_dimension(d);
        if (d > 7) throw invalid_dimension_error(d);
        switch (d) {
            case 1: terms_ = {{false, 0, 1.0}}; break;           // cos z
            case 3: terms_ = {{true, 1, 1.0}}; break;            // sin z / z
            case 5: terms_ = {{true, 3, 1.0}, {false, 2, -1.0}}; break;
            case 7: terms_ = {{true, 5, 3.0}, {true, 3, -1.0}, {false, 4, -3.0}}; break;
        }
        const GaussRule proj = gauss_legendre(24);
        double left = eta_plateau;
        while (left < eta_rmax) {
            const double width = std::min(0.35 * (eta_support - left), eta_rmax - left);
            const double right = left + width;
            PanelSet ps;
            ps.direct_a = left;
            ps.direct_b = right;
            for (const auto& t : terms_) {
                const int pow_r = d_ - 1 - t.s;
                ps.filon.push_back(FilonPanel::build(
                    [pow_r](double r) { return eta_radial(r) * std::pow(r, pow_r); }, left, right,
                    16, proj));
            }
            panels_.push_back(std::move(ps));
            left = right;
        }
        direct_rule_ = gauss_legendre(24);
    }

    int dim() const { return d_; }

    double operator()(double p) const {
        const double plateau = ball_indicator_ft(d_, p, eta_plateau);
        double annulus = 0.0;
        if (p <= direct_switch_) {
            for (const auto& ps : panels_)
                annulus += gauss_integrate(
                    [this, p](double r) {
                        return eta_radial(r) * std::pow(r, d_ - 1) * eta_kernel_g(d_, p * r);
                    },
                    ps.direct_a, ps.direct_b, direct_rule_);
        } else {
            std::vector<double> bessel_buf;
            for (const auto& ps : panels_) {
                for (std::size_t t = 0; t < terms_.size(); ++t) {
                    const std::complex<double> osc = ps.filon[t].oscillatory(p, bessel_buf);
                    const double part = terms_[t].is_sin ? osc.imag() : osc.real();
                    annulus += terms_[t].coef * part * std::pow(p, -terms_[t].s);
                }
            }
        }
        return plateau + eta_amplitude(d_) * annulus;
    }

private:
    struct Term {
        bool is_sin;
        int s;      // power of (pr)^{-s} carried by the term
        double coef;
    };
    struct PanelSet {
        double direct_a, direct_b;
        std::vector<FilonPanel> filon; // one per term
    };

    int d_;
    std::vector<Term> terms_;
    std::vector<PanelSet> panels_;
    GaussRule direct_rule_;
    static constexpr double direct_switch_ = 8.0; // below: non-oscillatory Gauss path
};

/// int |F eta|^2 |p|^{2k} dp over R^d (unitary transform, Plancherel
/// constant 1) for a convergent k. Composite Gauss panels in p with an
/// averaged-envelope tail correction, refined until stable to 1e-8.
inline double eta_fourier_moment_integral(const EtaTransform& w, int k) {
    const int d = w.dim();
    const double norm_const = unit_sphere_area(d) / std::pow(2.0 * pi, d);
    const GaussRule rule = gauss_legendre(16);
    const double panel_w = 4.0;

    struct PanelVal {
        double b, plain, weighted;
    };
    std::vector<PanelVal> vals;
    double core = 0.0, prev_estimate = std::numeric_limits<double>::quiet_NaN();
    double p_lo = 0.0;
    for (double P = 512.0; P <= 262144.0; P *= 2.0) {
        for (; p_lo < P; p_lo += panel_w) {
            double plain = 0.0, weighted = 0.0;
            const double mid = p_lo + 0.5 * panel_w, half = 0.5 * panel_w;
            for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
                const double p = mid + half * rule.nodes[q];
                const double wd = w(p);
                const double f = norm_const * wd * wd * std::pow(p, 2 * k + d - 1);
                plain += rule.weights[q] * f;
                weighted += rule.weights[q] * f * p * p;
            }
            plain *= half;
            weighted *= half;
            core += plain;
            vals.push_back({p_lo + panel_w, plain, weighted});
        }
        // tail ~ A / P with A the windowed mean of integrand * p^2
        double win_weighted = 0.0, win_len = 0.0;
        for (const auto& v : vals)
            if (v.b > 0.8 * P) {
                win_weighted += v.weighted;
                win_len += panel_w;
            }
        const double tail = (win_weighted / win_len) / P;
        const double estimate = core + tail;
        if (!std::isnan(prev_estimate) &&
            std::abs(estimate - prev_estimate) <= 1e-8 * std::abs(estimate))
            return estimate;
        prev_estimate = estimate;
    }
    throw quadrature_error("eta Fourier moment did not stabilize to 1e-8 under refinement");
}

} // namespace detail

/// Profile constants of eta in dimension d (odd, <= 7), cached.
/// l2_norm_sq comes from spatial radial quadrature; the Sobolev moments
/// from the radial Fourier quadrature. Moments with k >= 2 are exactly
/// +infinity (derivative corner of eta at r = 1/4) and are returned as
/// {inf, divergent}; the quadrature error path is reserved for
/// convergent integrals that fail to stabilize.
inline const BumpProfile& eta_moments(int d) {
    require_odd_dimension(d);
    if (d > 7) throw invalid_dimension_error(d);
    static std::map<int, BumpProfile> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(d);
    if (it != cache.end()) return it->second;

    BumpProfile prof;
    prof.d = d;
    const double surf = unit_sphere_area(d);
    const double plateau_part = std::pow(detail::eta_plateau, d) / d;
    const double annulus_part = adaptive_simpson(
        [d](double r) {
            const double e = eta_radial(r);
            return e * e * std::pow(r, d - 1);
        },
        detail::eta_plateau, detail::eta_rmax, 1e-15);
    prof.l2_norm_sq = surf * (plateau_part + annulus_part);

    const detail::EtaTransform w(d);
    const int kmax = (d + 1) / 2;
    for (int k = 1; k <= kmax; ++k) {
        if (k >= 2)
            prof.sobolev_moments.push_back({std::numeric_limits<double>::infinity(), true});
        else
            prof.sobolev_moments.push_back({detail::eta_fourier_moment_integral(w, k), false});
    }
    return cache.emplace(d, std::move(prof)).first->second;
}

/// Fourier-side evaluation of <eta>_k for a convergent k, irrespective
/// of the cached profile. Exposed for the Plancherel pin (k = 0) and
/// cross-checks.
inline double eta_fourier_moment(int d, int k) {
    require_odd_dimension(d);
    const detail::EtaTransform w(d);
    return detail::eta_fourier_moment_integral(w, k);
}

/// Spatial-domain gradient norm int |grad eta|^2 over R^d; equals
/// <eta>_1 under the Plancherel-1 convention. Test oracle.
inline double eta_grad_norm_sq_spatial(int d) {
    require_odd_dimension(d);
    return unit_sphere_area(d) *
           adaptive_simpson(
               [d](double r) {
                   const double e = eta_radial_deriv(r);
                   return e * e * std::pow(r, d - 1);
               },
               detail::eta_plateau, detail::eta_rmax, 1e-15);
}

/// The explicit interpolant g_alpha(x) = sum_i Y_i eta((x - X_i)/(alpha r_i)).
/// Supports B(X_i, alpha r_i / 2) are pairwise disjoint for alpha < 1/2,
/// so at most one term is ever active.
struct WitnessInterpolant {
    Eigen::MatrixXd points;
    Eigen::VectorXd targets;
    Eigen::VectorXd radii;
    double alpha = 0.4;
    int d = 1;
};

inline WitnessInterpolant build_witness(const SampleSet& sample, const Eigen::VectorXd& radii,
                                        double alpha) {
    if (!(alpha > 0.0 && alpha < 0.5))
        throw std::invalid_argument("build_witness: alpha must lie in (0, 1/2)");
    if (radii.size() != sample.n())
        throw std::invalid_argument("build_witness: radii/sample size mismatch");
    for (Eigen::Index i = 0; i < radii.size(); ++i)
        if (!(radii(i) > 0.0)) throw std::invalid_argument("build_witness: radii must be positive");
    return WitnessInterpolant{sample.points, sample.targets, radii, alpha, sample.d()};
}

inline double witness_eval(const WitnessInterpolant& w, const Eigen::Ref<const Eigen::RowVectorXd>& x) {
    for (Eigen::Index i = 0; i < w.points.rows(); ++i) {
        const double scale = w.alpha * w.radii(i);
        const double dist = (x - w.points.row(i)).norm();
        if (dist < 0.5 * scale) return w.targets(i) * eta_radial(dist / scale);
    }
    return 0.0;
}

/// Closed form |g_alpha|^2_{L2(R^d)} = alpha^d |eta|^2_{L2} sum Y_i^2 r_i^d
/// (disjoint supports).
inline double witness_l2_norm_sq(const WitnessInterpolant& w) {
    const BumpProfile& prof = eta_moments(w.d);
    double s = 0.0;
    for (Eigen::Index i = 0; i < w.points.rows(); ++i)
        s += w.targets(i) * w.targets(i) * std::pow(w.radii(i), w.d);
    return std::pow(w.alpha, w.d) * prof.l2_norm_sq * s;
}

/// Convention norm of the witness, split into the finite part and the
/// divergent marker. Disjoint supports make the bumps orthogonal in
/// every derivative term, and scaling gives
/// <eta((x-X_i)/(a r_i))>_k = (a r_i)^{d-2k} <eta>_k, so
///   <g> = |g|^2_{L2} + sum_k binom((d+1)/2, k) c^{-2k}
///                        sum_i Y_i^2 (a r_i)^{d-2k} <eta>_k.
/// For d >= 3 the k >= 2 moments are +inf, hence total = +inf whenever
/// some Y_i is nonzero.
struct WitnessNormParts {
    double total = 0.0;       // +inf when divergent
    double finite_part = 0.0; // L2 term plus the convergent k terms
    bool divergent = false;
};

inline WitnessNormParts witness_convention_norm_parts(const WitnessInterpolant& w,
                                                      const KernelConfig& cfg) {
    if (cfg.d != w.d) throw std::invalid_argument("witness_convention_norm: dimension mismatch");
    const BumpProfile& prof = eta_moments(w.d);
    const int kmax = (w.d + 1) / 2;
    const Eigen::Index n = w.points.rows();

    WitnessNormParts parts;
    parts.finite_part = witness_l2_norm_sq(w);
    double y2_sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) y2_sum += w.targets(i) * w.targets(i);
    for (int k = 1; k <= kmax; ++k) {
        const EtaMoment mk = prof.moment(k);
        double s = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            s += w.targets(i) * w.targets(i) * std::pow(w.alpha * w.radii(i), w.d - 2 * k);
        const double weight = binomial(kmax, k) * std::pow(cfg.c, -2 * k);
        if (mk.divergent) {
            if (y2_sum > 0.0) parts.divergent = true; // g == 0 has zero norm regardless
        } else {
            parts.finite_part += weight * s * mk.value;
        }
    }
    parts.total = parts.divergent ? std::numeric_limits<double>::infinity() : parts.finite_part;
    return parts;
}

inline double witness_convention_norm(const WitnessInterpolant& w, const KernelConfig& cfg) {
    return witness_convention_norm_parts(w, cfg).total;
}

} // namespace ridgeless
