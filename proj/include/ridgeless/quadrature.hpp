#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "ridgeless/errors.hpp"
#include "ridgeless/math.hpp"

namespace ridgeless {

struct GaussRule {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

/// Gauss-Legendre nodes/weights by Newton iteration on P_n.
inline GaussRule gauss_legendre(int n) {
    GaussRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int l = 2; l <= n; ++l) {
                const double p2 = ((2 * l - 1) * x * p1 - (l - 1) * p0) / l;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[static_cast<std::size_t>(i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

template <typename F>
double gauss_integrate(const F& f, double a, double b, const GaussRule& rule) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        s += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return half * s;
}

namespace detail {

template <typename F>
double adaptive_simpson_rec(const F& f, double a, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace detail

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double tol = 1e-12, int max_depth = 48) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

/// Fixed composite Simpson on n (even) intervals; the cross-check rule.
template <typename F>
double simpson_fixed(const F& f, double a, double b, int n) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; i += 2) s += 4.0 * f(a + i * h);
    for (int i = 2; i < n; i += 2) s += 2.0 * f(a + i * h);
    return s * h / 3.0;
}

/// Spherical Bessel j_0..j_lmax at x >= 0. Upward recurrence when stable
/// (x > lmax), Miller downward recurrence otherwise.
inline void spherical_bessel(int lmax, double x, std::vector<double>& out) {
    out.assign(static_cast<std::size_t>(lmax) + 1, 0.0);
    if (x == 0.0) {
        out[0] = 1.0;
        return;
    }
    if (x > lmax) {
        double jm1 = std::sin(x) / x;
        out[0] = jm1;
        if (lmax == 0) return;
        double j0 = std::sin(x) / (x * x) - std::cos(x) / x;
        out[1] = j0;
        for (int l = 1; l < lmax; ++l) {
            const double j1 = (2 * l + 1) / x * j0 - jm1;
            out[static_cast<std::size_t>(l) + 1] = j1;
            jm1 = j0;
            j0 = j1;
        }
        return;
    }
    const int start = lmax + 16 + static_cast<int>(x);
    double jp1 = 0.0, j0 = 1e-280;
    std::vector<double> buf(static_cast<std::size_t>(lmax) + 1, 0.0);
    for (int l = start; l >= 0; --l) {
        const double jm1 = (2 * l + 3) / x * j0 - jp1;
        jp1 = j0;
        j0 = jm1;
        if (l <= lmax) buf[static_cast<std::size_t>(l)] = j0;
        if (std::abs(j0) > 1e250) { // renormalize to avoid overflow
            for (auto& v : buf) v /= 1e250;
            jp1 /= 1e250;
            j0 /= 1e250;
        }
    }
    const double scale = (std::sin(x) / x) / buf[0];
    for (int l = 0; l <= lmax; ++l) out[static_cast<std::size_t>(l)] = buf[static_cast<std::size_t>(l)] * scale;
}

/// One panel of a Filon-Legendre oscillatory integrator. The smooth
/// factor g is frozen as Legendre coefficients; oscillatory moments use
/// the exact identity  int_{-1}^{1} P_l(t) e^{iwt} dt = 2 i^l j_l(w),
/// so accuracy is independent of the frequency p.
struct FilonPanel {
    double center = 0.0;
    double half = 0.0;
    std::vector<double> coeffs; // Legendre coefficients of g on the panel

    template <typename F>
    static FilonPanel build(const F& g, double a, double b, int degree, const GaussRule& proj_rule) {
        FilonPanel panel;
        panel.center = 0.5 * (a + b);
        panel.half = 0.5 * (b - a);
        panel.coeffs.assign(static_cast<std::size_t>(degree) + 1, 0.0);
        std::vector<double> gv(proj_rule.nodes.size());
        for (std::size_t q = 0; q < proj_rule.nodes.size(); ++q)
            gv[q] = g(panel.center + panel.half * proj_rule.nodes[q]);
        for (std::size_t q = 0; q < proj_rule.nodes.size(); ++q) {
            const double t = proj_rule.nodes[q];
            const double wf = proj_rule.weights[q] * gv[q];
            double p0 = 1.0, p1 = t;
            panel.coeffs[0] += wf * p0;
            if (degree >= 1) panel.coeffs[1] += wf * p1;
            for (int l = 2; l <= degree; ++l) {
                const double p2 = ((2 * l - 1) * t * p1 - (l - 1) * p0) / l;
                panel.coeffs[static_cast<std::size_t>(l)] += wf * p2;
                p0 = p1;
                p1 = p2;
            }
        }
        for (int l = 0; l <= degree; ++l)
            panel.coeffs[static_cast<std::size_t>(l)] *= 0.5 * (2 * l + 1);
        return panel;
    }

    /// integral over the panel of g(r) e^{ipr} dr.
    std::complex<double> oscillatory(double p, std::vector<double>& bessel_buf) const {
        const double w = p * half;
        const int lmax = static_cast<int>(coeffs.size()) - 1;
        spherical_bessel(lmax, std::abs(w), bessel_buf);
        // sum over l of a_l * 2 i^l j_l(w); j_l(-w) = (-1)^l j_l(w)
        std::complex<double> s(0.0, 0.0);
        const double sgn = (w < 0.0) ? -1.0 : 1.0;
        for (int l = 0; l <= lmax; ++l) {
            const double jl = bessel_buf[static_cast<std::size_t>(l)] * ((l % 2 && sgn < 0) ? -1.0 : 1.0);
            const double term = 2.0 * coeffs[static_cast<std::size_t>(l)] * jl;
            switch (l % 4) {
                case 0: s += std::complex<double>(term, 0.0); break;
                case 1: s += std::complex<double>(0.0, term); break;
                case 2: s += std::complex<double>(-term, 0.0); break;
                default: s += std::complex<double>(0.0, -term); break;
            }
        }
        return half * std::polar(1.0, p * center) * s;
    }
};

} // namespace ridgeless
