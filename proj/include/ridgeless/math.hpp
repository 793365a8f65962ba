#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "ridgeless/errors.hpp"

namespace ridgeless {

inline constexpr double pi = 3.14159265358979323846;

/// Gamma at integer or half-integer argument via the recurrence from
/// Gamma(1/2) = sqrt(pi) and Gamma(1) = 1. `twice_x` is 2x, so
/// gamma_half(3) = Gamma(3/2).
inline double gamma_half(int twice_x) {
    if (twice_x <= 0) throw std::invalid_argument("gamma_half: argument must be positive");
    double g = (twice_x % 2 == 0) ? 1.0 : std::sqrt(pi); // Gamma(1) or Gamma(1/2)
    for (int t = (twice_x % 2 == 0) ? 2 : 1; t < twice_x; t += 2)
        g *= 0.5 * t; // Gamma(x+1) = x Gamma(x)
    return g;
}

/// Volume of the unit ball in R^d.
inline double unit_ball_volume(int d) {
    if (d < 1) throw invalid_dimension_error(d);
    return std::pow(pi, 0.5 * d) / gamma_half(d + 2);
}

/// Surface area of the unit sphere S^{d-1} in R^d.
inline double unit_sphere_area(int d) {
    if (d < 1) throw invalid_dimension_error(d);
    return 2.0 * std::pow(pi, 0.5 * d) / gamma_half(d);
}

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double v = 1.0;
    for (int t = 1; t <= k; ++t) v = v * (n - k + t) / t;
    return v;
}

inline void require_odd_dimension(int d) {
    if (d < 1 || d % 2 == 0) throw invalid_dimension_error(d);
}

/// Least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_slope: need >= 2 paired samples");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i]; sy += y[i];
        sxx += x[i] * x[i]; sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("fit_slope: degenerate abscissae");
    return (n * sxy - sx * sy) / denom;
}

/// Spearman rank correlation (average ranks for ties).
inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    if (y.size() != n || n < 2) throw std::invalid_argument("spearman: need >= 2 pairs");
    auto ranks = [](const std::vector<double>& v) {
        const std::size_t m = v.size();
        std::vector<std::size_t> idx(m);
        for (std::size_t i = 0; i < m; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
        std::vector<double> r(m);
        std::size_t i = 0;
        while (i < m) {
            std::size_t j = i;
            while (j + 1 < m && v[idx[j + 1]] == v[idx[i]]) ++j;
            const double avg = 0.5 * (i + j) + 1.0;
            for (std::size_t t = i; t <= j; ++t) r[idx[t]] = avg;
            i = j + 1;
        }
        return r;
    };
    const auto rx = ranks(x), ry = ranks(y);
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) { mx += rx[i]; my += ry[i]; }
    mx /= n; my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

/// FNV-1a over bytes, for content hashes in record provenance.
inline std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h = 14695981039346656037ull) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace ridgeless
