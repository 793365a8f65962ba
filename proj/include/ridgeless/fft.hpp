#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "ridgeless/math.hpp"

namespace ridgeless {

/// In-place radix-2 complex FFT (forward: e^{-i 2 pi jk/m}).
/// Size must be a power of two. Single-threaded and deterministic.
inline void fft_radix2(std::vector<std::complex<double>>& a) {
    const std::size_t m = a.size();
    if (m == 0 || (m & (m - 1)) != 0)
        throw std::invalid_argument("fft_radix2: size must be a power of two");

    for (std::size_t i = 1, j = 0; i < m; ++i) {
        std::size_t bit = m >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    // per-stage twiddle table, recomputed from polar to bound drift
    std::vector<std::complex<double>> tw;
    for (std::size_t len = 2; len <= m; len <<= 1) {
        const std::size_t half = len >> 1;
        tw.resize(half);
        for (std::size_t k = 0; k < half; ++k)
            tw[k] = std::polar(1.0, -2.0 * pi * static_cast<double>(k) / static_cast<double>(len));
        for (std::size_t i = 0; i < m; i += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + half] * tw[k];
                a[i + k] = u + v;
                a[i + k + half] = u - v;
            }
        }
    }
}

} // namespace ridgeless
