#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "ridgeless/errors.hpp"
#include "ridgeless/math.hpp"

namespace ridgeless {

enum class KernelScale {
    paper, // prefactor c^d
    unit   // prefactor 1
};

/// Laplace kernel K_c(x, y) = c^d e^{-c |x - y|} in odd dimension d.
struct KernelConfig {
    int d = 1;
    double c = 1.0;
    KernelScale scale = KernelScale::paper;

    KernelConfig(int dim, double bandwidth, KernelScale sc = KernelScale::paper)
        : d(dim), c(bandwidth), scale(sc) {
        require_odd_dimension(dim);
        if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
            throw std::invalid_argument("KernelConfig: bandwidth must be positive and finite");
    }

    double prefactor() const { return scale == KernelScale::paper ? std::pow(c, d) : 1.0; }
};

inline double eval_kernel(const KernelConfig& cfg, const Eigen::Ref<const Eigen::RowVectorXd>& x,
                          const Eigen::Ref<const Eigen::RowVectorXd>& y) {
    if (x.size() != cfg.d || y.size() != cfg.d)
        throw std::invalid_argument("eval_kernel: point dimension mismatch");
    if (!x.allFinite() || !y.allFinite())
        throw std::invalid_argument("eval_kernel: non-finite input point");
    return cfg.prefactor() * std::exp(-cfg.c * (x - y).norm());
}

/// Kernel matrix G_ij = K(x_i, x_j); symmetric, diagonal = prefactor.
inline Eigen::MatrixXd gram(const KernelConfig& cfg, const Eigen::MatrixXd& points) {
    if (points.cols() != cfg.d) throw std::invalid_argument("gram: point dimension mismatch");
    const Eigen::Index n = points.rows();
    const double pref = cfg.prefactor();
    Eigen::MatrixXd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        g(i, i) = pref;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double v = pref * std::exp(-cfg.c * (points.row(i) - points.row(j)).norm());
            g(i, j) = v;
            g(j, i) = v;
        }
    }
    return g;
}

/// Constant 2^d pi^{(d-1)/2} Gamma((d+1)/2): the kernel's Fourier
/// eigenvalue at p = 0 (paper scale), and the factor that turns the
/// paper-scale quadratic form into the convention norm.
inline double lambda_zero(int d) {
    require_odd_dimension(d);
    return std::pow(2.0, d) * std::pow(pi, 0.5 * (d - 1)) * gamma_half(d + 1);
}

/// Fourier eigenvalue lambda(p) of the convolution operator:
/// lambda_zero(d) / (1 + |p|^2/c^2)^{(d+1)/2}, divided by c^d in unit scale.
inline double lambda_eig(const KernelConfig& cfg, double p_norm) {
    if (!(p_norm >= 0.0)) throw std::invalid_argument("lambda_eig: |p| must be >= 0");
    const double shape = std::pow(1.0 + p_norm * p_norm / (cfg.c * cfg.c), -0.5 * (cfg.d + 1));
    const double v = lambda_zero(cfg.d) * shape;
    return cfg.scale == KernelScale::paper ? v : v * std::pow(cfg.c, -cfg.d);
}

/// Weights of the convention norm: <f> = sum_i w_i <f>_i with
/// w_i = binom((d+1)/2, i) c^{-2i}, i = 0..(d+1)/2.
struct SobolevWeights {
    std::vector<double> weights;
    double lambda0 = 0.0;
};

inline SobolevWeights sobolev_weights(const KernelConfig& cfg) {
    const int m = (cfg.d + 1) / 2;
    SobolevWeights w;
    w.lambda0 = lambda_zero(cfg.d);
    w.weights.resize(static_cast<std::size_t>(m) + 1);
    for (int i = 0; i <= m; ++i)
        w.weights[static_cast<std::size_t>(i)] = binomial(m, i) * std::pow(cfg.c, -2 * i);
    return w;
}

} // namespace ridgeless
