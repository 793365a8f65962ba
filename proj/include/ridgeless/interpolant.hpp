#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "ridgeless/errors.hpp"
#include "ridgeless/geometry.hpp"
#include "ridgeless/kernel.hpp"

namespace ridgeless {

struct SolveDiagnostics {
    double jitter_used = 0.0;
    double condition_estimate = 1.0;
    double residual_max = 0.0;
};

/// Fitted kernel regressor f(x) = sum_i alpha_i e^{-c |x - X_i|}.
/// Coefficients are stored in unit scale; predictions are invariant
/// under the kernel scale convention.
struct Interpolant {
    Eigen::MatrixXd support;
    Eigen::VectorXd coeffs;
    Eigen::VectorXd targets;
    KernelConfig cfg;
    double ridge = 0.0;
    SolveDiagnostics diagnostics;
};

namespace detail {

inline Interpolant fit_impl(const KernelConfig& cfg, const SampleSet& sample, double lam) {
    const Eigen::Index n = sample.n();
    if (n < 1) throw std::invalid_argument("fit: need at least one sample point");
    if (sample.d() != cfg.d) throw std::invalid_argument("fit: sample/kernel dimension mismatch");
    if (sample.targets.size() != n) throw std::invalid_argument("fit: sample has no labels");
    if (lam < 0.0) throw std::invalid_argument("fit: ridge must be >= 0");

    KernelConfig unit_cfg(cfg.d, cfg.c, KernelScale::unit);
    Eigen::MatrixXd g = gram(unit_cfg, sample.points);
    const double base = g.trace() / static_cast<double>(n); // = 1 in unit scale
    const double shift = lam * static_cast<double>(n);

    Interpolant model{sample.points, Eigen::VectorXd(), sample.targets, cfg, lam, {}};
    double jitter = 0.0;
    double cond = std::numeric_limits<double>::infinity();
    for (int step = 0; step <= 7; ++step) {
        Eigen::MatrixXd sys = g;
        sys.diagonal().array() += shift + jitter;
        Eigen::LLT<Eigen::MatrixXd> llt(sys);
        if (llt.info() == Eigen::Success) {
            const auto diag = llt.matrixLLT().diagonal();
            const double ratio = diag.maxCoeff() / diag.minCoeff();
            cond = ratio * ratio;
            Eigen::VectorXd alpha = llt.solve(sample.targets);
            // one step of iterative refinement tightens interpolation residuals
            Eigen::VectorXd r = sample.targets - sys * alpha;
            alpha += llt.solve(r);
            model.coeffs = std::move(alpha);
            model.diagnostics.jitter_used = jitter;
            model.diagnostics.condition_estimate = cond;
            model.diagnostics.residual_max =
                (g * model.coeffs - sample.targets).cwiseAbs().maxCoeff();
            return model;
        }
        jitter = (jitter == 0.0) ? 1e-12 * base : 10.0 * jitter;
        if (jitter > 1e-6 * base * (1.0 + 1e-9)) break;
    }
    throw ill_conditioned_error(cond);
}

} // namespace detail

/// Minimum-RKHS-norm interpolant: solve G alpha = y on the unit-scale Gram.
inline Interpolant fit_min_norm(const KernelConfig& cfg, const SampleSet& sample) {
    return detail::fit_impl(cfg, sample, 0.0);
}

/// Ridge regressor: solve (G + n lam I) alpha = y, the dual form of the
/// squared-loss objective with penalty lam |f|^2_H. lam = 0 recovers
/// fit_min_norm.
inline Interpolant fit_ridge(const KernelConfig& cfg, const SampleSet& sample, double lam) {
    return detail::fit_impl(cfg, sample, lam);
}

namespace detail {

inline double predict_point(const Interpolant& model, const Eigen::Ref<const Eigen::RowVectorXd>& x) {
    if (x.size() != model.cfg.d) throw std::invalid_argument("predict: dimension mismatch");
    double s = 0.0;
    for (Eigen::Index i = 0; i < model.support.rows(); ++i)
        s += model.coeffs(i) * std::exp(-model.cfg.c * (x - model.support.row(i)).norm());
    return s;
}

inline Eigen::VectorXd predict_matrix(const Interpolant& model, const Eigen::MatrixXd& queries) {
    if (queries.cols() != model.cfg.d) throw std::invalid_argument("predict: dimension mismatch");
    const Eigen::Index m = queries.rows(), n = model.support.rows();
    Eigen::VectorXd out(m);
    constexpr Eigen::Index block = 512;
    Eigen::MatrixXd dist;
    for (Eigen::Index s = 0; s < m; s += block) {
        const Eigen::Index len = std::min(block, m - s);
        dist.resize(len, n);
        for (Eigen::Index i = 0; i < len; ++i)
            dist.row(i) = (model.support.rowwise() - queries.row(s + i)).rowwise().norm().transpose();
        out.segment(s, len) = (-model.cfg.c * dist).array().exp().matrix() * model.coeffs;
    }
    return out;
}

} // namespace detail

/// Evaluate the fit: a single point (any row-vector expression) gives a
/// double, a matrix of query rows gives the batch vector.
template <typename Derived>
inline auto predict(const Interpolant& model, const Eigen::MatrixBase<Derived>& queries) {
    if constexpr (Derived::RowsAtCompileTime == 1) {
        return detail::predict_point(model, Eigen::RowVectorXd(queries.derived()));
    } else {
        return detail::predict_matrix(model, Eigen::MatrixXd(queries.derived()));
    }
}

/// Unit-scale alpha^T G alpha via the solved-system identity
/// alpha^T G alpha = alpha^T y - (n lam + jitter)|alpha|^2 (no Gram rebuild).
inline double unit_quadratic_form(const Interpolant& model) {
    const double shift = model.ridge * static_cast<double>(model.support.rows()) +
                         model.diagnostics.jitter_used;
    return model.coeffs.dot(model.targets) - shift * model.coeffs.squaredNorm();
}

/// alpha^T G alpha in the model's scale convention (paper scale is the
/// unit value divided by c^d: coefficients scale by c^{-d}, the kernel
/// by c^{d}).
inline double rkhs_quadratic_form(const Interpolant& model) {
    const double q = unit_quadratic_form(model);
    return model.cfg.scale == KernelScale::paper ? q * std::pow(model.cfg.c, -model.cfg.d) : q;
}

/// The paper-convention squared norm of the fitted function:
/// lambda_zero(d) times the paper-scale quadratic form. This is the
/// number comparable with Fourier- and bump-side computations.
inline double convention_norm(const Interpolant& model) {
    return lambda_zero(model.cfg.d) * unit_quadratic_form(model) *
           std::pow(model.cfg.c, -model.cfg.d);
}

} // namespace ridgeless
