#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ridgeless/geometry.hpp"
#include "ridgeless/interpolant.hpp"

using namespace ridgeless;
using Catch::Approx;

namespace {

SampleSet make_1d(std::initializer_list<double> xs, std::initializer_list<double> ys) {
    SampleSet s;
    s.points.resize(static_cast<Eigen::Index>(xs.size()), 1);
    s.targets.resize(static_cast<Eigen::Index>(ys.size()));
    Eigen::Index i = 0;
    for (double x : xs) s.points(i++, 0) = x;
    i = 0;
    for (double y : ys) s.targets(i++) = y;
    s.noise = Eigen::VectorXd::Ones(s.targets.size());
    return s;
}

SampleSet random_labeled(Eigen::Index n, int d, std::uint64_t seed) {
    return attach_labels(sample_uniform_ball(n, d, seed),
                         TargetFunction{TargetFunctionId::const_one}, seed ^ 0xabcdefull);
}

} // namespace

TEST_CASE("single-point fit") {
    const SampleSet s = make_1d({0.0}, {1.0});
    const Interpolant m = fit_min_norm(KernelConfig(1, 2.0), s);
    CHECK(m.coeffs(0) == Approx(1.0)); // unit-scale Gram is [1]
    Eigen::RowVectorXd x(1);
    x << 0.7;
    CHECK(predict(m, x) == Approx(std::exp(-2.0 * 0.7)));
}

TEST_CASE("two-point fit, hand solve") {
    const SampleSet s = make_1d({0.0, 1.0}, {1.0, 1.0});
    const Interpolant m = fit_min_norm(KernelConfig(1, 1.0, KernelScale::unit), s);
    const double expect = 1.0 / (1.0 + std::exp(-1.0));
    CHECK(m.coeffs(0) == Approx(expect).epsilon(1e-9));
    CHECK(m.coeffs(1) == Approx(expect).epsilon(1e-9));
    CHECK(expect == Approx(0.731058579).epsilon(1e-8));
    // y^T G^{-1} y on the same instance
    CHECK(rkhs_quadratic_form(m) == Approx(2.0 / (1.0 + std::exp(-1.0))).epsilon(1e-10));
    CHECK(rkhs_quadratic_form(m) == Approx(1.462117).epsilon(1e-6));
}

TEST_CASE("interpolation exactness on random instances") {
    for (int t = 0; t < 12; ++t) {
        const int d = (t % 2) ? 3 : 1;
        const SampleSet s = random_labeled(20 + 15 * t, d, 100 + static_cast<std::uint64_t>(t));
        const double c = 0.5 * std::pow(2.0, t % 6);
        const Interpolant m = fit_min_norm(KernelConfig(d, c), s);
        const Eigen::VectorXd at_support = predict(m, s.points);
        CHECK((at_support - s.targets).cwiseAbs().maxCoeff() <= 1e-6);
        CHECK(m.diagnostics.residual_max <= 1e-6 * s.targets.cwiseAbs().maxCoeff());
    }
}

TEST_CASE("ridge reduces to min-norm at lam = 0 and shrinks as lam grows") {
    const SampleSet s = random_labeled(40, 1, 7);
    const KernelConfig cfg(1, 2.0);
    const Interpolant base = fit_min_norm(cfg, s);
    const Interpolant zero = fit_ridge(cfg, s, 0.0);
    CHECK((base.coeffs - zero.coeffs).cwiseAbs().maxCoeff() <= 1e-10);

    const Interpolant tiny = fit_ridge(cfg, s, 1e-10);
    CHECK((base.coeffs - tiny.coeffs).cwiseAbs().maxCoeff() <= 1e-4);

    const Interpolant big = fit_ridge(cfg, s, 1e6);
    CHECK(big.coeffs.norm() <= 1e-4);
    Eigen::RowVectorXd x(1);
    x << 0.2;
    CHECK(std::abs(predict(big, x)) <= 1e-4);
}

TEST_CASE("two-point ridge, hand solve") {
    const SampleSet s = make_1d({0.0, 1.0}, {1.0, 1.0});
    // n lam = 1: (G + I) alpha = y
    const Interpolant m = fit_ridge(KernelConfig(1, 1.0, KernelScale::unit), s, 0.5);
    const double expect = 1.0 / (2.0 + std::exp(-1.0));
    CHECK(m.coeffs(0) == Approx(expect).epsilon(1e-9));
    CHECK(m.coeffs(1) == Approx(expect).epsilon(1e-9));
    CHECK(expect == Approx(0.422).margin(5e-4));
}

TEST_CASE("predict: support reproduction, decay, scale invariance") {
    const SampleSet s = random_labeled(30, 3, 77);
    const Interpolant paper = fit_min_norm(KernelConfig(3, 4.0, KernelScale::paper), s);
    const Interpolant unit = fit_min_norm(KernelConfig(3, 4.0, KernelScale::unit), s);

    Eigen::RowVectorXd far(3);
    far << 30.0, 0.0, 0.0; // |x - X_i| >= 40/c = 10 for all support points
    CHECK(std::abs(predict(paper, far)) <= std::exp(-40.0) * paper.coeffs.cwiseAbs().sum() + 1e-300);

    const SampleSet probe = sample_uniform_ball(100, 3, 5);
    const Eigen::VectorXd a = predict(paper, probe.points);
    const Eigen::VectorXd b = predict(unit, probe.points);
    CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-12);

    Eigen::RowVectorXd bad(2);
    bad << 0.0, 0.0;
    CHECK_THROWS_AS(predict(paper, bad), std::invalid_argument);
}

TEST_CASE("quadratic form and scale transforms") {
    const SampleSet s = make_1d({0.0}, {1.0});
    const Interpolant unit = fit_min_norm(KernelConfig(1, 2.0, KernelScale::unit), s);
    const Interpolant paper = fit_min_norm(KernelConfig(1, 2.0, KernelScale::paper), s);
    CHECK(rkhs_quadratic_form(unit) == Approx(1.0));
    CHECK(rkhs_quadratic_form(paper) == Approx(0.5)); // c^{-d} = 1/2

    // the identity-based form agrees with an explicit alpha^T G alpha
    const SampleSet r = random_labeled(60, 1, 3);
    const KernelConfig cfg(1, 3.0, KernelScale::unit);
    const Interpolant m = fit_min_norm(cfg, r);
    const Eigen::MatrixXd g = gram(cfg, r.points);
    CHECK(rkhs_quadratic_form(m) ==
          Approx(m.coeffs.dot(g * m.coeffs)).epsilon(1e-9));
}

TEST_CASE("ridge can only decrease the quadratic form") {
    for (int t = 0; t < 50; ++t) {
        const int d = (t % 2) ? 3 : 1;
        const SampleSet s = random_labeled(10 + t, d, 900 + static_cast<std::uint64_t>(t));
        const KernelConfig cfg(d, 0.5 + 0.7 * (t % 9), KernelScale::unit);
        const Interpolant base = fit_min_norm(cfg, s);
        const Interpolant shrunk = fit_ridge(cfg, s, 0.01 * (1 + t % 4));
        // dense oracle for both forms
        const Eigen::MatrixXd g = gram(cfg, s.points);
        const double q0 = base.coeffs.dot(g * base.coeffs);
        const double q1 = shrunk.coeffs.dot(g * shrunk.coeffs);
        CHECK(q1 <= q0 * (1.0 + 1e-9));
        CHECK(rkhs_quadratic_form(shrunk) == Approx(q1).epsilon(1e-8));
    }
}

TEST_CASE("convention norm closed values") {
    const SampleSet s = make_1d({0.0}, {1.0});
    CHECK(convention_norm(fit_min_norm(KernelConfig(1, 1.0), s)) == Approx(2.0));

    SampleSet s3;
    s3.points = Eigen::MatrixXd::Zero(1, 3);
    s3.targets = Eigen::VectorXd::Ones(1);
    CHECK(convention_norm(fit_min_norm(KernelConfig(3, 1.0), s3)) == Approx(8.0 * pi));
    // scale convention does not change the convention norm
    CHECK(convention_norm(fit_min_norm(KernelConfig(3, 1.0, KernelScale::unit), s3)) ==
          Approx(8.0 * pi));
}

TEST_CASE("min-norm optimality against extended-support interpolants") {
    for (int t = 0; t < 20; ++t) {
        const int d = (t % 2) ? 3 : 1;
        const SampleSet s = random_labeled(15 + t, d, 4000 + static_cast<std::uint64_t>(t));
        const KernelConfig cfg(d, 1.0 + (t % 5), KernelScale::unit);
        const Interpolant base = fit_min_norm(cfg, s);

        // interpolate the same data plus perturbed values at extra points:
        // still an interpolant of the original data, so its norm cannot be smaller
        const SampleSet extra = sample_uniform_ball(10, d, 5000 + static_cast<std::uint64_t>(t));
        SampleSet extended;
        extended.points.resize(s.n() + extra.n(), d);
        extended.points << s.points, extra.points;
        extended.targets.resize(s.n() + extra.n());
        const Eigen::VectorXd at_extra = predict(base, extra.points);
        extended.targets.head(s.n()) = s.targets;
        for (Eigen::Index i = 0; i < extra.n(); ++i)
            extended.targets(s.n() + i) = at_extra(i) + 0.1 * ((i % 2) ? 1.0 : -1.0);
        const Interpolant wider = fit_min_norm(cfg, extended);
        CHECK(unit_quadratic_form(wider) >= unit_quadratic_form(base) * (1.0 - 1e-9));
    }
}

TEST_CASE("fit error paths") {
    SampleSet empty;
    empty.points.resize(0, 1);
    empty.targets.resize(0);
    CHECK_THROWS_AS(fit_min_norm(KernelConfig(1, 1.0), empty), std::invalid_argument);
    const SampleSet s = make_1d({0.0, 0.5}, {1.0, -1.0});
    CHECK_THROWS_AS(fit_ridge(KernelConfig(1, 1.0), s, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(fit_min_norm(KernelConfig(3, 1.0), s), std::invalid_argument);
}
