#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "ridgeless/geometry.hpp"
#include "ridgeless/kernel.hpp"
#include "ridgeless/quadrature.hpp"

using namespace ridgeless;
using Catch::Approx;

namespace {

// defining Fourier integral of the paper-scale kernel in d=1:
// lambda(p) = int c e^{-c|x|} e^{-ipx} dx = 2c int_0^inf e^{-cx} cos(px) dx
double lambda_quadrature_1d(double c, double p) {
    const double cut = 60.0 / c;
    return 2.0 * c *
           adaptive_simpson([c, p](double x) { return std::exp(-c * x) * std::cos(p * x); }, 0.0,
                            cut, 1e-12);
}

} // namespace

TEST_CASE("kernel evaluation") {
    Eigen::RowVectorXd x(1), y(1);
    x << 0.25;
    y = x;
    CHECK(eval_kernel(KernelConfig(1, 3.0), x, y) == 3.0); // c^d at coincidence

    y << 1.25;
    CHECK(eval_kernel(KernelConfig(1, 1.0, KernelScale::unit), x, y) ==
          Approx(0.367879441).epsilon(1e-8));

    Eigen::RowVectorXd a(3), b(3);
    a << 0, 0, 0;
    b << 0.5, 0, 0;
    CHECK(eval_kernel(KernelConfig(3, 2.0), a, b) == Approx(8.0 * std::exp(-1.0)).epsilon(1e-12));
    CHECK(eval_kernel(KernelConfig(3, 2.0), a, b) == eval_kernel(KernelConfig(3, 2.0), b, a));

    b(1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(eval_kernel(KernelConfig(3, 2.0), a, b), std::invalid_argument);
    CHECK_THROWS_AS(KernelConfig(2, 1.0), invalid_dimension_error);
    CHECK_THROWS_AS(KernelConfig(3, 0.0), std::invalid_argument);
}

TEST_CASE("scale relation holds exactly in log space") {
    Eigen::RowVectorXd x(7), y(7);
    x.setZero();
    y.setConstant(0.1);
    const double c = 1000.0;
    const double paper = eval_kernel(KernelConfig(7, c), x, y);
    const double unit = eval_kernel(KernelConfig(7, c, KernelScale::unit), x, y);
    CHECK(std::log(paper) - std::log(unit) == Approx(7.0 * std::log(c)).epsilon(1e-13));
}

TEST_CASE("gram matrices") {
    Eigen::MatrixXd one(1, 1);
    one << 0.3;
    CHECK(gram(KernelConfig(1, 2.0), one)(0, 0) == 2.0);

    Eigen::MatrixXd two(2, 1);
    two << 0.0, 1.0;
    const Eigen::MatrixXd g = gram(KernelConfig(1, 1.0, KernelScale::unit), two);
    CHECK(g(0, 0) == 1.0);
    CHECK(g(1, 1) == 1.0);
    CHECK(g(0, 1) == Approx(std::exp(-1.0)));
    CHECK(g(0, 1) == g(1, 0));
}

TEST_CASE("laplace gram is strictly positive definite (dense eigen oracle)") {
    const SampleSet s = sample_uniform_ball(50, 3, 9);
    const Eigen::MatrixXd g = gram(KernelConfig(3, 5.0, KernelScale::unit), s.points);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g);
    CHECK(eig.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("lambda closed form at p = 0") {
    CHECK(lambda_eig(KernelConfig(1, 0.7), 0.0) == Approx(2.0));
    CHECK(lambda_eig(KernelConfig(3, 13.0), 0.0) == Approx(8.0 * pi));
    CHECK(lambda_zero(5) == Approx(32.0 * pi * pi * gamma_half(6)));
}

TEST_CASE("lambda matches the defining Fourier integral (d=1)") {
    for (double c : {0.5, 1.0, 4.0}) {
        for (double p : {0.0, 0.5, 1.0, 2.0, 10.0}) {
            const double closed = lambda_eig(KernelConfig(1, c), p);
            const double quad = lambda_quadrature_1d(c, p);
            CHECK(closed == Approx(quad).epsilon(1e-6));
        }
    }
    // the c=1, p=1 value is 2/(1+1) = 1
    CHECK(lambda_eig(KernelConfig(1, 1.0), 1.0) == Approx(1.0));
}

TEST_CASE("lambda is strictly decreasing and vanishes at infinity") {
    const KernelConfig cfg(3, 2.0);
    double prev = lambda_eig(cfg, 0.0);
    for (double p : {0.5, 1.0, 2.0, 8.0, 64.0, 1e4}) {
        const double v = lambda_eig(cfg, p);
        CHECK(v < prev);
        prev = v;
    }
    CHECK(prev < 1e-10);
    // unit scale divides by c^d
    CHECK(lambda_eig(KernelConfig(3, 2.0, KernelScale::unit), 1.5) ==
          Approx(lambda_eig(cfg, 1.5) / 8.0));
}

TEST_CASE("sobolev weights") {
    const SobolevWeights w1 = sobolev_weights(KernelConfig(1, 2.0));
    REQUIRE(w1.weights.size() == 2);
    CHECK(w1.weights[0] == 1.0);
    CHECK(w1.weights[1] == Approx(0.25));
    CHECK(w1.lambda0 == Approx(2.0));

    const SobolevWeights w3 = sobolev_weights(KernelConfig(3, 1.0));
    REQUIRE(w3.weights.size() == 3);
    CHECK(w3.weights[0] == 1.0);
    CHECK(w3.weights[1] == Approx(2.0));
    CHECK(w3.weights[2] == Approx(1.0));
    CHECK(w3.lambda0 == Approx(8.0 * pi));

    const SobolevWeights w5 = sobolev_weights(KernelConfig(5, 10.0));
    REQUIRE(w5.weights.size() == 4);
    CHECK(w5.weights[0] == 1.0);
    CHECK(w5.weights[1] == Approx(3e-2));
    CHECK(w5.weights[2] == Approx(3e-4));
    CHECK(w5.weights[3] == Approx(1e-6));
    CHECK(w5.lambda0 == Approx(64.0 * pi * pi));

    // w_i c^{2i} recover the binomial coefficients exactly
    for (std::size_t i = 0; i < w5.weights.size(); ++i)
        CHECK(w5.weights[i] * std::pow(10.0, 2.0 * static_cast<double>(i)) ==
              Approx(binomial(3, static_cast<int>(i))).epsilon(1e-12));
}
