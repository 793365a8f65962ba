#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ridgeless/bump.hpp"
#include "ridgeless/grid_fourier.hpp"
#include "ridgeless/risk.hpp"

using namespace ridgeless;
using Catch::Approx;

namespace {

SampleSet labeled_1d(Eigen::Index n, std::uint64_t seed) {
    return attach_labels(sample_uniform_ball(n, 1, seed),
                         TargetFunction{TargetFunctionId::const_one}, seed ^ 0x55aaull);
}

} // namespace

TEST_CASE("zero grid function has zero norm") {
    GridFunction1D f;
    f.L = 10.0;
    f.m = 1u << 12;
    f.values.assign(f.m, 0.0);
    CHECK(fourier_convention_norm_1d(f, 1.0) == 0.0);
}

TEST_CASE("rendering matches direct prediction") {
    const SampleSet s = labeled_1d(12, 3);
    const Interpolant m = fit_min_norm(KernelConfig(1, 2.0), s);
    const GridFunction1D f = render_interpolant_1d(m, 13.0, 1u << 12);
    for (std::size_t j = 300; j < f.m; j += 509) {
        Eigen::RowVectorXd x(1);
        x << f.x(j);
        CHECK(f.values[j] == Approx(predict(m, x)).margin(1e-12));
    }
}

TEST_CASE("closed-form pair: the n=1 interpolant at c=1 has convention norm 2") {
    SampleSet s;
    s.points = Eigen::MatrixXd::Zero(1, 1);
    s.targets = Eigen::VectorXd::Ones(1);
    const Interpolant m = fit_min_norm(KernelConfig(1, 1.0), s);
    const GridFunction1D f = render_interpolant_1d(m, 25.0, 1u << 18);
    const double norm = fourier_convention_norm_1d(f, 1.0);
    CHECK(norm == Approx(2.0).epsilon(0.02));
    CHECK(convention_norm(m) == Approx(2.0).epsilon(1e-12));
}

TEST_CASE("verify_prop_a1 on random instances") {
    for (double c : {0.5, 2.0, 8.0}) {
        const SampleSet s = labeled_1d(10, 17);
        const PropA1Report rep = verify_prop_a1(s, c);
        INFO("c=" << c << " m=" << rep.m << " tail=" << rep.tail_fraction);
        CHECK(rep.ratio == Approx(1.0).margin(0.02));
        CHECK_FALSE(rep.exact_zero);
    }
}

TEST_CASE("verify_prop_a1 exact zero labels") {
    SampleSet s = labeled_1d(5, 23);
    s.targets.setZero();
    const PropA1Report rep = verify_prop_a1(s, 2.0);
    CHECK(rep.exact_zero);
    CHECK(rep.fourier_norm == 0.0);
}

TEST_CASE("grid refinement: |ratio - 1| non-increasing up to the noise floor") {
    const SampleSet s = labeled_1d(10, 29);
    const double c = 2.0;
    const Interpolant m = fit_min_norm(KernelConfig(1, c), s);
    const double closed = convention_norm(m);
    const double L = 1.0 + 24.0 / c;
    double prev_err = std::numeric_limits<double>::infinity();
    for (std::size_t mm : {1u << 16, 1u << 18, 1u << 20}) {
        const GridFunction1D f = render_interpolant_1d(m, L, mm);
        const double err = std::abs(fourier_convention_norm_1d(f, c) / closed - 1.0);
        CHECK(err <= prev_err + 1e-3); // correction noise floor
        prev_err = err;
    }
    CHECK(prev_err < 0.02);
}

TEST_CASE("plancherel pin: the unweighted term is the L2(R) norm") {
    const SampleSet s = labeled_1d(5, 41);
    const double c = 2.0;
    const Interpolant m = fit_min_norm(KernelConfig(1, c), s);
    const double L = 1.0 + 24.0 / c;
    const GridFunction1D f = render_interpolant_1d(m, L, 1u << 18);
    const FourierNormDetails det = fourier_convention_norm_1d_details(f, c);

    // uniform MC over [-L, L]
    Rng rng(99);
    double mean = 0.0;
    const int mc = 400000;
    for (int i = 0; i < mc; ++i) {
        Eigen::RowVectorXd x(1);
        x << rng.uniform(-L, L);
        const double v = predict(m, x);
        mean += v * v;
    }
    mean = mean / mc * (2.0 * L);
    CHECK(det.l2_part == Approx(mean).epsilon(0.01));
}

TEST_CASE("witness norm cross-check: grid transform vs closed form") {
    const SampleSet s = labeled_1d(12, 51);
    const Eigen::VectorXd radii = separation_radii(s.points, true);
    const WitnessInterpolant w = build_witness(s, radii, 0.4);
    const double c = 2.0;
    const double closed = witness_convention_norm(w, KernelConfig(1, c));

    GridFunction1D f;
    f.L = 2.0; // witness is supported inside the unit ball
    f.m = 1u << 20;
    f.values.resize(f.m);
    for (std::size_t j = 0; j < f.m; ++j) {
        Eigen::RowVectorXd x(1);
        x << f.x(j);
        f.values[j] = witness_eval(w, x);
    }
    const double grid_norm = fourier_convention_norm_1d(f, c);
    CHECK(grid_norm == Approx(closed).epsilon(1e-3));
}

TEST_CASE("edge violation raises a truncation error") {
    SampleSet s;
    s.points = Eigen::MatrixXd::Zero(1, 1);
    s.targets = Eigen::VectorXd::Ones(1);
    const Interpolant m = fit_min_norm(KernelConfig(1, 0.5), s);
    const GridFunction1D f = render_interpolant_1d(m, 3.0, 1u << 12); // e^{-1.5} edges
    CHECK_THROWS_AS(fourier_convention_norm_1d(f, 0.5), grid_truncation_error);
}
