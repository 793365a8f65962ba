#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ridgeless/bump.hpp"
#include "ridgeless/geometry.hpp"
#include "ridgeless/interpolant.hpp"
#include "ridgeless/risk.hpp"

using namespace ridgeless;
using Catch::Approx;

TEST_CASE("eta pointwise values") {
    CHECK(eta_radial(0.0) == 1.0);
    CHECK(eta_radial(0.25) == 1.0);
    CHECK(eta_radial(0.5) == 0.0);
    CHECK(eta_radial(0.75) == 0.0);
    CHECK(eta_radial(0.375) == Approx(std::exp(-1.0)).epsilon(1e-9)); // e^{1 - 1/(2 - 1.5)}
    for (double r : {0.26, 0.3, 0.4, 0.49}) {
        CHECK(eta_radial(r) > 0.0);
        CHECK(eta_radial(r) < 1.0);
    }
    Eigen::RowVectorXd x(3);
    x << 0.375, 0.0, 0.0;
    CHECK(eta(x) == Approx(std::exp(-1.0)));
}

TEST_CASE("eta L2 norm: two independent quadrature rules agree") {
    const BumpProfile& p1 = eta_moments(1);
    CHECK(p1.l2_norm_sq > 0.5); // the plateau alone contributes 2 * 1/4
    CHECK(p1.l2_norm_sq < 1.0);
    const double fixed = 2.0 * (0.25 + simpson_fixed(
                                           [](double r) {
                                               const double e = eta_radial(r);
                                               return e * e;
                                           },
                                           0.25, detail::eta_rmax, 40000));
    CHECK(p1.l2_norm_sq == Approx(fixed).epsilon(1e-8));
}

TEST_CASE("plancherel pins the fourier convention") {
    for (int d : {1, 3, 5}) {
        const BumpProfile& prof = eta_moments(d);
        CHECK(eta_fourier_moment(d, 0) == Approx(prof.l2_norm_sq).epsilon(1e-6));
    }
}

TEST_CASE("first moment equals the spatial gradient norm") {
    for (int d : {1, 3}) {
        const BumpProfile& prof = eta_moments(d);
        REQUIRE_FALSE(prof.moment(1).divergent);
        CHECK(prof.moment(1).value == Approx(eta_grad_norm_sq_spatial(d)).epsilon(1e-6));
    }
    // frozen oracle: for d=1 the substitution t = 2/(2-4r) reduces
    // int eta'(r)^2 dr over R to e^2 Gamma(3,2) = 10 exactly
    CHECK(eta_moments(1).moment(1).value == Approx(10.0).epsilon(1e-7));
}

TEST_CASE("higher moments diverge: corner of eta at r = 1/4") {
    const BumpProfile& p3 = eta_moments(3);
    REQUIRE(p3.sobolev_moments.size() == 2);
    CHECK_FALSE(p3.moment(1).divergent);
    CHECK(p3.moment(2).divergent);
    CHECK(std::isinf(p3.moment(2).value));

    const BumpProfile& p5 = eta_moments(5);
    REQUIRE(p5.sobolev_moments.size() == 3);
    CHECK(p5.moment(2).divergent);
    CHECK(p5.moment(3).divergent);

    // empirical backing: the windowed k=2 integrand average does not decay
    const detail::EtaTransform w(3);
    auto window_avg = [&](double lo) {
        const double norm_const = unit_sphere_area(3) / std::pow(2.0 * pi, 3);
        double acc = 0.0;
        const int steps = 400;
        for (int i = 0; i < steps; ++i) {
            const double p = lo + (8.0 * pi) * i / steps;
            const double v = w(p);
            acc += norm_const * v * v * std::pow(p, 2 * 2 + 3 - 1);
        }
        return acc / steps;
    };
    const double near = window_avg(200.0);
    const double far = window_avg(1600.0);
    CHECK(far > 0.5 * near); // no decay; a convergent integrand would drop ~64x
    CHECK(far == Approx(4.0).margin(1.0)); // the analytic plateau 8 * mean(sin^2)
}

TEST_CASE("witness construction and pointwise behavior") {
    SampleSet s;
    s.points.resize(2, 1);
    s.points << -0.5, 0.5;
    s.targets.resize(2);
    s.targets << 2.0, 0.0;
    s.noise = Eigen::VectorXd::Ones(2);
    Eigen::VectorXd r(2);
    r << 0.5, 0.5;

    const WitnessInterpolant w = build_witness(s, r, 0.4);
    Eigen::RowVectorXd x(1);
    x << -0.5;
    CHECK(witness_eval(w, x) == 2.0);
    x << 0.5;
    CHECK(witness_eval(w, x) == 0.0);
    x << 0.0;
    CHECK(witness_eval(w, x) == 0.0); // supports have radius 0.1
    x << -0.45;
    CHECK(witness_eval(w, x) > 0.0);

    CHECK_THROWS_AS(build_witness(s, r, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(build_witness(s, r, 0.0), std::invalid_argument);
}

TEST_CASE("witness interpolates exactly and supports are disjoint") {
    for (int d : {1, 3}) {
        const SampleSet s = attach_labels(sample_uniform_ball(40, d, 11),
                                          TargetFunction{TargetFunctionId::const_one}, 13);
        const Eigen::VectorXd radii = separation_radii(s.points, true);
        for (double alpha : {0.1, 0.25, 0.4, 0.49}) {
            const WitnessInterpolant w = build_witness(s, radii, alpha);
            for (Eigen::Index i = 0; i < s.n(); ++i)
                CHECK(witness_eval(w, s.points.row(i)) == Approx(s.targets(i)).margin(1e-15));
            // pairwise ball intersection test
            for (Eigen::Index i = 0; i < s.n(); ++i)
                for (Eigen::Index j = i + 1; j < s.n(); ++j) {
                    const double gap = (s.points.row(i) - s.points.row(j)).norm();
                    CHECK(0.5 * alpha * (radii(i) + radii(j)) < gap);
                }
        }
    }
}

TEST_CASE("witness L2 closed form") {
    SampleSet s;
    s.points = Eigen::MatrixXd::Zero(1, 1);
    s.targets = Eigen::VectorXd::Ones(1);
    Eigen::VectorXd r = Eigen::VectorXd::Ones(1);
    const WitnessInterpolant w = build_witness(s, r, 0.4);
    CHECK(witness_l2_norm_sq(w) == Approx(0.4 * eta_moments(1).l2_norm_sq).epsilon(1e-12));

    s.targets(0) = 0.0;
    CHECK(witness_l2_norm_sq(build_witness(s, r, 0.4)) == 0.0);
}

TEST_CASE("witness L2 closed form matches Monte Carlo") {
    const SampleSet s = attach_labels(sample_uniform_ball(25, 1, 21),
                                      TargetFunction{TargetFunctionId::const_one}, 22);
    const Eigen::VectorXd radii = separation_radii(s.points, true);
    const WitnessInterpolant w = build_witness(s, radii, 0.4);
    // supports lie inside Omega (boundary-inclusive radii), so the
    // R^d norm equals the Omega norm and uniform-ball MC applies
    const RiskEstimate mc = mc_l2_norm_sq(
        [&w](const Eigen::RowVectorXd& x) { return witness_eval(w, x); }, Domain(1), 400000, 5);
    CHECK(std::abs(mc.mean - witness_l2_norm_sq(w)) <= 3.0 * mc.std_error);
}

TEST_CASE("witness convention norm, single point closed form (d=1)") {
    SampleSet s;
    s.points = Eigen::MatrixXd::Zero(1, 1);
    s.targets = Eigen::VectorXd::Ones(1);
    Eigen::VectorXd r = Eigen::VectorXd::Ones(1);
    const WitnessInterpolant w = build_witness(s, r, 0.4);
    const BumpProfile& prof = eta_moments(1);
    const double expect = 0.4 * prof.l2_norm_sq + (1.0 / 0.4) * prof.moment(1).value;
    CHECK(witness_convention_norm(w, KernelConfig(1, 1.0)) == Approx(expect).epsilon(1e-12));

    // c -> infinity: the derivative term vanishes
    CHECK(witness_convention_norm (w, KernelConfig(1, 1e8)) ==
          Approx(witness_l2_norm_sq(w)).epsilon(1e-12));
}

TEST_CASE("witness convention norm diverges for d = 3 unless g = 0") {
    SampleSet s;
    s.points = Eigen::MatrixXd::Zero(1, 3);
    s.targets = Eigen::VectorXd::Ones(1);
    Eigen::VectorXd r = Eigen::VectorXd::Ones(1);
    const WitnessNormParts parts =
        witness_convention_norm_parts(build_witness(s, r, 0.25), KernelConfig(3, 2.0));
    CHECK(parts.divergent);
    CHECK(std::isinf(parts.total));
    CHECK(std::isfinite(parts.finite_part));
    CHECK(parts.finite_part > 0.0);

    s.targets(0) = 0.0;
    const WitnessNormParts zero =
        witness_convention_norm_parts(build_witness(s, r, 0.25), KernelConfig(3, 2.0));
    CHECK_FALSE(zero.divergent);
    CHECK(zero.total == 0.0);
}

TEST_CASE("witness norm scaling in the radii") {
    const SampleSet s = attach_labels(sample_uniform_ball(10, 1, 31),
                                      TargetFunction{TargetFunctionId::const_one}, 32);
    Eigen::VectorXd radii = separation_radii(s.points, true);
    const KernelConfig cfg(1, 2.0);
    const double l2_a = witness_l2_norm_sq(build_witness(s, radii, 0.3));
    const double tot_a = witness_convention_norm(build_witness(s, radii, 0.3), cfg);
    const double l2_b = witness_l2_norm_sq(build_witness(s, 2.0 * radii, 0.3));
    const double tot_b = witness_convention_norm(build_witness(s, 2.0 * radii, 0.3), cfg);
    CHECK(l2_b == Approx(2.0 * l2_a).epsilon(1e-12));                      // 2^d, d = 1
    const double k1_a = tot_a - l2_a, k1_b = tot_b - l2_b;
    CHECK(k1_b == Approx(0.5 * k1_a).epsilon(1e-12));                      // 2^{d-2k} = 1/2
}

TEST_CASE("min-norm fit never beats the witness (d=1, exact comparison)") {
    for (int t = 0; t < 10; ++t) {
        const SampleSet s = attach_labels(sample_uniform_ball(8 + 4 * t, 1, 600 + static_cast<std::uint64_t>(t)),
                                          TargetFunction{TargetFunctionId::const_one},
                                          700 + static_cast<std::uint64_t>(t));
        const double c = 0.5 * std::pow(2.0, t % 7);
        const KernelConfig cfg(1, c);
        const Eigen::VectorXd radii = separation_radii(s.points, true);
        const double fit_norm = convention_norm(fit_min_norm(cfg, s));
        const double wit_norm = witness_convention_norm(build_witness(s, radii, 0.4), cfg);
        CHECK(fit_norm <= wit_norm * (1.0 + 1e-9));
    }
}
