#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "crossres/errors.hpp"
#include "crossres/quantization.hpp"
#include "crossres/spectral.hpp"
#include "common.hpp"

using namespace crossres;

namespace {
constexpr double kPi = 3.14159265358979323846;

EnergyRectangle rect_for(double h) {
    return EnergyRectangle{0.5, 2.0, 2.0 / testutil::kT0, h};
}

// both potentials and the coupling identically zero (diagnostic mode)
ProblemSetup free_setup() {
    ProblemSetup s = testutil::tanh1_uncoupled();
    s.V1.terms.clear();
    s.V2.terms.clear();
    return s;
}
} // namespace

TEST_CASE("distortion contour") {
    Distortion d = build_distortion(5.0, 0.3, 1.2);
    CHECK(std::abs(d.map(2.5) - cplx(2.5, 0.0)) == 0.0);           // identity inside R0
    CHECK(std::abs(d.map(-3.0) - cplx(-3.0, 0.0)) == 0.0);
    cplx rot = 15.0 * std::exp(cplx(0, 0.3));
    CHECK(std::abs(d.map(15.0) - rot) < 1e-14);                    // full rotation past 2R0
    CHECK(std::abs(d.map(-15.0) + rot) < 1e-14);
    CHECK(d.blend(7.5) == doctest::Approx(0.5).epsilon(1e-14));    // quintic midpoint

    // derivative consistency and invertibility
    for (double x : {-12.0, -7.3, 0.4, 6.1, 9.9, 14.0}) {
        cplx fd = (d.map(x + 1e-6) - d.map(x - 1e-6)) / 2e-6;
        CHECK(std::abs(fd - d.map_prime(x)) < 1e-7);
        cplx fd2 = (d.map_prime(x + 1e-6) - d.map_prime(x - 1e-6)) / 2e-6;
        CHECK(std::abs(fd2 - d.map_second(x)) < 1e-6);
        CHECK(d.map_prime(x).real() > 0.0);
    }

    CHECK_THROWS_AS(build_distortion(5.0, 1.3, 1.2), InvalidAngle);
    CHECK_THROWS_AS(build_distortion(5.0, 0.0, 1.2), InvalidAngle);
}

TEST_CASE("free diagnostic operator reproduces the Dirichlet spectrum") {
    ProblemSetup s = free_setup();
    Distortion d{s.R0, 0.0, s.theta0};
    double h = 0.2, L = 15.0;
    int N = 400;
    DiscretizedOperator op = assemble_ptheta(s, h, d, N, L);
    auto ev = eigenvalues_dense(op.matrix);
    std::vector<double> re;
    for (cplx e : ev) re.push_back(e.real());
    std::sort(re.begin(), re.end());
    // each block contributes the same spectrum: values come in pairs
    for (int k = 1; k <= 3; ++k) {
        double want = std::pow(kPi * k * h / (2.0 * L), 2);
        CHECK(re[2 * (k - 1)] == doctest::Approx(want).epsilon(1e-8));
        CHECK(re[2 * k - 1] == doctest::Approx(want).epsilon(1e-8));
    }
}

TEST_CASE("undistorted benchmark operator has a real spectrum") {
    const ProblemSetup& s = testutil::tanh1();
    Distortion d{s.R0, 0.0, s.theta0};
    DiscretizedOperator op = assemble_ptheta(s, 0.2, d, 400, 15.0);
    auto ev = eigenvalues_dense(op.matrix);
    double maxim = 0.0;
    for (cplx e : ev) maxim = std::max(maxim, std::abs(e.imag()));
    CHECK(maxim < 1e-8);
}

TEST_CASE("zero coupling gives an exactly block-diagonal matrix") {
    ProblemSetup s = testutil::tanh1_uncoupled();
    Distortion d = build_distortion(s.R0, 0.3, s.theta0);
    DiscretizedOperator op = assemble_ptheta(s, 0.2, d, 200, 15.0);
    int N = op.N;
    CHECK(op.matrix.topRightCorner(N, N).cwiseAbs().maxCoeff() == 0.0);
    CHECK(op.matrix.bottomLeftCorner(N, N).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("assembly preconditions") {
    const ProblemSetup& s = testutil::tanh1();
    Distortion d = build_distortion(s.R0, 0.3, s.theta0);
    CHECK_THROWS_AS(assemble_ptheta(s, 0.05, d, 100, 15.0), GridTooCoarse);
    CHECK_THROWS_AS(assemble_ptheta(s, 0.2, d, 400, 10.0), Error); // L < 3 R0
}

TEST_CASE("stable eigenvalues at h = 0.1 track the pseudo-resonances") {
    const ProblemSetup& s = testutil::tanh1();
    double h = 0.1;
    EnergyRectangle rect = rect_for(h);
    SpectralResonances res = resonances_spectral(s, rect);
    auto stable = res.stable();
    auto seeds = pseudo_resonances(s, rect);
    REQUIRE(!stable.empty());
    REQUIRE(!seeds.empty());
    CHECK(res.theta_used == doctest::Approx(2.0 * rect.M * rect.log_scale()));
    for (cplx e : stable) {
        CHECK(e.imag() <= 0.0);
        double best = 1e300;
        for (const auto& pr : seeds) best = std::min(best, std::abs(e - pr.E));
        CHECK(best < 0.5 * h);
    }
    // flags are consistent with the advertised filter
    for (const auto& se : res.eigenvalues)
        CHECK(se.stable == (se.theta_shift < std::max(1e-3 * h, se.grid_shift)));
}

TEST_CASE("resolvent probe: large at an eigenvalue, moderate in between") {
    const ProblemSetup& s = testutil::tanh1();
    double h = 0.1;
    EnergyRectangle rect = rect_for(h);
    SpectralOptions opts;
    opts.oversample = 1.2; // the probe only needs order-of-magnitude accuracy
    auto seeds = pseudo_resonances(s, rect);
    REQUIRE(seeds.size() >= 2);
    cplx mid = 0.5 * (seeds[0].E + seeds[1].E);
    double between = resolvent_probe(s, mid, h, rect, opts);
    CHECK(std::isfinite(between));
    CHECK(between > 1.0);

    SpectralResonances res = resonances_spectral(s, rect, opts);
    auto stable = res.stable();
    REQUIRE(!stable.empty());
    // probe at the base (non-extrapolated) eigenvalue: near-singular matrix
    cplx at = res.eigenvalues.front().E_base;
    for (const auto& se : res.eigenvalues)
        if (se.stable) at = se.E_base;
    double on = resolvent_probe(s, at, h, rect, opts);
    CHECK(on > 1e8);
    CHECK(on > 100.0 * between);
}
