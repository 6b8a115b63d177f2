#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "crossres/action.hpp"
#include "crossres/errors.hpp"
#include "crossres/wkb.hpp"
#include "common.hpp"
#include "oracles.hpp"

using namespace crossres;

TEST_CASE("principal symbols at a reference point") {
    const ProblemSetup& s = testutil::tanh1();
    WkbSolution w = wkb_solution(s, 0.5, 0.05);
    CHECK(w.x1.real() == doctest::Approx(testutil::kX1).epsilon(1e-10));
    CHECK(w.lo == doctest::Approx(kDeltaWkb));
    CHECK(w.hi == doctest::Approx(testutil::kX1 - kDeltaWkb).epsilon(1e-9));

    double x = 0.3;
    double t = std::tanh(x);
    CHECK(std::abs(w.sigma1(x) - std::pow(0.5 - t, -0.25)) < 1e-13);
    // r1 = 0: sigma2 = r0 / ((V1 - V2)(E - V1)^{1/4})
    CHECK(std::abs(w.sigma2(x) - 1.0 / (2.0 * t * std::pow(0.5 - t, 0.25))) < 1e-13);
    // reference values
    CHECK(w.sigma1(x).real() == doctest::Approx(1.479).epsilon(1e-3));
    CHECK(w.sigma2(x).real() == doctest::Approx(2.539).epsilon(1e-3));
}

TEST_CASE("phase against the Simpson oracle and the action identity") {
    const ProblemSetup& s = testutil::tanh1();
    WkbSolution w = wkb_solution(s, 0.5, 0.05);
    double x = 0.35;
    cplx want = oracle::integrate(
        [](double t) { return oracle::cplx(std::sqrt(0.5 - std::tanh(t))); }, 0.0, x,
        1e-13);
    CHECK(std::abs(w.phase(x) - want) < 1e-12);

    // phi(x1^-) -> S/2 - int_{x2}^0 sqrt(E - V2) = S/4 for the symmetric model;
    // tail integral in the turning-point variable t = x1 (1 - s^2)
    double xe = w.hi - 1e-4;
    cplx phi = w.phase(xe);
    double x1 = testutil::kX1;
    double se = std::sqrt(1.0 - xe / x1);
    cplx tail = oracle::integrate(
        [&](double s) {
            return oracle::cplx(std::sqrt(oracle::tanh1_q(0.5, s)) * 2.0 * x1 * s);
        },
        0.0, se, 1e-13);
    CHECK(std::abs(phi + tail - testutil::kS0 / 4.0) < 1e-9);
}

TEST_CASE("zero coupling kills sigma2") {
    ProblemSetup s = testutil::tanh1_uncoupled();
    WkbSolution w = wkb_solution(s, 0.5, 0.05);
    CHECK(std::abs(w.sigma2(0.2)) == 0.0);
    CHECK(std::abs(w.sigma2(0.4)) == 0.0);
}

TEST_CASE("valid interval is enforced") {
    const ProblemSetup& s = testutil::tanh1();
    WkbSolution w = wkb_solution(s, 0.5, 0.05);
    CHECK_THROWS_AS(w.sigma1(0.01), EvaluationOutsideValidInterval);
    CHECK_THROWS_AS(w.sigma1(testutil::kX1), EvaluationOutsideValidInterval);
    CHECK_NOTHROW(w.sigma1(0.25));
}

TEST_CASE("residual scales like h^2") {
    const ProblemSetup& s = testutil::tanh1();
    std::array<double, 3> grid = {0.2, 0.3, 0.4};
    double r1 = wkb_residual(s, 0.5, 0.05, grid);
    double r2 = wkb_residual(s, 0.5, 0.025, grid);
    CHECK(r1 / r2 > 3.2);
    CHECK(r1 / r2 < 4.8);

    // scalar channel (zero coupling) keeps the same order
    ProblemSetup su = testutil::tanh1_uncoupled();
    double u1 = wkb_residual(su, 0.5, 0.05, grid);
    double u2 = wkb_residual(su, 0.5, 0.025, grid);
    CHECK(u1 / u2 > 3.2);
    CHECK(u1 / u2 < 4.8);
}

TEST_CASE("residual grows toward the crossing") {
    const ProblemSetup& s = testutil::tanh1();
    std::array<double, 1> near = {0.11};
    std::array<double, 1> far = {0.3};
    CHECK(wkb_residual(s, 0.5, 0.05, near) > wkb_residual(s, 0.5, 0.05, far));
}
