#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "crossres/errors.hpp"
#include "crossres/model.hpp"
#include "common.hpp"
#include "oracles.hpp"

using namespace crossres;

TEST_CASE("benchmark config parses with the expected classical data") {
    const ProblemSetup& s = testutil::tanh1();
    CHECK(s.E0 == doctest::Approx(0.5));
    CHECK(s.V1.limit_plus() == doctest::Approx(1.0));
    CHECK(s.V1.limit_minus() == doctest::Approx(-1.0));
    CHECK(s.V2.limit_plus() == doctest::Approx(-1.0));
    CHECK(s.V2.limit_minus() == doctest::Approx(1.0));

    // turning points against an independent bisection oracle
    double x1 = oracle::bisect([&](double x) { return std::tanh(x) - 0.5; }, 0.0, 5.0);
    CHECK(s.x1_0 == doctest::Approx(x1).epsilon(1e-10));
    CHECK(s.x1_0 == doctest::Approx(testutil::kX1).epsilon(1e-12));
    CHECK(s.x2_0 == doctest::Approx(-testutil::kX1).epsilon(1e-12));

    CHECK(s.slope1 == doctest::Approx(1.0));
    CHECK(s.slope2 == doctest::Approx(-1.0));
    CHECK(std::abs(s.coupling.W0 - cplx(1.0, 0.0)) < 1e-14);
}

TEST_CASE("potential evaluation matches closed forms, on and off axis") {
    const ProblemSetup& s = testutil::tanh1();
    CHECK(std::abs(s.V1.eval(0.3) - std::tanh(0.3)) < 1e-15);
    CHECK(std::abs(s.V2.eval(0.3) + std::tanh(0.3)) < 1e-15);

    cplx z(0.4, 0.2);
    CHECK(std::abs(s.V1.eval(z) - std::tanh(z)) < 1e-14);
    cplx c = std::cosh(z);
    CHECK(std::abs(s.V1.deriv(z) - 1.0 / (c * c)) < 1e-14);

    // derivative cross-check by central differences
    double d = ((s.V1.eval(0.3 + 1e-6) - s.V1.eval(0.3 - 1e-6)) / 2e-6).real();
    CHECK(s.V1.deriv(0.3).real() == doctest::Approx(d).epsilon(1e-8));
}

TEST_CASE("analyticity guards") {
    const ProblemSetup& s = testutil::tanh1();
    CHECK_THROWS_AS(s.V1.eval(cplx(0.0, 1.55)), OutsideAnalyticityDomain); // near i pi/2
    CHECK_THROWS_AS(s.V1.eval(cplx(6.0, 20.0)), OutsideAnalyticityDomain); // outside cone
    CHECK_NOTHROW(s.V1.eval(cplx(6.0, 1.0))); // inside cone, away from poles
}

TEST_CASE("hypothesis validation passes for the benchmark") {
    HypothesisReport rep = validate_hypotheses(testutil::tanh1());
    for (const auto& c : rep.checks) {
        INFO(c.name, ": ", c.message);
        CHECK(c.pass);
    }
    CHECK(rep.all_pass());
    CHECK(rep.find("A2-crossing") != nullptr);
}

TEST_CASE("hypothesis validation flags a broken configuration") {
    // coupling removed: A3 must fail, everything else still passes
    ProblemSetup s = testutil::tanh1_uncoupled();
    HypothesisReport rep = validate_hypotheses(s);
    CHECK_FALSE(rep.all_pass());
    REQUIRE(rep.find("A3-coupling") != nullptr);
    CHECK_FALSE(rep.find("A3-coupling")->pass);
    CHECK(rep.find("A1b-ordering")->pass);
}

TEST_CASE("config parse errors") {
    nlohmann::json bad = {
        {"E0", 0.5},
        {"V1", {{"family", "exp"}}},
        {"V2", {{"family", "tanh"}, {"params", {{"a", -1.0}}}}},
        {"coupling", {{"r0", 1.0}, {"r1", 0.0}}},
    };
    CHECK_THROWS_AS(build_problem(bad), UnknownFamily);

    nlohmann::json flat = bad;
    flat["V1"] = 0.0; // constant potential never crosses E0
    CHECK_THROWS_AS(build_problem(flat), NoTurningPoint);
}
