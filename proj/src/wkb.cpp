#include "crossres/wkb.hpp"

#include <array>
#include <cmath>

#include "crossres/action.hpp"
#include "crossres/errors.hpp"
#include "crossres/quadrature.hpp"

namespace crossres {

void WkbSolution::check_in_interval(double x) const {
    if (!(x > lo && x < hi)) {
        throw EvaluationOutsideValidInterval(
            "x=" + std::to_string(x) + " outside (" + std::to_string(lo) + ", " +
            std::to_string(hi) + ")");
    }
}

cplx WkbSolution::phase(double x) const {
    check_in_interval(x);
    // smooth integrand on [0, x] (x stays away from the turning point)
    const QuadRule& gl = gauss_legendre(96);
    cplx acc = 0.0;
    for (size_t i = 0; i < gl.nodes.size(); ++i) {
        double t = 0.5 * (gl.nodes[i] + 1.0) * x;
        acc += gl.weights[i] * sqrt_re_pos(E - setup->V1.eval(t));
    }
    return acc * (x / 2.0);
}

cplx WkbSolution::sigma1(double x) const {
    check_in_interval(x);
    return std::pow(E - setup->V1.eval(x), -0.25);
}

cplx WkbSolution::sigma2(double x) const {
    check_in_interval(x);
    cplx v1 = setup->V1.eval(x), v2 = setup->V2.eval(x);
    cplx r0 = setup->coupling.r0_model.eval(x);
    cplx r1 = setup->coupling.r1_model.eval(x);
    cplx num = r0 - cplx(0, 1) * r1 * sqrt_re_pos(E - v1);
    return num / ((v1 - v2) * std::pow(E - v1, 0.25));
}

std::pair<cplx, cplx> WkbSolution::value(double x) const {
    cplx ph = std::exp(cplx(0, 1) * phase(x) / h);
    return {ph * sigma1(x), h * ph * sigma2(x)};
}

WkbSolution wkb_solution(const ProblemSetup& setup, cplx E, double h) {
    WkbSolution w;
    w.E = E;
    w.h = h;
    w.setup = &setup;
    w.x1 = turning_point(setup, 1, E);
    w.lo = kDeltaWkb;
    w.hi = w.x1.real() - kDeltaWkb;
    return w;
}

namespace {

// 8th-order central first/second derivative stencils
constexpr std::array<double, 9> kD1 = {1.0 / 280, -4.0 / 105, 1.0 / 5, -4.0 / 5, 0.0,
                                       4.0 / 5,   -1.0 / 5,   4.0 / 105, -1.0 / 280};
constexpr std::array<double, 9> kD2 = {-1.0 / 560, 8.0 / 315, -1.0 / 5, 8.0 / 5,
                                       -205.0 / 72, 8.0 / 5,  -1.0 / 5, 8.0 / 315,
                                       -1.0 / 560};

} // namespace

double wkb_residual(const ProblemSetup& setup, cplx E, double h,
                    std::span<const double> x_grid) {
    WkbSolution w = wkb_solution(setup, E, h);
    double delta = h / 40.0;
    double maxres = 0.0;
    for (double x : x_grid) {
        std::array<cplx, 9> u1{}, u2{};
        for (int k = -4; k <= 4; ++k) {
            auto [a, b] = w.value(x + k * delta);
            u1[k + 4] = a;
            u2[k + 4] = b;
        }
        cplx u1p = 0, u1pp = 0, u2p = 0, u2pp = 0;
        for (int k = 0; k < 9; ++k) {
            u1p += kD1[k] * u1[k];
            u1pp += kD2[k] * u1[k];
            u2p += kD1[k] * u2[k];
            u2pp += kD2[k] * u2[k];
        }
        u1p /= delta;
        u2p /= delta;
        u1pp /= delta * delta;
        u2pp /= delta * delta;

        cplx v1 = setup.V1.eval(x), v2 = setup.V2.eval(x);
        cplx r0 = setup.coupling.r0_model.eval(x);
        cplx r1 = setup.coupling.r1_model.eval(x);
        cplx r1p = setup.coupling.r1_model.deriv(x);
        cplx uc1 = u1[4], uc2 = u2[4];

        // row 1: (h^2 D^2 + V1 - E) u1 + h W u2,  W = r0 + r1 h d/dx
        cplx row1 = -h * h * u1pp + (v1 - E) * uc1 + h * (r0 * uc2 + r1 * h * u2p);
        // row 2: h W* u1 + (h^2 D^2 + V2 - E) u2,  W* = r0 - h r1' - r1 h d/dx
        cplx row2 = h * ((r0 - h * r1p) * uc1 - r1 * h * u1p) - h * h * u2pp +
                    (v2 - E) * uc2;
        maxres = std::max({maxres, std::abs(row1), std::abs(row2)});
    }
    return maxres;
}

} // namespace crossres
