#include "crossres/action.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "crossres/errors.hpp"
#include "crossres/quadrature.hpp"

namespace crossres {

cplx sqrt_re_pos(cplx z) {
    cplx s = std::sqrt(z);
    if (s.real() < 0.0) s = -s;
    if (std::abs(s.real()) < 1e-12 && std::abs(s) > 1e-10) {
        std::ostringstream os;
        os << "Re sqrt vanishes at value " << s.imag() << "i";
        throw BranchAmbiguity(os.str());
    }
    return s;
}

namespace {

// Newton with a local trust disk around the starting point; returns false on
// leaving the disk or failing to converge so the caller can refine the path.
bool newton_step_local(const PotentialModel& V, cplx E, cplx& x) {
    cplx start = x;
    for (int it = 0; it < 100; ++it) {
        cplx f = V.eval(x) - E;
        if (std::abs(f) < 1e-13) {
            if (std::abs(V.deriv(x)) < 1e-8)
                throw DegenerateSlope("|V'| < 1e-8 at turning point");
            return true;
        }
        cplx d = V.deriv(x);
        if (std::abs(d) < 1e-8) throw DegenerateSlope("|V'| < 1e-8 during Newton");
        x -= f / d;
        if (std::abs(x - start) > 0.5) return false;
    }
    return false;
}

} // namespace

cplx turning_point(const ProblemSetup& setup, int j, cplx E) {
    double seed = (j == 1) ? setup.x1_0 : setup.x2_0;
    const PotentialModel& V = (j == 1) ? setup.V1 : setup.V2;
    // Newton's basin is only local: far from the reference energy the turning
    // point can travel by more than the trust radius, so follow it along a
    // homotopy from E0 to E, refining the step count until every leg stays
    // inside its local disk.
    for (int steps = 1; steps <= 64; steps *= 2) {
        cplx x = seed;
        bool ok = true;
        for (int k = 1; k <= steps && ok; ++k) {
            cplx Ek = setup.E0 + (E - setup.E0) * (double)k / (double)steps;
            ok = newton_step_local(V, Ek, x);
        }
        if (ok) return x;
    }
    throw NewtonDiverged("turning point continuation from E0 failed");
}

namespace {

struct SegmentIntegrals {
    cplx action;    // int sqrt(E - V) dx over the segment [0, xt]
    cplx time;      // int dx / sqrt(E - V) over the same segment
    double min_re;  // min Re sqrt over nodes
};

// Integrals from the crossing x=0 to the turning point xt along the straight
// segment, with Gauss-Jacobi treatment of the sqrt endpoint behavior:
// weight (1-t)^{1/2} for the action, (1-t)^{-1/2} for the time.
SegmentIntegrals segment_integrals(const PotentialModel& V, cplx E, cplx xt, int n) {
    const QuadRule& gj = gauss_jacobi(n, 0.5, 0.0);
    const QuadRule& gm = gauss_jacobi(n, -0.5, 0.0);
    SegmentIntegrals out{0.0, 0.0, 1e300};
    for (int i = 0; i < n; ++i) {
        double t = gj.nodes[i];
        cplx x = xt * (0.5 * (t + 1.0));
        cplx s = sqrt_re_pos(E - V.eval(x));
        out.min_re = std::min(out.min_re, s.real());
        out.action += gj.weights[i] * s / std::sqrt(1.0 - t);
    }
    for (int i = 0; i < n; ++i) {
        double t = gm.nodes[i];
        cplx x = xt * (0.5 * (t + 1.0));
        cplx s = sqrt_re_pos(E - V.eval(x));
        out.min_re = std::min(out.min_re, s.real());
        out.time += gm.weights[i] * std::sqrt(1.0 - t) / s;
    }
    out.action *= xt * 0.5;
    out.time *= xt * 0.5;
    return out;
}

SegmentIntegrals segment_adaptive(const PotentialModel& V, cplx E, cplx xt) {
    SegmentIntegrals prev = segment_integrals(V, E, xt, 48);
    for (int n : {96, 192}) {
        SegmentIntegrals cur = segment_integrals(V, E, xt, n);
        if (std::abs(cur.action - prev.action) < 1e-11 &&
            std::abs(cur.time - prev.time) < 1e-11)
            return cur;
        prev = cur;
    }
    return prev;
}

} // namespace

ActionData action_data(const ProblemSetup& setup, cplx E) {
    ActionData d;
    d.E = E;
    d.x1 = turning_point(setup, 1, E);
    d.x2 = turning_point(setup, 2, E);
    SegmentIntegrals seg1 = segment_adaptive(setup.V1, E, d.x1);
    SegmentIntegrals seg2 = segment_adaptive(setup.V2, E, d.x2);
    // [x2, 0] runs opposite to the [0, x2] parametrization
    cplx I2 = -seg2.action;
    d.S = 2.0 * (I2 + seg1.action);
    d.t1 = seg1.time;
    d.t2 = -seg2.time;
    d.S_prime = d.t1 + d.t2;
    d.min_re_sqrt = std::min(seg1.min_re, seg2.min_re);
    return d;
}

cplx action_S(const ProblemSetup& setup, cplx E) { return action_data(setup, E).S; }

cplx period_T(const ProblemSetup& setup, cplx E) { return action_data(setup, E).S_prime; }

PhasePoint trajectory_gamma(const ProblemSetup& setup, double t) {
    namespace ode = boost::numeric::odeint;
    using state = std::array<double, 2>; // (x, xi)

    ActionData d = action_data(setup, setup.E0);
    double t1 = d.t1.real(), t2 = d.t2.real();
    double T = t1 + t2;
    double tm = std::fmod(t, T);
    if (tm < 0) tm += T;

    int channel = (tm <= t1) ? 1 : 2;
    double tau = (channel == 1) ? tm : tm - t1;
    double xi0 = (channel == 1) ? std::sqrt(setup.E0) : -std::sqrt(setup.E0);
    const PotentialModel& V = (channel == 1) ? setup.V1 : setup.V2;

    state y{0.0, xi0};
    if (tau > 0) {
        auto rhs = [&](const state& s, state& dsdt, double) {
            dsdt[0] = 2.0 * s[1];
            dsdt[1] = -V.deriv(s[0]).real();
        };
        auto stepper = ode::make_controlled<ode::runge_kutta_dopri5<state>>(1e-13, 1e-13);
        try {
            ode::integrate_adaptive(stepper, rhs, y, 0.0, tau, tau / 1000.0);
        } catch (const std::exception& e) {
            throw IntegrationFailure(e.what());
        }
    }
    double drift = std::abs(y[1] * y[1] + V.eval(y[0]).real() - setup.E0);
    if (drift > 1e-10)
        throw IntegrationFailure("energy drift " + std::to_string(drift) + " exceeds 1e-10");
    return PhasePoint{y[0], y[1], tm, channel};
}

} // namespace crossres
