#ifndef CROSSRES_ACTION_HPP
#define CROSSRES_ACTION_HPP

#include "crossres/model.hpp"

namespace crossres {

// Classical data at energy E: turning points, action, period, half-times.
struct ActionData {
    cplx E;
    cplx x1, x2;      // turning points of V1, V2
    cplx S;           // action along [x2,0] u [0,x1]
    cplx S_prime;     // = t1 + t2
    cplx t1, t2;      // half-times (integrals of 1/sqrt(E-V_j))
    double min_re_sqrt = 0.0; // instrumentation: min Re sqrt(E-V) over all nodes
};

struct PhasePoint {
    double x = 0.0;
    double xi = 0.0;
    double t = 0.0;
    int channel = 1;
};

// sqrt with the branch Re >= 0; throws BranchAmbiguity when the real part
// vanishes to 1e-12 while the value itself is not small.
cplx sqrt_re_pos(cplx z);

// Newton continuation of V_j(x) = E seeded at the real turning point.
cplx turning_point(const ProblemSetup& setup, int j, cplx E);

// Full classical data: one pass computes S, S', t1, t2.
ActionData action_data(const ProblemSetup& setup, cplx E);

cplx action_S(const ProblemSetup& setup, cplx E);
cplx period_T(const ProblemSetup& setup, cplx E);

// Point of the periodic trajectory gamma at time t (mod T), energy E0.
PhasePoint trajectory_gamma(const ProblemSetup& setup, double t);

} // namespace crossres

#endif
