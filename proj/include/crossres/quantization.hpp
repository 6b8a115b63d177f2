#ifndef CROSSRES_QUANTIZATION_HPP
#define CROSSRES_QUANTIZATION_HPP

#include <vector>

#include "crossres/action.hpp"

namespace crossres {

// Search window E0 + h log(1/h) [-r, r] + i [-M h log(1/h), 0].
struct EnergyRectangle {
    double E0 = 0.5;
    double r = 2.0;
    double M = 1.0;
    double h = 0.1;

    double log_scale() const;   // h log(1/h)
    double half_width() const;  // r h log(1/h)
    double depth() const;       // M h log(1/h)
    // margin shrinks the lateral sides and the bottom; the top edge stays at
    // Im E = 0 (roots accumulate just below the real axis)
    bool contains(cplx E, double margin = 0.0) const;
};

struct PseudoResonance {
    cplx E;
    long n = 0;          // quantization index
    double residual = 0; // |C0(E;h) - 1|
    int newton_iters = 0;
};

// Principal monodromy symbol i h e^{iS(E)/h} pi W0 / ((V1'(0)-V2'(0)) sqrt(E0)).
cplx c0(const ProblemSetup& setup, cplx E, double h);
cplx c0_prime(const ProblemSetup& setup, cplx E, double h);

// Quantization targets for index n, derived from C0(E;h) = 1:
//   Re S = h [(2n - 1/2) pi - arg W0],  Im S = h log(h K),
// with K = pi |W0| / ((V1'(0)-V2'(0)) sqrt(E0)).
cplx quantization_target(const ProblemSetup& setup, double h, long n);
double coupling_constant_K(const ProblemSetup& setup);

// Roots of C0(E;h) = 1 inside the rectangle, sorted by Re E.
std::vector<PseudoResonance> pseudo_resonances(const ProblemSetup& setup,
                                               const EnergyRectangle& rect);

// Leading-order width -h log(1/h) / T(E0) as an imaginary energy shift.
cplx width_estimate(const ProblemSetup& setup, double h);

} // namespace crossres

#endif
