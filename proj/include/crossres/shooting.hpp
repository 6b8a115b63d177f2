#ifndef CROSSRES_SHOOTING_HPP
#define CROSSRES_SHOOTING_HPP

#include <array>
#include <vector>

#include "crossres/model.hpp"
#include "crossres/quantization.hpp"

namespace crossres {

struct ShootingResult {
    cplx E;
    cplx det_value = 0.0; // matching determinant at the root (scaled)
    bool converged = false;
    std::array<cplx, 4> channel_rates{}; // boundary exponents used (per h)
};

struct ShootingOptions {
    double L = 0.0;                // grid half-length; 0 -> 3*R0
    double abs_tol = 1e-12;        // integrator local error
    double renorm_interval = 0.1;  // scalar renormalization spacing
    int max_iters = 60;
};

// Matching determinant of the outgoing/decaying solution subspaces at x=0,
// evaluated with the compound-matrix (wedge) formulation. The dominant
// exponential growth is removed by an E-independent rescaling profile built
// at E_center, so D is analytic in E near E_center.
cplx shooting_determinant(const ProblemSetup& setup, cplx E, double h, cplx E_center,
                          const ShootingOptions& opts = {});

// Boundary exponents (lambda of the frozen-coefficient system) used at +L / -L.
std::array<cplx, 4> shooting_channel_rates(const ProblemSetup& setup, cplx E, double h,
                                           const ShootingOptions& opts = {});

// Secant refinement of the determinant roots, seeded at the pseudo-resonances
// of the rectangle.
std::vector<ShootingResult> find_resonances_shooting(const ProblemSetup& setup,
                                                     const EnergyRectangle& rect,
                                                     const ShootingOptions& opts = {});

} // namespace crossres

#endif
