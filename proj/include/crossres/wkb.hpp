#ifndef CROSSRES_WKB_HPP
#define CROSSRES_WKB_HPP

#include <span>
#include <vector>

#include "crossres/model.hpp"

namespace crossres {

// Two-component WKB solution on the branch between the crossing (x=0) and the
// channel-1 turning point, with principal symbols only. Valid on an open
// interval excluding both degeneracies by the margin delta_wkb.
struct WkbSolution {
    cplx E;
    double h = 0.1;
    double lo = 0.0, hi = 0.0; // valid interval (open)
    cplx x1;                   // channel-1 turning point at E

    const ProblemSetup* setup = nullptr;

    cplx phase(double x) const;        // phi(x) = int_0^x sqrt(E - V1)
    cplx sigma1(double x) const;       // (E - V1)^{-1/4}
    cplx sigma2(double x) const;       // coupling symbol over (V1-V2)(E-V1)^{1/4}
    std::pair<cplx, cplx> value(double x) const; // e^{i phi/h} (sigma1, h sigma2)

    void check_in_interval(double x) const;
};

// margin excluding the crossing and the turning point from the valid interval
inline constexpr double kDeltaWkb = 0.09;

WkbSolution wkb_solution(const ProblemSetup& setup, cplx E, double h);

// Max norm over x_grid of (P(h) - E) applied to the WKB vector, derivatives by
// 8th-order central finite differences on an auxiliary fine grid.
double wkb_residual(const ProblemSetup& setup, cplx E, double h,
                    std::span<const double> x_grid);

} // namespace crossres

#endif
