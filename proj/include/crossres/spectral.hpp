#ifndef CROSSRES_SPECTRAL_HPP
#define CROSSRES_SPECTRAL_HPP

#include <vector>

#include <Eigen/Core>

#include "crossres/model.hpp"
#include "crossres/quantization.hpp"

namespace crossres {

// Exterior complex scaling contour zeta(x) = x exp(i theta g(|x|)) with a
// quintic blend g: 0 on [0,R0], 1 on [2R0,inf), C^2 monotone in between.
struct Distortion {
    double R0 = 5.0;
    double theta = 0.0;
    double theta0 = 1.2;

    double blend(double s) const;
    double blend_prime(double s) const;
    double blend_second(double s) const;

    cplx map(double x) const;
    cplx map_prime(double x) const;
    cplx map_second(double x) const;
};

Distortion build_distortion(double R0, double theta, double theta0);

// Dense 2N x 2N channel-blocked matrix [[P1, hW],[hW*, P2]] on the uniform
// Dirichlet grid over (-L, L), derivatives by 4th-order central differences
// (odd-reflection closure at the Dirichlet ends, keeping D2 symmetric).
struct DiscretizedOperator {
    int N = 0;
    double L = 0.0, h = 0.0, theta = 0.0, dx = 0.0;
    std::vector<double> x; // interior nodes
    Eigen::MatrixXcd matrix;
};

DiscretizedOperator assemble_ptheta(const ProblemSetup& setup, double h,
                                    const Distortion& dist, int N, double L);

struct SpectralOptions {
    int N = 0;              // 0 -> resolution rule * oversample (capped)
    double L = 0.0;         // 0 -> 3*R0
    double M_prime = 0.0;   // 0 -> 2*M of the rectangle
    double oversample = 2.5;
    int max_N = 2600;
};

struct SpectralEigenvalue {
    cplx E;            // Richardson-extrapolated (4th-order pair N, 1.5N)
    cplx E_base;       // eigenvalue on the base grid
    double theta_shift = 0.0; // movement under theta -> 1.25 theta
    double grid_shift = 0.0;  // movement under N -> 1.5 N
    bool stable = false;
};

struct SpectralResonances {
    std::vector<SpectralEigenvalue> eigenvalues; // all in-rectangle, flagged
    double theta_used = 0.0;
    int N_used = 0;
    double L_used = 0.0;

    std::vector<cplx> stable() const;
};

// Eigenvalues at (N, theta), filtered by the theta-stability and
// grid-stability double test; theta = M'.h.log(1/h).
SpectralResonances resonances_spectral(const ProblemSetup& setup,
                                       const EnergyRectangle& rect,
                                       const SpectralOptions& opts = {});

// 1 / sigma_min(P_theta - E): discrete resolvent norm estimate.
double resolvent_probe(const ProblemSetup& setup, cplx E, double h,
                       const EnergyRectangle& rect, const SpectralOptions& opts = {});

// All eigenvalues of a dense complex matrix (LAPACK zgeev; A is destroyed).
std::vector<cplx> eigenvalues_dense(Eigen::MatrixXcd& A);

// Smallest singular value of a dense complex matrix (A is destroyed).
double smallest_singular_value(Eigen::MatrixXcd& A);

} // namespace crossres

#endif
