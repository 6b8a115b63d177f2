#ifndef CROSSRES_QUADRATURE_HPP
#define CROSSRES_QUADRATURE_HPP

#include <vector>

namespace crossres {

struct QuadRule {
    std::vector<double> nodes;   // on [-1, 1]
    std::vector<double> weights;
};

// Gauss-Jacobi rule for the weight (1-x)^alpha (1+x)^beta on [-1,1],
// computed by Golub-Welsch. Results are cached per (n, alpha, beta);
// lookups are thread-safe.
const QuadRule& gauss_jacobi(int n, double alpha, double beta);

inline const QuadRule& gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

} // namespace crossres

#endif
