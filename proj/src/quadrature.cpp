#include "crossres/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include <Eigen/Dense>

#include "crossres/errors.hpp"

namespace crossres {

namespace {

// Golub-Welsch on the three-term recurrence of the Jacobi polynomials
// (Gautschi's coefficients for the monic recurrence).
QuadRule compute_gauss_jacobi(int n, double a, double b) {
    if (n < 1) throw Error("quadrature order must be >= 1");
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        double diag;
        if (k == 0) {
            diag = (b - a) / (a + b + 2.0);
        } else {
            double d = 2.0 * k + a + b;
            diag = (b * b - a * a) / (d * (d + 2.0));
        }
        J(k, k) = diag;
        if (k >= 1) {
            double beta;
            if (k == 1) {
                // k=1 form avoids the 0/0 of the general one at a+b=0
                beta = 4.0 * (1.0 + a) * (1.0 + b) /
                       ((a + b + 2.0) * (a + b + 2.0) * (a + b + 3.0));
            } else {
                double d = 2.0 * k + a + b;
                beta = 4.0 * k * (k + a) * (k + b) * (k + a + b) /
                       (d * d * (d + 1.0) * (d - 1.0));
            }
            double off = std::sqrt(beta);
            J(k, k - 1) = off;
            J(k - 1, k) = off;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    if (es.info() != Eigen::Success) throw EigenSolverFailure("Golub-Welsch");

    double mu0 = std::pow(2.0, a + b + 1.0) * std::tgamma(a + 1.0) * std::tgamma(b + 1.0) /
                 std::tgamma(a + b + 2.0);
    QuadRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        rule.nodes[i] = es.eigenvalues()(i);
        double q0 = es.eigenvectors()(0, i);
        rule.weights[i] = mu0 * q0 * q0;
    }
    return rule;
}

} // namespace

const QuadRule& gauss_jacobi(int n, double alpha, double beta) {
    static std::map<std::tuple<int, double, double>, QuadRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_tuple(n, alpha, beta);
    auto it = cache.find(key);
    if (it == cache.end()) {
        it = cache.emplace(key, compute_gauss_jacobi(n, alpha, beta)).first;
    }
    return it->second;
}

} // namespace crossres
