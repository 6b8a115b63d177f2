#include "crossres/shooting.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <boost/numeric/odeint.hpp>

#include "crossres/errors.hpp"

namespace crossres {

namespace {

cplx sqrt_pp(cplx z) {
    cplx s = std::sqrt(z);
    return (s.real() < 0.0) ? -s : s;
}

// First-order system matrix for Y = (u1, h u1', u2, h u2').
Eigen::Matrix4cd system_matrix(const ProblemSetup& s, double x, cplx E, double h) {
    cplx v1 = s.V1.eval(x), v2 = s.V2.eval(x);
    cplx r0 = s.coupling.r0_model.eval(x);
    cplx r1 = s.coupling.r1_model.eval(x);
    cplx r1p = s.coupling.r1_model.deriv(x);
    Eigen::Matrix4cd A = Eigen::Matrix4cd::Zero();
    A(0, 1) = 1.0 / h;
    A(1, 0) = (v1 - E) / h;
    A(1, 2) = r0;
    A(1, 3) = r1;
    A(2, 3) = 1.0 / h;
    A(3, 0) = r0 - h * r1p;
    A(3, 1) = -r1;
    A(3, 2) = (v2 - E) / h;
    return A;
}

// index map for the Lambda^2 basis (01,02,03,12,13,23)
constexpr int kPair[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

int wedge_index(int i, int j, double& sign) {
    if (i > j) {
        std::swap(i, j);
        sign = -1.0;
    } else {
        sign = 1.0;
    }
    for (int k = 0; k < 6; ++k)
        if (kPair[k][0] == i && kPair[k][1] == j) return k;
    return -1; // i == j
}

using WedgeState = std::vector<cplx>; // size 6

struct WedgeRhs {
    const ProblemSetup* setup;
    cplx E;
    double h;
    cplx E_center; // rescaling reference (E-independent profile)

    void operator()(const WedgeState& w, WedgeState& dwdx, double x) const {
        Eigen::Matrix4cd A = system_matrix(*setup, x, E, h);
        double s = (sqrt_pp(setup->V1.eval(x) - E_center).real() +
                    sqrt_pp(setup->V2.eval(x) - E_center).real()) / h;
        for (int p = 0; p < 6; ++p) {
            int i = kPair[p][0], j = kPair[p][1];
            cplx acc = 0.0;
            for (int k = 0; k < 4; ++k) {
                double sg;
                if (k != j) {
                    int q = wedge_index(k, j, sg);
                    acc += A(i, k) * sg * w[q];
                }
                if (k != i) {
                    int q = wedge_index(i, k, sg);
                    acc += A(j, k) * sg * w[q];
                }
            }
            dwdx[p] = acc - s * w[p];
        }
    }
};

struct BoundaryBasis {
    Eigen::Vector4cd va, vb;
    cplx lam_a, lam_b;
};

// Frozen-coefficient eigenvectors at x = x_b selecting the two admissible
// channels: targets are the exact exponents of the uncoupled limit system.
BoundaryBasis boundary_basis(const ProblemSetup& s, double x_b, cplx E, double h,
                             bool right_side) {
    Eigen::Matrix4cd A = system_matrix(s, x_b, E, h);
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(A);
    if (es.info() != Eigen::Success) throw EigenSolverFailure("boundary basis");

    cplx tgt_a, tgt_b;
    int comp_a, comp_b;
    if (right_side) {
        tgt_a = -sqrt_pp(s.V1.eval(x_b) - E) / h;      // channel 1 decaying at +inf
        tgt_b = cplx(0, 1) * sqrt_pp(E - s.V2.eval(x_b)) / h; // channel 2 outgoing
        comp_a = 0;
        comp_b = 2;
    } else {
        tgt_a = cplx(0, -1) * sqrt_pp(E - s.V1.eval(x_b)) / h; // channel 1 outgoing at -inf
        tgt_b = sqrt_pp(s.V2.eval(x_b) - E) / h;                // channel 2 decaying
        comp_a = 0;
        comp_b = 2;
    }
    auto pick = [&](cplx tgt, int avoid) {
        int best = -1;
        double bd = 1e300;
        for (int i = 0; i < 4; ++i) {
            if (i == avoid) continue;
            double d = std::abs(es.eigenvalues()(i) - tgt);
            if (d < bd) {
                bd = d;
                best = i;
            }
        }
        return best;
    };
    int ia = pick(tgt_a, -1);
    int ib = pick(tgt_b, ia);
    BoundaryBasis bb;
    bb.lam_a = es.eigenvalues()(ia);
    bb.lam_b = es.eigenvalues()(ib);
    bb.va = es.eigenvectors().col(ia);
    bb.vb = es.eigenvectors().col(ib);
    // normalize on the dominant channel component; keeps the basis analytic in E
    bb.va /= bb.va(comp_a);
    bb.vb /= bb.vb(comp_b);
    return bb;
}

WedgeState initial_wedge(const BoundaryBasis& bb) {
    WedgeState w(6);
    for (int p = 0; p < 6; ++p) {
        int i = kPair[p][0], j = kPair[p][1];
        w[p] = bb.va(i) * bb.vb(j) - bb.va(j) * bb.vb(i);
    }
    return w;
}

// exact power-of-two renormalization: scale-free for the determinant roots
// and locally constant in E, so analyticity is preserved
void renormalize(WedgeState& w) {
    double m = 0.0;
    for (const cplx& c : w) m = std::max(m, std::abs(c));
    if (m == 0.0) return;
    if (m > 1e200) throw IntegrationOverflow("wedge exceeded 1e200 between renormalizations");
    double f = std::exp2(-std::round(std::log2(m)));
    for (cplx& c : w) c *= f;
}

WedgeState propagate(const ProblemSetup& setup, cplx E, double h, cplx E_center,
                     double from, double to, WedgeState w, const ShootingOptions& opts) {
    namespace ode = boost::numeric::odeint;
    WedgeRhs rhs{&setup, E, h, E_center};
    auto stepper =
        ode::make_controlled<ode::runge_kutta_dopri5<WedgeState>>(opts.abs_tol, opts.abs_tol);
    double dir = (to > from) ? 1.0 : -1.0;
    double x = from;
    double dt0 = dir * std::min(opts.renorm_interval, h);
    while (dir * (to - x) > 1e-14) {
        double xn = x + dir * opts.renorm_interval;
        if (dir * (xn - to) > 0) xn = to;
        try {
            ode::integrate_adaptive(stepper, rhs, w, x, xn, dt0);
        } catch (const std::exception& e) {
            throw IntegrationFailure(e.what());
        }
        renormalize(w);
        x = xn;
    }
    return w;
}

} // namespace

cplx shooting_determinant(const ProblemSetup& setup, cplx E, double h, cplx E_center,
                          const ShootingOptions& opts) {
    double L = opts.L > 0 ? opts.L : 3.0 * setup.R0;
    BoundaryBasis right = boundary_basis(setup, L, E, h, true);
    BoundaryBasis left = boundary_basis(setup, -L, E, h, false);
    WedgeState wp = propagate(setup, E, h, E_center, L, 0.0, initial_wedge(right), opts);
    WedgeState wm = propagate(setup, E, h, E_center, -L, 0.0, initial_wedge(left), opts);
    // full contraction <wp ^ wm> = det[va vb vc vd] up to the shared rescalings
    return wp[0] * wm[5] - wp[1] * wm[4] + wp[2] * wm[3] + wp[3] * wm[2] -
           wp[4] * wm[1] + wp[5] * wm[0];
}

std::array<cplx, 4> shooting_channel_rates(const ProblemSetup& setup, cplx E, double h,
                                           const ShootingOptions& opts) {
    double L = opts.L > 0 ? opts.L : 3.0 * setup.R0;
    BoundaryBasis right = boundary_basis(setup, L, E, h, true);
    BoundaryBasis left = boundary_basis(setup, -L, E, h, false);
    return {right.lam_a, right.lam_b, left.lam_a, left.lam_b};
}

std::vector<ShootingResult> find_resonances_shooting(const ProblemSetup& setup,
                                                     const EnergyRectangle& rect,
                                                     const ShootingOptions& opts) {
    std::vector<ShootingResult> out;
    auto seeds = pseudo_resonances(setup, rect);
    const double h = rect.h;
    // secant starting offsets, tried in order until one converges: a bad
    // first secant step can leave the seed's basin even when the root is close
    const cplx offsets[] = {0.02 * cplx(1.0, 0.4), -0.02 * cplx(1.0, 0.4),
                            0.04 * cplx(0.3, -1.0), 0.01 * cplx(-1.0, 0.2)};
    for (const auto& seed : seeds) {
        cplx Ec = seed.E;
        ShootingResult res;
        res.channel_rates = shooting_channel_rates(setup, seed.E, h, opts);
        res.converged = false;
        for (cplx off : offsets) {
            cplx e0 = seed.E;
            cplx e1 = seed.E + h * off;
            cplx d0, d1;
            try {
                d0 = shooting_determinant(setup, e0, h, Ec, opts);
                d1 = shooting_determinant(setup, e1, h, Ec, opts);
            } catch (const Error&) {
                break;
            }
            double scale = std::max(std::abs(d0), std::abs(d1));
            bool converged = false;
            for (int it = 0; it < opts.max_iters; ++it) {
                if (std::abs(d1 - d0) == 0.0) break;
                cplx e2 = e1 - d1 * (e1 - e0) / (d1 - d0);
                if (std::abs(e2 - seed.E) > 0.5 * h) break; // left the seed's basin
                cplx d2;
                try {
                    d2 = shooting_determinant(setup, e2, h, Ec, opts);
                } catch (const Error&) {
                    break;
                }
                e0 = e1;
                d0 = d1;
                e1 = e2;
                d1 = d2;
                scale = std::max(scale, std::abs(d1));
                if (std::abs(e1 - e0) < 1e-13 || std::abs(d1) < 1e-13 * scale) {
                    converged = true;
                    break;
                }
            }
            if (converged && std::abs(d1) < 1e-8 * scale) {
                res.E = e1;
                res.det_value = d1;
                res.converged = true;
                break;
            }
        }
        if (!res.converged) continue;
        bool dup = false;
        for (const auto& r : out)
            if (std::abs(r.E - res.E) < 1e-6 * h) dup = true;
        if (!dup) out.push_back(res);
    }
    std::sort(out.begin(), out.end(), [](const ShootingResult& a, const ShootingResult& b) {
        return a.E.real() < b.E.real();
    });
    return out;
}

} // namespace crossres
