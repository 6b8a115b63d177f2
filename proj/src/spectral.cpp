#include "crossres/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "crossres/errors.hpp"

namespace crossres {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double Distortion::blend(double s) const {
    if (s <= R0) return 0.0;
    if (s >= 2.0 * R0) return 1.0;
    double u = (s - R0) / R0;
    return ((6.0 * u - 15.0) * u + 10.0) * u * u * u;
}

double Distortion::blend_prime(double s) const {
    if (s <= R0 || s >= 2.0 * R0) return 0.0;
    double u = (s - R0) / R0;
    return ((30.0 * u - 60.0) * u + 30.0) * u * u / R0;
}

double Distortion::blend_second(double s) const {
    if (s <= R0 || s >= 2.0 * R0) return 0.0;
    double u = (s - R0) / R0;
    return ((120.0 * u - 180.0) * u + 60.0) * u / (R0 * R0);
}

cplx Distortion::map(double x) const {
    return x * std::exp(cplx(0, theta * blend(std::abs(x))));
}

cplx Distortion::map_prime(double x) const {
    double s = std::abs(x);
    cplx e = std::exp(cplx(0, theta * blend(s)));
    // d/dx g(|x|) = sign(x) g'(s) and x*sign(x) = s
    return e * (1.0 + cplx(0, theta) * s * blend_prime(s));
}

cplx Distortion::map_second(double x) const {
    double s = std::abs(x);
    double sg = (x >= 0.0) ? 1.0 : -1.0;
    cplx e = std::exp(cplx(0, theta * blend(s)));
    double gp = blend_prime(s), gpp = blend_second(s);
    return cplx(0, theta) * sg * e *
           (gp * (1.0 + cplx(0, theta) * s * gp) + gp + s * gpp);
}

Distortion build_distortion(double R0, double theta, double theta0) {
    if (!(theta > 0.0 && theta < theta0))
        throw InvalidAngle("theta=" + std::to_string(theta) + " not in (0, " +
                           std::to_string(theta0) + ")");
    return Distortion{R0, theta, theta0};
}

DiscretizedOperator assemble_ptheta(const ProblemSetup& setup, double h,
                                    const Distortion& dist, int N, double L) {
    if (L < 3.0 * setup.R0) throw Error("L must be >= 3*R0");
    if (N % 2 != 0) throw Error("N must be even");
    const double dx = 2.0 * L / (N + 1);
    if (dx > 2.0 * kPi * h / std::sqrt(setup.E0) / 10.0)
        throw GridTooCoarse("dx=" + std::to_string(dx) + " exceeds lambda/10");

    DiscretizedOperator op;
    op.N = N;
    op.L = L;
    op.h = h;
    op.theta = dist.theta;
    op.dx = dx;
    op.x.resize(N);
    for (int i = 0; i < N; ++i) op.x[i] = -L + dx * (i + 1);

    // contour data per node
    std::vector<cplx> a(N), ap(N), v1(N), v2(N), r0(N), r1(N), r1p(N);
    for (int i = 0; i < N; ++i) {
        cplx z = dist.map(op.x[i]);
        cplx zp = dist.map_prime(op.x[i]);
        cplx zpp = dist.map_second(op.x[i]);
        a[i] = 1.0 / zp;
        ap[i] = -zpp / (zp * zp);
        try {
            v1[i] = setup.V1.eval(z);
            v2[i] = setup.V2.eval(z);
            r0[i] = setup.coupling.r0_model.eval(z);
            r1[i] = setup.coupling.r1_model.eval(z);
            r1p[i] = setup.coupling.r1_model.deriv(z);
        } catch (const OutsideAnalyticityDomain& e) {
            throw ConeViolation(e.what());
        }
    }

    // 4th-order central stencils with Dirichlet closure: the node one step
    // past each end is the boundary itself (u = 0, dropped), the node two
    // steps past is folded back by odd reflection about the boundary. This
    // keeps D2 exactly symmetric, so the undistorted operator stays similar
    // to a self-adjoint matrix.
    Eigen::MatrixXcd D1 = Eigen::MatrixXcd::Zero(N, N);
    Eigen::MatrixXcd D2 = Eigen::MatrixXcd::Zero(N, N);
    const double c2[5] = {-1.0 / 12, 4.0 / 3, -5.0 / 2, 4.0 / 3, -1.0 / 12};
    const double c1[5] = {1.0 / 12, -2.0 / 3, 0.0, 2.0 / 3, -1.0 / 12};
    for (int i = 0; i < N; ++i) {
        for (int k = -2; k <= 2; ++k) {
            int j = i + k;
            double s2 = c2[k + 2] / (dx * dx);
            double s1 = c1[k + 2] / dx;
            if (j >= 0 && j < N) {
                D2(i, j) += s2;
                D1(i, j) += s1;
            } else if (j == -2) {
                D2(i, 0) -= s2; // u(-L - dx) := -u(-L + dx)
                D1(i, 0) -= s1;
            } else if (j == N + 1) {
                D2(i, N - 1) -= s2; // u(L + dx) := -u(L - dx)
                D1(i, N - 1) -= s1;
            }
            // j == -1 or j == N: boundary node, u = 0
        }
    }

    Eigen::VectorXcd av = Eigen::Map<Eigen::VectorXcd>(a.data(), N);
    Eigen::VectorXcd apv = Eigen::Map<Eigen::VectorXcd>(ap.data(), N);
    // (zeta')^-1 d/dx (zeta')^-1 d/dx = a^2 d^2 + a a' d
    Eigen::MatrixXcd lap =
        (av.array() * av.array()).matrix().asDiagonal() * D2 +
        (av.array() * apv.array()).matrix().asDiagonal() * D1;

    op.matrix.resize(2 * N, 2 * N);
    Eigen::MatrixXcd kin = -h * h * lap;
    op.matrix.topLeftCorner(N, N) = kin;
    op.matrix.bottomRightCorner(N, N) = kin;
    for (int i = 0; i < N; ++i) {
        op.matrix(i, i) += v1[i];
        op.matrix(N + i, N + i) += v2[i];
    }
    // hW = h (r0 + r1 h a D);  hW* = h (r0 - h r1'(zeta) - r1 h a D)
    Eigen::MatrixXcd aD1 =
        (Eigen::Map<Eigen::VectorXcd>(r1.data(), N).array() * av.array())
            .matrix()
            .asDiagonal() *
        D1;
    op.matrix.topRightCorner(N, N) = h * h * aD1;
    op.matrix.bottomLeftCorner(N, N) = -h * h * aD1;
    for (int i = 0; i < N; ++i) {
        op.matrix(i, N + i) += h * r0[i];
        op.matrix(N + i, i) += h * (r0[i] - h * r1p[i]);
    }
    return op;
}

std::vector<cplx> eigenvalues_dense(Eigen::MatrixXcd& A) {
    const lapack_int n = static_cast<lapack_int>(A.rows());
    std::vector<cplx> w(n);
    lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, A.data(), n,
                                    w.data(), nullptr, 1, nullptr, 1);
    if (info != 0)
        throw EigenSolverFailure("zgeev info=" + std::to_string(info));
    return w;
}

double smallest_singular_value(Eigen::MatrixXcd& A) {
    const lapack_int n = static_cast<lapack_int>(A.rows());
    std::vector<double> s(n);
    lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', n, n, A.data(), n,
                                     s.data(), nullptr, 1, nullptr, 1);
    if (info != 0)
        throw EigenSolverFailure("zgesdd info=" + std::to_string(info));
    return s[n - 1];
}

namespace {

struct SolveParams {
    int N = 0;
    double L = 0.0, theta = 0.0, M_prime = 0.0;
};

SolveParams resolve_params(const ProblemSetup& setup, const EnergyRectangle& rect,
                           const SpectralOptions& opts) {
    SolveParams p;
    p.L = opts.L > 0 ? opts.L : 3.0 * setup.R0;
    p.M_prime = opts.M_prime > 0 ? opts.M_prime : 2.0 * rect.M;
    p.theta = p.M_prime * rect.log_scale();
    if (opts.N > 0) {
        p.N = opts.N;
    } else {
        double need = 2.0 * p.L * std::sqrt(setup.E0) / (2.0 * kPi * rect.h / 10.0);
        p.N = static_cast<int>(std::ceil(need * opts.oversample));
        p.N = std::min(p.N, std::max(opts.max_N, static_cast<int>(std::ceil(need))));
    }
    if (p.N % 2 != 0) ++p.N;
    return p;
}

std::vector<cplx> solve_in_rect(const ProblemSetup& setup, const EnergyRectangle& rect,
                                const Distortion& dist, int N, double L,
                                std::vector<cplx>* all = nullptr) {
    DiscretizedOperator op = assemble_ptheta(setup, rect.h, dist, N, L);
    std::vector<cplx> ev = eigenvalues_dense(op.matrix);
    std::vector<cplx> in;
    for (cplx e : ev)
        if (rect.contains(e)) in.push_back(e);
    if (all) *all = std::move(ev);
    return in;
}

} // namespace

std::vector<cplx> SpectralResonances::stable() const {
    std::vector<cplx> out;
    for (const auto& e : eigenvalues)
        if (e.stable) out.push_back(e.E);
    return out;
}

SpectralResonances resonances_spectral(const ProblemSetup& setup,
                                       const EnergyRectangle& rect,
                                       const SpectralOptions& opts) {
    SolveParams p = resolve_params(setup, rect, opts);
    Distortion dist = build_distortion(setup.R0, p.theta, setup.theta0);
    Distortion dist_up = build_distortion(setup.R0, 1.25 * p.theta, setup.theta0);
    int N_fine = static_cast<int>(std::lround(1.5 * p.N));
    if (N_fine % 2 != 0) ++N_fine;

    std::vector<cplx> base = solve_in_rect(setup, rect, dist, p.N, p.L);
    std::vector<cplx> theta_up = solve_in_rect(setup, rect, dist_up, p.N, p.L);
    std::vector<cplx> fine = solve_in_rect(setup, rect, dist, N_fine, p.L);

    auto nearest = [](cplx e, const std::vector<cplx>& set, cplx* who = nullptr) {
        double best = 1e300;
        for (cplx f : set)
            if (std::abs(e - f) < best) {
                best = std::abs(e - f);
                if (who) *who = f;
            }
        return best;
    };

    SpectralResonances out;
    out.theta_used = p.theta;
    out.N_used = p.N;
    out.L_used = p.L;
    const double rfac = std::pow(1.5, 4); // 4th-order scheme, ratio 1.5
    for (cplx e : base) {
        SpectralEigenvalue se;
        se.E_base = e;
        se.theta_shift = nearest(e, theta_up);
        cplx ef = e;
        se.grid_shift = nearest(e, fine, &ef);
        se.stable = se.theta_shift < std::max(1e-3 * rect.h, se.grid_shift);
        se.E = se.stable ? (rfac * ef - e) / (rfac - 1.0) : e;
        out.eigenvalues.push_back(se);
    }
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end(),
              [](const SpectralEigenvalue& a, const SpectralEigenvalue& b) {
                  return a.E.real() < b.E.real();
              });
    return out;
}

double resolvent_probe(const ProblemSetup& setup, cplx E, double h,
                       const EnergyRectangle& rect, const SpectralOptions& opts) {
    SolveParams p = resolve_params(setup, rect, opts);
    Distortion dist = build_distortion(setup.R0, p.theta, setup.theta0);
    DiscretizedOperator op = assemble_ptheta(setup, h, dist, p.N, p.L);
    op.matrix.diagonal().array() -= E;
    double smin = smallest_singular_value(op.matrix);
    return 1.0 / smin;
}

} // namespace crossres
