#include "crossres/quantization.hpp"

#include <algorithm>
#include <cmath>

#include "crossres/errors.hpp"

namespace crossres {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double EnergyRectangle::log_scale() const { return h * std::log(1.0 / h); }
double EnergyRectangle::half_width() const { return r * log_scale(); }
double EnergyRectangle::depth() const { return M * log_scale(); }

bool EnergyRectangle::contains(cplx E, double margin) const {
    // margin shrinks the two lateral sides and the bottom; the top edge stays
    // at Im E = 0 (roots accumulate just below the real axis)
    return std::abs(E.real() - E0) <= half_width() - margin &&
           E.imag() >= -depth() + margin && E.imag() <= 0.0;
}

double coupling_constant_K(const ProblemSetup& setup) {
    return kPi * std::abs(setup.coupling.W0) /
           ((setup.slope1 - setup.slope2) * std::sqrt(setup.E0));
}

cplx c0(const ProblemSetup& setup, cplx E, double h) {
    cplx S = action_S(setup, E);
    return cplx(0, 1) * h * std::exp(cplx(0, 1) * S / h) * kPi * setup.coupling.W0 /
           ((setup.slope1 - setup.slope2) * std::sqrt(setup.E0));
}

cplx c0_prime(const ProblemSetup& setup, cplx E, double h) {
    ActionData d = action_data(setup, E);
    cplx c = cplx(0, 1) * h * std::exp(cplx(0, 1) * d.S / h) * kPi * setup.coupling.W0 /
             ((setup.slope1 - setup.slope2) * std::sqrt(setup.E0));
    return cplx(0, 1) * d.S_prime / h * c;
}

cplx quantization_target(const ProblemSetup& setup, double h, long n) {
    double K = coupling_constant_K(setup);
    double argW0 = std::arg(setup.coupling.W0);
    double re = h * ((2.0 * n - 0.5) * kPi - argW0);
    double im = h * std::log(h * K);
    return cplx(re, im);
}

std::vector<PseudoResonance> pseudo_resonances(const ProblemSetup& setup,
                                               const EnergyRectangle& rect) {
    const double h = rect.h;
    if (!(h > 0.0 && h < 1.0)) throw Error("h must lie in (0,1)");
    const double argW0 = std::arg(setup.coupling.W0);
    const double hw = rect.half_width();

    // Sample Re S across the (clamped) real window; used both to enumerate the
    // index range and to seed Newton by inverse interpolation. Energies where
    // the turning points or the action are not resolvable are skipped.
    struct Sample { double E; cplx S; cplx T; };
    std::vector<Sample> table;
    const int nsamp = 17;
    for (int i = 0; i < nsamp; ++i) {
        double E = rect.E0 - hw + 2.0 * hw * i / (nsamp - 1);
        try {
            ActionData d = action_data(setup, E);
            table.push_back({E, d.S, d.S_prime});
        } catch (const Error&) {
            // outside the admissible energy range; shrink the window
        }
    }
    if (table.empty()) return {};

    double remin = 1e300, remax = -1e300;
    for (const auto& s : table) {
        remin = std::min(remin, s.S.real());
        remax = std::max(remax, s.S.real());
    }
    // index n such that Re target = h((2n - 1/2)pi - argW0)
    long nlo = (long)std::floor((remin / h + argW0) / (2.0 * kPi) + 0.25) - 1;
    long nhi = (long)std::ceil((remax / h + argW0) / (2.0 * kPi) + 0.25) + 1;

    std::vector<PseudoResonance> roots;
    for (long n = nlo; n <= nhi; ++n) {
        cplx tgt = quantization_target(setup, h, n);

        // seed: inverse-interpolate the Re S table, then shift by the Im target
        double re_tgt = tgt.real();
        size_t k = 0;
        while (k + 2 < table.size() && table[k + 1].S.real() < re_tgt) ++k;
        const Sample& s0 = table[k];
        cplx E = s0.E + (tgt - s0.S) / s0.T;

        bool converged = false;
        int iters = 0;
        cplx F = 0.0;
        try {
            double best = 1e300;
            cplx bestE = E;
            for (iters = 0; iters < 50; ++iters) {
                ActionData d = action_data(setup, E);
                F = d.S - tgt;
                if (std::abs(F) < best) {
                    best = std::abs(F);
                    bestE = E;
                }
                if (std::abs(F) < std::max(1e-13 * h, 5e-15)) {
                    converged = true;
                    break;
                }
                E -= F / d.S_prime;
            }
            E = converged ? E : bestE;
            if (!converged && best < std::max(1e-13 * h, 5e-15)) converged = true;
        } catch (const Error&) {
            continue; // skipped, as logged by the enumeration contract
        }
        if (!converged) continue;
        if (!rect.contains(E)) continue;

        PseudoResonance pr;
        pr.E = E;
        pr.n = n;
        pr.newton_iters = iters;
        pr.residual = std::abs(c0(setup, E, h) - 1.0);
        if (pr.residual >= 1e-10) continue;
        roots.push_back(pr);
    }

    std::sort(roots.begin(), roots.end(),
              [](const PseudoResonance& a, const PseudoResonance& b) {
                  return a.E.real() < b.E.real();
              });
    // drop duplicates closer than h/10 (distinct n converging to one root)
    std::vector<PseudoResonance> out;
    for (const auto& r : roots) {
        if (!out.empty() && std::abs(r.E - out.back().E) < h / 10.0) continue;
        out.push_back(r);
    }
    return out;
}

cplx width_estimate(const ProblemSetup& setup, double h) {
    cplx T = period_T(setup, setup.E0);
    return cplx(0.0, -h * std::log(1.0 / h) / T.real());
}

} // namespace crossres
