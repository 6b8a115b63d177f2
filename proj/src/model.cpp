#include "crossres/model.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "crossres/errors.hpp"

namespace crossres {

namespace {

constexpr double kPoleGuard = 0.2;   // min distance to a complex pole (in bz units)
constexpr double kScanHalf = 50.0;   // uniqueness scan interval [-50, 50]
constexpr double kScanStep = 1e-3;

double pi() { return 3.14159265358979323846; }

void check_tanh_pole(cplx w) {
    // poles of tanh at w = i(pi/2 + k pi)
    double k = std::round((w.imag() - pi() / 2) / pi());
    cplx pole(0.0, pi() / 2 + k * pi());
    if (std::abs(w - pole) < kPoleGuard) {
        std::ostringstream os;
        os << "tanh argument " << w.real() << "+" << w.imag() << "i near pole";
        throw OutsideAnalyticityDomain(os.str());
    }
}

void check_rational_pole(cplx w) {
    if (std::min(std::abs(w - cplx(0, 1)), std::abs(w + cplx(0, 1))) < kPoleGuard) {
        throw OutsideAnalyticityDomain("rational argument near pole +-i");
    }
}

} // namespace

cplx PotentialModel::eval(cplx z) const {
    if (std::abs(z.real()) > R0 && std::abs(z.imag()) > std::tan(theta0) * std::abs(z.real())) {
        throw OutsideAnalyticityDomain("argument outside the cone Sigma");
    }
    cplx v = 0.0;
    for (const Term& t : terms) {
        switch (t.kind) {
        case Term::Kind::Tanh: {
            cplx w = t.b * z;
            check_tanh_pole(w);
            v += t.a * std::tanh(w);
            break;
        }
        case Term::Kind::Rational: {
            cplx w = t.b * z;
            check_rational_pole(w);
            v += t.a / (1.0 + w * w);
            break;
        }
        case Term::Kind::Constant:
            v += t.a;
            break;
        }
    }
    return v;
}

cplx PotentialModel::deriv(cplx z) const {
    cplx v = 0.0;
    for (const Term& t : terms) {
        switch (t.kind) {
        case Term::Kind::Tanh: {
            cplx w = t.b * z;
            check_tanh_pole(w);
            cplx c = std::cosh(w);
            v += t.a * t.b / (c * c);
            break;
        }
        case Term::Kind::Rational: {
            cplx w = t.b * z;
            check_rational_pole(w);
            cplx d = 1.0 + w * w;
            v += -2.0 * t.a * t.b * w / (d * d);
            break;
        }
        case Term::Kind::Constant:
            break;
        }
    }
    return v;
}

double PotentialModel::limit_plus() const {
    double v = 0.0;
    for (const Term& t : terms) {
        if (t.kind == Term::Kind::Tanh) v += t.a * (t.b > 0 ? 1.0 : -1.0);
        if (t.kind == Term::Kind::Constant) v += t.a;
    }
    return v;
}

double PotentialModel::limit_minus() const {
    double v = 0.0;
    for (const Term& t : terms) {
        if (t.kind == Term::Kind::Tanh) v += t.a * (t.b > 0 ? -1.0 : 1.0);
        if (t.kind == Term::Kind::Constant) v += t.a;
    }
    return v;
}

PotentialModel PotentialModel::parse(const nlohmann::json& j, double theta0, double R0) {
    PotentialModel m;
    m.theta0 = theta0;
    m.R0 = R0;
    if (j.is_number()) {
        double v = j.get<double>();
        if (v != 0.0) m.terms.push_back({Term::Kind::Constant, v, 1.0});
        return m;
    }
    std::string family = j.value("family", "");
    auto params = j.value("params", nlohmann::json::object());
    double a = params.value("a", 1.0);
    double b = params.value("b", 1.0);
    double c = params.value("c", 0.0);
    if (family == "tanh") {
        m.terms.push_back({Term::Kind::Tanh, a, b});
        if (c != 0.0) m.terms.push_back({Term::Kind::Constant, c, 1.0});
    } else if (family == "rational") {
        m.terms.push_back({Term::Kind::Rational, a, b});
        if (c != 0.0) m.terms.push_back({Term::Kind::Constant, c, 1.0});
    } else if (family == "constant") {
        double v = params.contains("a") ? a : j.value("value", 0.0);
        if (v != 0.0) m.terms.push_back({Term::Kind::Constant, v, 1.0});
    } else if (family == "sum") {
        for (const auto& tj : j.at("terms")) {
            PotentialModel part = parse(tj, theta0, R0);
            m.terms.insert(m.terms.end(), part.terms.begin(), part.terms.end());
        }
    } else {
        throw UnknownFamily("'" + family + "'");
    }
    return m;
}

namespace {

// Bracketing scan + bisection for the real zeros of f on [-kScanHalf, kScanHalf].
std::vector<double> scan_zeros(const std::function<double(double)>& f) {
    std::vector<double> zeros;
    double xp = -kScanHalf;
    double fp = f(xp);
    for (double x = xp + kScanStep; x <= kScanHalf + 0.5 * kScanStep; x += kScanStep) {
        double fx = f(x);
        if (fp == 0.0) zeros.push_back(xp);
        else if (fp * fx < 0.0) {
            double lo = xp, hi = x, flo = fp;
            for (int it = 0; it < 80; ++it) {
                double mid = 0.5 * (lo + hi);
                double fm = f(mid);
                if (flo * fm <= 0.0) hi = mid;
                else { lo = mid; flo = fm; }
            }
            zeros.push_back(0.5 * (lo + hi));
        }
        xp = x;
        fp = fx;
    }
    return zeros;
}

} // namespace

ProblemSetup build_problem(const nlohmann::json& config) {
    ProblemSetup s;
    auto cone = config.value("cone", nlohmann::json::object());
    s.theta0 = cone.value("theta0", 1.2);
    s.R0 = cone.value("R0", 5.0);
    s.E0 = config.at("E0").get<double>();
    if (!(s.E0 > 0.0)) throw Error("E0 must be positive");

    s.V1 = PotentialModel::parse(config.at("V1"), s.theta0, s.R0);
    s.V2 = PotentialModel::parse(config.at("V2"), s.theta0, s.R0);
    auto cj = config.at("coupling");
    s.coupling.r0_model = PotentialModel::parse(cj.at("r0"), s.theta0, s.R0);
    s.coupling.r1_model = PotentialModel::parse(cj.at("r1"), s.theta0, s.R0);
    s.coupling.W0 = s.coupling.r0_model.eval(0.0) +
                    cplx(0, 1) * s.coupling.r1_model.eval(0.0) * std::sqrt(s.E0);

    for (int j = 1; j <= 2; ++j) {
        const PotentialModel& V = (j == 1) ? s.V1 : s.V2;
        auto zeros = scan_zeros([&](double x) { return V.eval(x).real() - s.E0; });
        if (zeros.empty())
            throw NoTurningPoint("V" + std::to_string(j) + " - E0 has no real sign change");
        if (zeros.size() > 1)
            throw MultipleTurningPoints("V" + std::to_string(j) + " - E0 has " +
                                        std::to_string(zeros.size()) + " sign changes");
        (j == 1 ? s.x1_0 : s.x2_0) = zeros.front();
    }
    s.slope1 = s.V1.deriv(0.0).real();
    s.slope2 = s.V2.deriv(0.0).real();
    return s;
}

ProblemSetup build_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config '" + path + "'");
    nlohmann::json j;
    in >> j;
    return build_problem(j);
}

bool HypothesisReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

const HypothesisCheck* HypothesisReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

HypothesisReport validate_hypotheses(const ProblemSetup& s) {
    HypothesisReport rep;
    auto add = [&](const std::string& name, bool pass, const std::string& msg) {
        rep.checks.push_back({name, pass, msg});
    };
    std::ostringstream os;
    os.precision(15);

    double far = 50.0 * s.R0;
    for (int j = 1; j <= 2; ++j) {
        const PotentialModel& V = (j == 1) ? s.V1 : s.V2;
        double mplus = V.eval(far).real(), mminus = V.eval(-far).real();
        double dplus = std::abs(mplus - V.limit_plus());
        double dminus = std::abs(mminus - V.limit_minus());
        os.str("");
        os << "measured limits (" << mminus << ", " << mplus << "), declared ("
           << V.limit_minus() << ", " << V.limit_plus() << ")";
        add("A1a-limits-V" + std::to_string(j), dplus < 1e-8 && dminus < 1e-8, os.str());
    }

    {
        double v1m = s.V1.limit_minus(), v1p = s.V1.limit_plus();
        double v2m = s.V2.limit_minus(), v2p = s.V2.limit_plus();
        bool ok = (v1m < s.E0 && s.E0 < v1p) && (v2m > s.E0 && s.E0 > v2p);
        os.str("");
        os << "v1-=" << v1m << " v1+=" << v1p << " v2-=" << v2m << " v2+=" << v2p
           << " E0=" << s.E0;
        add("A1b-ordering", ok, os.str());
    }

    for (int j = 1; j <= 2; ++j) {
        const PotentialModel& V = (j == 1) ? s.V1 : s.V2;
        auto zeros = scan_zeros([&](double x) { return V.eval(x).real() - s.E0; });
        double xj = (j == 1) ? s.x1_0 : s.x2_0;
        double slope = std::abs(V.deriv(xj));
        os.str("");
        os << zeros.size() << " zero(s) on scan, x_" << j << "=" << xj
           << ", |V'|=" << slope;
        add("A1c-unique-turning-V" + std::to_string(j),
            zeros.size() == 1 && slope > 1e-8, os.str());
    }

    {
        double v10 = std::abs(s.V1.eval(0.0));
        double v20 = std::abs(s.V2.eval(0.0));
        auto zeros = scan_zeros([&](double x) {
            return (s.V1.eval(x) - s.V2.eval(x)).real();
        });
        bool unique_crossing =
            zeros.size() == 1 && std::abs(zeros.front()) < 2.0 * kScanStep;
        bool ok = v10 < 1e-12 && v20 < 1e-12 && s.slope1 > s.slope2 && unique_crossing;
        os.str("");
        os << "V1(0)=" << v10 << " V2(0)=" << v20 << " V1'(0)=" << s.slope1
           << " V2'(0)=" << s.slope2 << " crossings=" << zeros.size();
        add("A2-crossing", ok, os.str());
    }

    {
        os.str("");
        os << "|W0|=" << std::abs(s.coupling.W0);
        add("A3-coupling", std::abs(s.coupling.W0) > 1e-12, os.str());
    }

    {
        bool ok = std::abs(s.x1_0) < s.R0 && std::abs(s.x2_0) < s.R0;
        os.str("");
        os << "x1=" << s.x1_0 << " x2=" << s.x2_0 << " R0=" << s.R0;
        add("geometry-inside-R0", ok, os.str());
    }

    return rep;
}

cplx eval_potential(const ProblemSetup& setup, int j, cplx z) {
    if (j != 1 && j != 2) throw Error("channel index must be 1 or 2");
    return (j == 1) ? setup.V1.eval(z) : setup.V2.eval(z);
}

cplx eval_potential_deriv(const ProblemSetup& setup, int j, cplx z) {
    if (j != 1 && j != 2) throw Error("channel index must be 1 or 2");
    return (j == 1) ? setup.V1.deriv(z) : setup.V2.deriv(z);
}

} // namespace crossres
