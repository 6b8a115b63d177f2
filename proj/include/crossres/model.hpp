#ifndef CROSSRES_MODEL_HPP
#define CROSSRES_MODEL_HPP

#include <complex>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace crossres {

using cplx = std::complex<double>;

// Closed-form term of a potential / coupling profile. All supported kinds are
// bounded on the real line and evaluable for complex argument.
struct Term {
    enum class Kind { Tanh, Rational, Constant };
    Kind kind = Kind::Constant;
    double a = 0.0; // amplitude
    double b = 1.0; // length-scale factor (tanh(b x), 1/(1+(b x)^2))
};

// A potential (or scalar coupling profile) given as a sum of closed-form
// terms, together with the analyticity cone it is certified on.
struct PotentialModel {
    std::vector<Term> terms;
    double theta0 = 1.2; // cone half-angle (radians)
    double R0 = 5.0;     // cone inner radius

    cplx eval(cplx z) const;  // throws OutsideAnalyticityDomain near poles / outside cone
    cplx deriv(cplx z) const;
    double limit_plus() const;  // v^+ : limit along the real axis, x -> +inf
    double limit_minus() const; // v^-

    static PotentialModel parse(const nlohmann::json& j, double theta0, double R0);
};

struct CouplingModel {
    PotentialModel r0_model;
    PotentialModel r1_model;
    cplx W0; // r0(0) + i r1(0) sqrt(E0)
};

struct ProblemSetup {
    PotentialModel V1, V2;
    CouplingModel coupling;
    double E0 = 0.0;
    double x1_0 = 0.0, x2_0 = 0.0; // real turning points at E0
    double slope1 = 0.0, slope2 = 0.0; // V1'(0), V2'(0)
    double theta0 = 1.2, R0 = 5.0;
};

struct HypothesisCheck {
    std::string name;
    bool pass = false;
    std::string message;
};

struct HypothesisReport {
    std::vector<HypothesisCheck> checks;
    bool all_pass() const;
    const HypothesisCheck* find(const std::string& name) const;
};

// Instantiates the problem from a JSON config: keys V1, V2, coupling{r0,r1},
// E0, cone{theta0,R0}. Locates the real turning points by bracketing +
// bisection and stores the analytic slopes at the crossing.
ProblemSetup build_problem(const nlohmann::json& config);
ProblemSetup build_problem_file(const std::string& path);

HypothesisReport validate_hypotheses(const ProblemSetup& setup);

cplx eval_potential(const ProblemSetup& setup, int j, cplx z);
cplx eval_potential_deriv(const ProblemSetup& setup, int j, cplx z);

} // namespace crossres

#endif
