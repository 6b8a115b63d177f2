#ifndef CROSSRES_TEST_COMMON_HPP
#define CROSSRES_TEST_COMMON_HPP

#include "crossres/model.hpp"

#ifndef TANH1_CONFIG
#error "TANH1_CONFIG must point at the benchmark json"
#endif

namespace testutil {

inline const crossres::ProblemSetup& tanh1() {
    static crossres::ProblemSetup s = crossres::build_problem_file(TANH1_CONFIG);
    return s;
}

// benchmark constants, frozen from the independent oracles in tests/oracles.hpp
inline constexpr double kX1 = 0.54930614433405489;   // atanh(1/2)
inline constexpr double kS0 = 1.0044333911154615;    // S(E0)
inline constexpr double kT0 = 3.2967330891443107;    // T(E0) = S'(E0)
inline constexpr double kK = 2.2214414690791831;     // pi |W0| / ((V1'-V2') sqrt(E0))

// TANH-1 with the coupling switched off: a diagnostic configuration that
// deliberately violates the coupling hypothesis (library calls still work).
inline crossres::ProblemSetup tanh1_uncoupled() {
    crossres::ProblemSetup s = tanh1();
    s.coupling.r0_model.terms.clear();
    s.coupling.r1_model.terms.clear();
    s.coupling.W0 = 0.0;
    return s;
}

} // namespace testutil

#endif
