#ifndef CROSSRES_ERRORS_HPP
#define CROSSRES_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace crossres {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define CROSSRES_ERROR(NAME)                                      \
    struct NAME : Error {                                         \
        explicit NAME(const std::string& msg) : Error(#NAME ": " + msg) {} \
    }

CROSSRES_ERROR(UnknownFamily);
CROSSRES_ERROR(NoTurningPoint);
CROSSRES_ERROR(MultipleTurningPoints);
CROSSRES_ERROR(OutsideAnalyticityDomain);
CROSSRES_ERROR(NewtonDiverged);
CROSSRES_ERROR(DegenerateSlope);
CROSSRES_ERROR(BranchAmbiguity);
CROSSRES_ERROR(IntegrationFailure);
CROSSRES_ERROR(EvaluationOutsideValidInterval);
CROSSRES_ERROR(IntegrationOverflow);
CROSSRES_ERROR(NoRootInBracket);
CROSSRES_ERROR(GridTooCoarse);
CROSSRES_ERROR(ConeViolation);
CROSSRES_ERROR(InvalidAngle);
CROSSRES_ERROR(EigenSolverFailure);

#undef CROSSRES_ERROR

} // namespace crossres

#endif
