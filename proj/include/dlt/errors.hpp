#pragma once

#include <stdexcept>
#include <string>

namespace dlt {

// Every library failure carries a stable code so callers and the CLI can switch on it.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

#define DLT_ERROR(Name)                                                  \
    struct Name : Error {                                                \
        explicit Name(const std::string& w = "") : Error(#Name, w) {}    \
    };

DLT_ERROR(ParseError)
DLT_ERROR(UnsupportedRing)
DLT_ERROR(DimensionMismatch)
DLT_ERROR(DenominatorNotInS)
DLT_ERROR(NotSymmetric)
DLT_ERROR(NotNonsingular)
DLT_ERROR(SearchBudgetExceeded)
DLT_ERROR(UnsupportedClosure)
DLT_ERROR(SingularPresentation)
DLT_ERROR(SymmetryViolation)
DLT_ERROR(DegreeRangeOverflow)
DLT_ERROR(CycleViolation)
DLT_ERROR(BoundaryMismatch)
DLT_ERROR(NotEquivalence)
DLT_ERROR(WrongDimension)
DLT_ERROR(InvalidLagrangian)
DLT_ERROR(NotSAcyclic)
DLT_ERROR(EvenDimension)
DLT_ERROR(ObstructedSurgery)
DLT_ERROR(NotAField)
DLT_ERROR(NotPoincare)
DLT_ERROR(NormalizationFailure)
DLT_ERROR(OmegaIsOne)

#undef DLT_ERROR

}  // namespace dlt
