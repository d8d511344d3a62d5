#ifndef NODAL_ERRORS_HPP
#define NODAL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nodal {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define NODAL_DEFINE_ERROR(Name)                                   \
    struct Name : Error {                                          \
        explicit Name(const std::string& what) : Error(what) {}    \
    }

NODAL_DEFINE_ERROR(ParseError);
NODAL_DEFINE_ERROR(InvalidGraph);
NODAL_DEFINE_ERROR(InvalidCover);
NODAL_DEFINE_ERROR(DimensionMismatch);
NODAL_DEFINE_ERROR(NumericalFailure);
NODAL_DEFINE_ERROR(PairingFailure);
NODAL_DEFINE_ERROR(GapTooSmall);
NODAL_DEFINE_ERROR(DegenerateEigenvalue);
NODAL_DEFINE_ERROR(DegenerateBase);
NODAL_DEFINE_ERROR(UnresolvedMultiplicity);
NODAL_DEFINE_ERROR(NoStabilization);
NODAL_DEFINE_ERROR(OutOfRange);
NODAL_DEFINE_ERROR(FullDegreeMissing);
NODAL_DEFINE_ERROR(PositivityViolation);
NODAL_DEFINE_ERROR(SearchExhausted);
NODAL_DEFINE_ERROR(ParameterSearchFailed);
NODAL_DEFINE_ERROR(SingularMatrix);
NODAL_DEFINE_ERROR(WrongGraph);
NODAL_DEFINE_ERROR(PreconditionFailed);
NODAL_DEFINE_ERROR(NotAnEigenvector);
NODAL_DEFINE_ERROR(VanishingEntry);
NODAL_DEFINE_ERROR(NewtonStalled);

#undef NODAL_DEFINE_ERROR

} // namespace nodal

#endif
