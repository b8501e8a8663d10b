#ifndef HEDGEHOG_ERRORS_HPP
#define HEDGEHOG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hedgehog {

// Every failure carries a stable machine-readable kind; the CLI surfaces it
// verbatim in error responses.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

#define HEDGEHOG_DEFINE_ERROR(Name)                                       \
    class Name : public Error {                                           \
    public:                                                               \
        explicit Name(const std::string& msg) : Error(#Name, msg) {}      \
    }

HEDGEHOG_DEFINE_ERROR(FactorBoundExceeded);
HEDGEHOG_DEFINE_ERROR(ZeroElement);
HEDGEHOG_DEFINE_ERROR(InvalidElement);
HEDGEHOG_DEFINE_ERROR(UnsupportedField);
HEDGEHOG_DEFINE_ERROR(FieldMismatch);
HEDGEHOG_DEFINE_ERROR(SingularForm);
HEDGEHOG_DEFINE_ERROR(NotIsotropic);
HEDGEHOG_DEFINE_ERROR(NotIsotropicVector);
HEDGEHOG_DEFINE_ERROR(SearchExhausted);
HEDGEHOG_DEFINE_ERROR(NonSquarefreeExtension);
HEDGEHOG_DEFINE_ERROR(OddDimension);
HEDGEHOG_DEFINE_ERROR(OddCaseOnly);
HEDGEHOG_DEFINE_ERROR(NoOrthogonalVector);
HEDGEHOG_DEFINE_ERROR(DegenerateChoice);
HEDGEHOG_DEFINE_ERROR(InvalidCertificate);
HEDGEHOG_DEFINE_ERROR(DegreeTooHigh);
HEDGEHOG_DEFINE_ERROR(SchemaViolation);

#undef HEDGEHOG_DEFINE_ERROR

} // namespace hedgehog

#endif
