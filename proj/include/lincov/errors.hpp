#pragma once

#include <stdexcept>
#include <string>

namespace lincov {

/// Base for every error raised by the library. The CLI maps all of these to
/// exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define LINCOV_ERROR(Name)                  \
    class Name : public Error {             \
    public:                                 \
        using Error::Error;                 \
    }

LINCOV_ERROR(NonStationary);
LINCOV_ERROR(NonInvertible);
LINCOV_ERROR(DomainError);
LINCOV_ERROR(RangeError);
LINCOV_ERROR(TailUnknown);
LINCOV_ERROR(InsufficientLags);
LINCOV_ERROR(NoGeometricEnvelope);
LINCOV_ERROR(ConfigError);
LINCOV_ERROR(ParseError);

#undef LINCOV_ERROR

}  // namespace lincov
