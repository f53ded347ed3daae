#pragma once

#include <stdexcept>
#include <string>

namespace halfint {

// Base class for everything this library throws on contract violations.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define HALFINT_ERROR_TYPE(NAME)                                        \
    struct NAME : Error {                                               \
        explicit NAME(const std::string& what) : Error(#NAME ": " + what) {} \
    }

HALFINT_ERROR_TYPE(UnsupportedField);
HALFINT_ERROR_TYPE(DomainError);
HALFINT_ERROR_TYPE(NotTotallyPositive);
HALFINT_ERROR_TYPE(InvalidTau);
HALFINT_ERROR_TYPE(MissingEntry);
HALFINT_ERROR_TYPE(IncompleteTable);
HALFINT_ERROR_TYPE(IncompleteSeed);
HALFINT_ERROR_TYPE(OutOfBound);
HALFINT_ERROR_TYPE(ConvergenceDomain);
HALFINT_ERROR_TYPE(MissingMirror);
HALFINT_ERROR_TYPE(NotInUpperHalfPlane);
HALFINT_ERROR_TYPE(NoNegativeNormUnit);
HALFINT_ERROR_TYPE(SquareInput);
HALFINT_ERROR_TYPE(AllZeroOnSqfree);
HALFINT_ERROR_TYPE(ParseError);

#undef HALFINT_ERROR_TYPE

}  // namespace halfint
