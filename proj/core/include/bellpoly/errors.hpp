#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bellpoly {

/// Base class for all bellpoly errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input has the wrong shape: index set mismatch, dimension mismatch,
/// wrong table layout.
class ShapeError : public Error {
public:
    using Error::Error;
};

/// A size guard was exceeded (vertex enumeration, exact-mode LP, ...).
class CapacityError : public Error {
public:
    using Error::Error;
};

/// A vector that must be unit length is not.
class NormalizationError : public Error {
public:
    using Error::Error;
};

/// A joint probability of non-commuting events was requested.
class CommutationError : public Error {
public:
    using Error::Error;
};

/// A constructed object violates its invariants (density operator,
/// projector, hidden-variable model, distribution).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A conditional probability with zero-probability condition was required
/// where a defined value is mandatory.
class UndefinedValueError : public Error {
public:
    using Error::Error;
};

/// A laboratory record row is inconsistent (conjunction bit != AND of its
/// single-event bits, bad cell value, bad header).
class MalformedRecordError : public Error {
public:
    MalformedRecordError(std::size_t row, const std::string& what)
        : Error("record row " + std::to_string(row) + ": " + what), row_(row) {}

    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

}  // namespace bellpoly
