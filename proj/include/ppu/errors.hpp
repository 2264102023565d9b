#pragma once

#include <stdexcept>
#include <string>

namespace ppu {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or mismatched input: bad dimensions, non-finite entries, bad JSON.
class InputError : public Error {
public:
    using Error::Error;
};

/// A numerical procedure did not behave as the algebra guarantees
/// (rank collapse, stalled peel, disagreeing certificates).
class NumericalError : public Error {
public:
    using Error::Error;
};

/// An operand failed certification (not in X(A'), not paraunitary, ...).
class InvalidOperand : public Error {
public:
    using Error::Error;
};

}  // namespace ppu
