#pragma once

#include <stdexcept>
#include <string>

namespace atse {

// Error taxonomy used across the library. The CLI maps these to exit codes:
// data-shaped problems (FormatError, ValueError, AlignmentError) -> 2,
// everything else that escapes -> 3.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text (bad header, ragged rows, unparsable cells).
class FormatError : public Error {
public:
    using Error::Error;
};

// Structurally valid input with an out-of-domain value.
class ValueError : public Error {
public:
    using Error::Error;
};

// Series that cannot be aligned (disjoint month ranges, gaps).
class AlignmentError : public Error {
public:
    using Error::Error;
};

// Caller passed an argument violating a precondition.
class ParameterError : public Error {
public:
    using Error::Error;
};

// Vector/matrix dimension mismatch.
class ShapeError : public Error {
public:
    using Error::Error;
};

// Not enough past observations to perform the requested operation.
class InsufficientHistoryError : public Error {
public:
    using Error::Error;
};

// predict/observe called out of order on the streaming estimator.
class ProtocolError : public Error {
public:
    using Error::Error;
};

}  // namespace atse
