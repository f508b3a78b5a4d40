#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace elfscan {

// Base class for every error thrown by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad argument values: non-finite components, empty data, malformed ids.
class InvalidInputError : public Error {
public:
    using Error::Error;
};

// Field evaluation requested too close to a conductor segment.
class SingularityError : public Error {
public:
    using Error::Error;
};

// k exceeds the number of distinct data values (or k < 1).
class InfeasibleKError : public Error {
public:
    using Error::Error;
};

// Problem instance too large for the exhaustive oracle.
class SizeError : public Error {
public:
    using Error::Error;
};

// Malformed survey or model file. line() is 1-based, 0 when unknown.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
          line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_ = 0;
};

// Unrecognized measurement unit.
class UnitError : public Error {
public:
    using Error::Error;
};

// Input file contains no survey rows.
class EmptyInputError : public Error {
public:
    using Error::Error;
};

// Ill-formed safety standard (e.g. non-positive frequency).
class InvalidStandardError : public Error {
public:
    using Error::Error;
};

// Bad run configuration (CLI flags, k < 1, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

// Filesystem failures.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace elfscan
