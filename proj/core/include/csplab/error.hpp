#pragma once

#include <stdexcept>
#include <string>

namespace csplab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A variable set is not contained in the scope it was checked against.
class ScopeError : public Error {
public:
    using Error::Error;
};

/// An operation was called with its documented precondition violated.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Generator or model parameters are infeasible.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Malformed text input (problem JSON, grid, order file, trace file).
class ParseError : public Error {
public:
    using Error::Error;
};

/// A solver configuration cannot be run on the given problem.
class ConfigurationError : public Error {
public:
    using Error::Error;
};

/// The perfect-ordering advisor was asked about a path it was not built for.
class CoverageError : public Error {
public:
    using Error::Error;
};

/// Requested data was not captured (e.g. a node trace when tracing was off).
class UnavailableError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace csplab
