#pragma once

#include <stdexcept>
#include <string>

namespace rho {

/// Malformed input text or file (CLI exit code 2).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An operation was called on data that violates its precondition (exit code 3).
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A computed object failed a self-check that should hold by construction (exit code 4).
class ConsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace rho
