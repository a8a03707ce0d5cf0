#pragma once

#include <stdexcept>
#include <string>

namespace tiot {

// Bad arguments: shape mismatches, weights that do not sum to one,
// parameters outside their domain. Maps to CLI exit code 1 when raised
// while parsing flags, 2 when raised by data handling.
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& msg) : std::invalid_argument(msg) {}
};

// Malformed files: ragged TSV rows, non-numeric fields, missing headers.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// A solver hit a non-finite quantity, cycled past its pivot budget, or
// otherwise could not certify its result.
class SolverFailure : public std::runtime_error {
public:
    explicit SolverFailure(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a solver exceeds an explicit deadline (used by the runtime
// benchmark, which records timed-out cells as missing).
class SolverTimeout : public SolverFailure {
public:
    explicit SolverTimeout(const std::string& msg) : SolverFailure(msg) {}
};

} // namespace tiot
