#pragma once

#include <stdexcept>
#include <string>

namespace osa {

// Bad user-supplied parameter (maps to CLI exit code 1).
struct ParameterError : std::invalid_argument {
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Unusable input data (maps to CLI exit code 2).
struct DataError : std::runtime_error {
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// A series with no usable signal, e.g. all-zero daily changes. Callers that
// aggregate several strategies may catch this and report a warning instead
// of aborting.
struct DegenerateSeries : DataError {
    explicit DegenerateSeries(const std::string& what) : DataError(what) {}
};

// Numerical failure: non-finite gradient, eigensolver non-convergence,
// degenerate matrix (maps to CLI exit code 3).
struct NumericalFault : std::runtime_error {
    explicit NumericalFault(const std::string& what) : std::runtime_error(what) {}
};

// Violated internal precondition such as a dimension mismatch.
struct ContractViolation : std::logic_error {
    explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) throw ContractViolation(what);
}

}  // namespace detail

}  // namespace osa
