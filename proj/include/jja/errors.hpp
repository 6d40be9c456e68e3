#pragma once

#include <stdexcept>

namespace jja {

/// A call broke its contract (mismatched spaces, wrong operator kind, ...).
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

/// The requested computation exceeds the configured resource budget.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An iterative solver failed to reach its tolerance.
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The operation is deliberately not provided for these inputs.
struct UnsupportedError : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace jja
