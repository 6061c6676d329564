#pragma once

#include <stdexcept>
#include <string>

namespace qsearch {

// Numerical failures map to exit code 2 in the CLI; I/O failures to 3.
// Precondition violations throw std::invalid_argument (usage, exit code 1).

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Leading eigenvalue (or the two lowest search eigenvalues) degenerate beyond
// tolerance; on adjacency matrices this signals a disconnected graph.
struct DegenerateEigenvalueError : NumericalError {
    using NumericalError::NumericalError;
};

// No sign change of the overlap-balance function in the gamma scan window.
struct BracketFailureError : NumericalError {
    using NumericalError::NumericalError;
};

// P(t) maximum stuck at the scan window edge after one doubling.
struct WindowEdgeError : NumericalError {
    using NumericalError::NumericalError;
};

// Shortest-path based measure hit an unreachable node.
struct InfiniteDistanceError : NumericalError {
    using NumericalError::NumericalError;
};

// Linear system for first-passage times is singular (disconnected graph).
struct SingularSystemError : NumericalError {
    using NumericalError::NumericalError;
};

// A mixture component collapsed (sigma below threshold) in every restart.
struct DegenerateComponentError : NumericalError {
    using NumericalError::NumericalError;
};

// Zero variance where a correlation or fit needs spread.
struct DegenerateVarianceError : NumericalError {
    using NumericalError::NumericalError;
};

// Too few samples/points for the requested fit.
struct InsufficientDataError : NumericalError {
    using NumericalError::NumericalError;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qsearch
