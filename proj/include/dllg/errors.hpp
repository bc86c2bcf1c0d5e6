#ifndef DLLG_ERRORS_HPP
#define DLLG_ERRORS_HPP

#include <stdexcept>

namespace dllg {

// Base class of every error thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument hit a pole of the evaluated function or of an operator prefactor.
struct PoleError : Error { using Error::Error; };

// A real-valued result was requested on or beyond the branch cut.
struct BranchCutError : Error { using Error::Error; };

// A series failed to satisfy its stopping rule within the term budget.
struct ConvergenceError : Error { using Error::Error; };

// Argument outside the operation's domain.
struct DomainError : Error { using Error::Error; };

// Floating-point or linear-algebra breakdown (failed decomposition,
// non-finite intermediate).
struct NumericalError : Error { using Error::Error; };

// Integrator step-size or stability constraint violated.
struct StepError : Error { using Error::Error; };

// Configuration text is not valid JSON.
struct ParseError : Error { using Error::Error; };

// Configuration is well-formed but violates a schema constraint.
struct ValidationError : Error { using Error::Error; };

// Filesystem failure while writing an artifact.
struct IoError : Error { using Error::Error; };

} // namespace dllg

#endif // DLLG_ERRORS_HPP
