#pragma once

#include <stdexcept>
#include <string>

namespace vasrev {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dimension of two vectors, or of a vector and a system, do not match.
struct DimensionMismatch : Error {
    using Error::Error;
};

// Arithmetic between projected vectors with different sets of projected slots.
struct SlotSetMismatch : Error {
    using Error::Error;
};

// Slot index outside 1..d (user-facing) or 0..d-1 (internal).
struct IndexOutOfRange : Error {
    using Error::Error;
};

struct ArithmeticOverflow : Error {
    using Error::Error;
};

// A stated precondition of an operation does not hold.
struct PreconditionFailed : Error {
    using Error::Error;
};

// Configurable work budget exhausted (solvers, searches).
struct BudgetExceeded : Error {
    using Error::Error;
};

// Simple-cycle enumeration hit its cap.
struct CycleCapExceeded : Error {
    using Error::Error;
};

struct NoPath : Error {
    using Error::Error;
};

struct NotKirchhoff : Error {
    using Error::Error;
};

// Target vector is not in the displacement monoid of the graph.
struct NotInMonoid : Error {
    using Error::Error;
};

struct NotReversible : Error {
    using Error::Error;
};

// Cycle anchor does not match the projection of the candidate configuration.
struct AnchorMismatch : Error {
    using Error::Error;
};

// Expanding an exact bound would exceed the digit guard.
struct ValueTooLarge : Error {
    using Error::Error;
};

// A stage of the short-run pipeline failed an internal assertion.
struct PipelineError : Error {
    PipelineError(const std::string& stage, const std::string& what)
        : Error("short-run pipeline stage '" + stage + "': " + what), stage(stage) {}
    std::string stage;
};

struct ParseError : Error {
    ParseError(int line, int column, const std::string& what)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line(line),
          column(column) {}
    int line;
    int column;
};

}  // namespace vasrev
