#pragma once

#include <stdexcept>
#include <string>

namespace faslab {

/// Malformed input: bad edge lists, bad parameters, unreadable files.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The instance exceeds an exponential-time budget; refused rather than run forever.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A checked precondition failed; the message carries the measured quantity.
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact integer arithmetic would overflow 64 bits.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// An iterative numeric routine failed to converge within its cap.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace faslab
