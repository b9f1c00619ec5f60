#pragma once

#include <stdexcept>
#include <string>

namespace tricam {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Grid extent or sample count rejected by make_grid.
class InvalidExtentError : public Error {
public:
    using Error::Error;
};

// A NaN or Inf reached a public operation.
class NonFiniteError : public Error {
public:
    using Error::Error;
};

// Argument outside the operation's domain (p < 1, bad index, mismatched grids, ...).
class InvalidArgumentError : public Error {
public:
    using Error::Error;
};

// Mollifier support narrower than the grid can resolve.
class UnderResolvedError : public Error {
public:
    using Error::Error;
};

// Peakon or test-function support outside the computational box.
class OutOfDomainError : public Error {
public:
    using Error::Error;
};

// The O(n^2) oracle refuses grids above its node cap.
class SizeGuardError : public Error {
public:
    using Error::Error;
};

// Time step larger than the transport CFL bound (only when the policy is Error).
class CflViolationError : public Error {
public:
    using Error::Error;
};

// Sup norm crossed the blow-up cap or the state became non-finite mid-run.
class BlowUpError : public Error {
public:
    BlowUpError(const std::string& what, double t) : Error(what), time_(t) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

}  // namespace tricam
