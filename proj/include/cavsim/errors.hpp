#pragma once

#include <stdexcept>
#include <string>

namespace cavsim {

// Process exit codes used by the CLI; library exceptions map onto them.
enum ExitCode : int {
    exit_ok = 0,
    exit_failure = 1,
    exit_usage = 2,
    exit_numerical = 3,
    exit_settle_window = 4,
};

/// The grid leaves too little room after the pulse for the cavity and atom
/// amplitudes to ring down below the residual tolerance.
class SettleWindowError : public std::runtime_error {
public:
    SettleWindowError(double residual, const std::string& what)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

/// NaN/overflow in an integration or a diverged iteration.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Conditional fidelity requested for a state that has been fully lost.
class UndefinedFidelityError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace cavsim
