#pragma once

#include <stdexcept>
#include <string>

namespace slip {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument or violated precondition (CLI exit code 2).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Leg length dropped below the guard threshold; the model is invalid there.
/// Carries the last state accepted before the failing evaluation.
class SingularityError : public Error {
public:
    SingularityError(const std::string& msg, double t_last,
                     double theta, double theta_dot, double length, double length_dot)
        : Error(msg), t_last(t_last), theta(theta), theta_dot(theta_dot),
          length(length), length_dot(length_dot) {}

    double t_last;
    double theta, theta_dot, length, length_dot;
};

/// Step or iteration budget exhausted.
class BudgetError : public Error {
public:
    using Error::Error;
};

/// Event function never crossed in the requested direction before t_max.
class EventNotFoundError : public Error {
public:
    using Error::Error;
};

/// Root iteration stalled or diverged; message carries diagnostics.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

}  // namespace slip
