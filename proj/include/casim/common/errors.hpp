#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace casim {

/// Base class for all error conditions raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A flow integration produced a non-finite derivative. Carries the last
/// valid state and the time at which it was reached.
class DivergenceError : public Error {
public:
    DivergenceError(double time, std::vector<double> state)
        : Error("divergent trajectory at t=" + std::to_string(time)),
          time_(time), last_state_(std::move(state)) {}

    double time() const { return time_; }
    const std::vector<double>& last_state() const { return last_state_; }

private:
    double time_;
    std::vector<double> last_state_;
};

/// Two trajectories cannot be compared without resampling (different dt
/// or different lengths).
class ResamplingError : public Error {
public:
    explicit ResamplingError(const std::string& what) : Error(what) {}
};

/// A referenced entity (node, edge, line, player, catalog row) does not exist.
class NotFoundError : public Error {
public:
    explicit NotFoundError(const std::string& what) : Error(what) {}
};

/// An action was requested that the target state does not admit.
class InvalidActionError : public Error {
public:
    explicit InvalidActionError(const std::string& what) : Error(what) {}
};

/// Embedded data failed its checksum.
class IntegrityError : public Error {
public:
    explicit IntegrityError(const std::string& what) : Error(what) {}
};

/// An exhaustive enumeration would exceed the configured budget.
class BudgetExceededError : public Error {
public:
    explicit BudgetExceededError(const std::string& what) : Error(what) {}
};

/// Configuration file is malformed or fails validation.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace casim
