#pragma once

#include <stdexcept>
#include <string>

namespace ovlab {

// Input outside an operation's documented domain (bad tau, q <= 0, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Adaptive quadrature stopped before reaching the requested tolerance.
// Carries the best estimate so callers can decide whether it is usable.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double best_estimate, double error_bound)
        : std::runtime_error(what + " (best estimate " + std::to_string(best_estimate) +
                             ", error bound " + std::to_string(error_bound) + ")"),
          best_estimate_(best_estimate),
          error_bound_(error_bound) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double best_estimate_;
    double error_bound_;
};

}  // namespace ovlab
