#pragma once

#include <stdexcept>
#include <string>

namespace resonance {

/// (I, tau) left the model's domain box.
class DomainError : public std::range_error {
public:
    using std::range_error::range_error;
};

/// An evaluator that divides by omega was called at (or too close to) the resonance.
class SingularityError : public std::domain_error {
public:
    SingularityError(double tau, double omega);
    double tau() const { return tau_; }
    double omega() const { return omega_; }

private:
    double tau_;
    double omega_;
};

/// Invalid run configuration or model definition.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// |omega'(tau*)| is below the non-degeneracy floor.
class DegenerateResonanceError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Adaptive quadrature did not reach the requested tolerance.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double estimate, double error_estimate);
    double estimate() const { return estimate_; }
    double error_estimate() const { return error_estimate_; }

private:
    double estimate_;
    double error_estimate_;
};

/// Reference integration left the domain or produced a non-finite state.
class TrajectoryError : public std::runtime_error {
public:
    TrajectoryError(const std::string& what, double tau, double action, double chi);
    double tau() const { return tau_; }
    double action() const { return action_; }
    double chi() const { return chi_; }

private:
    double tau_;
    double action_;
    double chi_;
};

/// Least-squares fit on data that cannot be log-transformed.
class DegenerateFitError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace resonance
