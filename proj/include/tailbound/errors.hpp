#pragma once

#include <stdexcept>
#include <string>

namespace tailbound {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A distribution or bound parameter is outside its domain.
class InvalidParameter : public Error {
public:
    InvalidParameter(std::string parameter, const std::string& what)
        : Error("invalid parameter '" + parameter + "': " + what), parameter_(std::move(parameter)) {}
    const std::string& parameter() const noexcept { return parameter_; }

private:
    std::string parameter_;
};

/// Evaluation point outside the (open) support.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A bound's denominator vanished (|den| < 1e-300).
class SingularDenominator : public Error {
public:
    using Error::Error;
};

/// A named precondition of an operation does not hold.
class PreconditionError : public Error {
public:
    PreconditionError(std::string precondition, const std::string& what)
        : Error("precondition '" + precondition + "' violated: " + what),
          precondition_(std::move(precondition)) {}
    const std::string& precondition() const noexcept { return precondition_; }

private:
    std::string precondition_;
};

/// A closed form was evaluated outside its validity region.
class RegionError : public Error {
public:
    RegionError(double threshold, const std::string& what)
        : Error(what), threshold_(threshold) {}
    /// The violated threshold (e.g. mu, k-2, alpha/beta); NaN when the region has no single threshold.
    double threshold() const noexcept { return threshold_; }

private:
    double threshold_;
};

/// No usable upper/lower pair, or a pair evaluated where it is not valid.
class PairingError : public Error {
public:
    using Error::Error;
};

/// Ground-truth tail computation failed to converge.
class OracleError : public Error {
public:
    OracleError(const std::string& what, double best_estimate, double error_bound)
        : Error(what), best_estimate_(best_estimate), error_bound_(error_bound) {}
    double best_estimate() const noexcept { return best_estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double best_estimate_;
    double error_bound_;
};

}  // namespace tailbound
