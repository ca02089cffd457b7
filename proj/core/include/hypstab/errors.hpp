#pragma once

#include <stdexcept>
#include <string>

namespace hypstab {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Inconsistent or out-of-range run configuration (grids, parameters).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Lookup outside a recorded or gridded range.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Base for failures of a numerical procedure at run time.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A metric eigenvalue became nonpositive.
class PositivityLoss : public NumericalError {
public:
    PositivityLoss(int node, double time);
    int node() const noexcept { return node_; }
    double time() const noexcept { return time_; }

private:
    int node_;
    double time_;
};

/// The evolving metric left the epsilon-close neighbourhood of the background.
class ClosenessAbort : public NumericalError {
public:
    ClosenessAbort(double closeness, double threshold, double time);
    double closeness() const noexcept { return closeness_; }
    double time() const noexcept { return time_; }

private:
    double closeness_;
    double time_;
};

/// A radial map stopped being strictly increasing.
class MonotonicityLoss : public NumericalError {
public:
    MonotonicityLoss(int node, double time);
    int node() const noexcept { return node_; }
    double time() const noexcept { return time_; }

private:
    int node_;
    double time_;
};

/// Least-squares fit could not be formed (too few or nonpositive samples).
class FitError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace hypstab
