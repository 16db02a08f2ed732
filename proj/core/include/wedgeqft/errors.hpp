#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "wedgeqft/types.hpp"

namespace wedgeqft {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class UnsupportedError : public Error {
public:
    using Error::Error;
};

class InvariantError : public Error {
public:
    using Error::Error;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

// Thrown when a Killing flow leaves the chart; carries the flow parameter
// fraction in [0,1] at which the x coordinate crosses the boundary.
class RangeError : public Error {
public:
    RangeError(const std::string& what, double exit_parameter)
        : Error(what), exit_parameter_(exit_parameter) {}
    double exit_parameter() const { return exit_parameter_; }

private:
    double exit_parameter_;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::vector<double> eps,
                     std::vector<Complex> values, double error_estimate)
        : Error(what), eps_(std::move(eps)), values_(std::move(values)),
          error_estimate_(error_estimate) {}

    const std::vector<double>& eps() const { return eps_; }
    const std::vector<Complex>& values() const { return values_; }
    double error_estimate() const { return error_estimate_; }

private:
    std::vector<double> eps_;
    std::vector<Complex> values_;
    double error_estimate_;
};

} // namespace wedgeqft
