#pragma once

#include <stdexcept>
#include <string>

namespace wavecascade {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad arguments or violated preconditions of a public operation.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// Configuration file or CLI problems.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// The fluid domain degenerates (depth below h0, or 1 + dz sigma <= 0).
class DegenerateGeometry : public Error {
public:
    DegenerateGeometry(const std::string& what, double time = 0.0)
        : Error(what), time_(time) {}
    /// Last time at which the geometry was admissible.
    double time() const { return time_; }

private:
    double time_;
};

/// An operation is not available in the requested parameter regime.
class UnsupportedRegime : public Error {
public:
    using Error::Error;
};

/// An iterative solve did not reach its tolerance.
class SolverFailure : public Error {
public:
    SolverFailure(const std::string& what, double residual, int iterations)
        : Error(what), residual_(residual), iterations_(iterations) {}
    double residual() const { return residual_; }
    int iterations() const { return iterations_; }

private:
    double residual_;
    int iterations_;
};

/// A time integration left the bounded regime.
class BlowUp : public Error {
public:
    BlowUp(const std::string& what, double time) : Error(what), time_(time) {}
    double time() const { return time_; }

private:
    double time_;
};

/// Rate fitting was impossible (too few usable points).
class NoFit : public Error {
public:
    using Error::Error;
};

}  // namespace wavecascade
