#pragma once

#include <stdexcept>
#include <string>

namespace ccb {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the function (elliptic amplitude,
/// profile abscissa, non-finite input, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Equilibrium equation has a vanishing denominator (vertical tangency of the
/// load path) at the given rotation.
class SingularConfiguration : public Error {
public:
    SingularConfiguration(const std::string& what, double phi)
        : Error(what), phi_(phi) {}
    double phi() const noexcept { return phi_; }

private:
    double phi_;
};

/// A load that is formally infinite or undefined (critical load at infinity,
/// zero target force, zero critical load in the effective length factor).
class DegenerateLoad : public Error {
public:
    using Error::Error;
};

class QuadratureFailure : public Error {
public:
    using Error::Error;
};

/// No sign change of a residual was found in the scanned interval.
class NoBracket : public Error {
public:
    NoBracket(const std::string& what, double lo, double hi)
        : Error(what), lo_(lo), hi_(hi) {}
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

/// The boundary-condition matrix is not singular at the requested load.
class NotCritical : public Error {
public:
    using Error::Error;
};

}  // namespace ccb
