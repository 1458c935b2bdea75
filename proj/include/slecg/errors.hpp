#pragma once

#include <stdexcept>
#include <string>

namespace slecg {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad argument ranges, violated preconditions, size mismatches.
struct DomainError : Error {
    using Error::Error;
};

// Unsupported contour geometry (marked point inside a link interval,
// complement collapse on a non-boundary link, nested plans below kappa=4).
struct PlanError : Error {
    using Error::Error;
};

// Geometric constraint violations at evaluation time (epsilon too large, ...).
struct GeometryError : Error {
    using Error::Error;
};

// Radial excited solutions need an even number of boundary points.
struct ParityError : Error {
    using Error::Error;
};

// Quadrature failed to reach the requested tolerance.
struct AccuracyError : Error {
    AccuracyError(const std::string& what, double achieved_)
        : Error(what), achieved(achieved_) {}
    double achieved;
};

// Matrix inversion refused; carries the reciprocal condition estimate.
struct SingularityError : Error {
    SingularityError(const std::string& what, double rcond_)
        : Error(what), rcond(rcond_) {}
    double rcond;
};

// The Gram determinant recursion hit a critical (n, p) pair.
struct CriticalityError : Error {
    CriticalityError(const std::string& what, int n_, int p_)
        : Error(what), n(n_), p(p_) {}
    int n;
    int p;
};

// Malformed run configuration files.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace slecg
