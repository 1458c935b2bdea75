#pragma once

// kappa-derived weights: the loop fugacity n(kappa), the unit-modulus q with
// q + 1/q = delta, and q-integers with their criticality test.

#include <cmath>
#include <complex>

#include "slecg/errors.hpp"

namespace slecg {

constexpr double kPi = 3.14159265358979323846;

// delta = n(kappa) = -2 cos(4 pi / kappa). The closed boundary kappa = 8
// (delta = 0) is accepted; everything else requires kappa in (0, 8).
inline double loop_weight(double kappa) {
    if (!(kappa > 0.0 && kappa <= 8.0)) throw DomainError("loop_weight: kappa outside (0, 8]");
    return -2.0 * std::cos(4.0 * kPi / kappa);
}

// q = -exp(4 pi i / kappa), so q + 1/q = -2 cos(4 pi / kappa) = delta.
// Any unit-modulus root works; this choice is fixed for determinism.
inline std::complex<double> q_of_kappa(double kappa) {
    if (!(kappa > 0.0 && kappa < 8.0)) throw DomainError("q_of_kappa: kappa outside (0, 8)");
    return -std::exp(std::complex<double>(0.0, 4.0 * kPi / kappa));
}

// [m]_q = (q^m - q^-m) / (q - q^-1), with the two-sided limits at q = +-1.
inline std::complex<double> q_integer(int m, std::complex<double> q) {
    if (std::abs(q) == 0.0) throw DomainError("q_integer: q must be nonzero");
    if (std::abs(q - 1.0) < 1e-9) return {static_cast<double>(m), 0.0};
    if (std::abs(q + 1.0) < 1e-9) return {(m % 2 == 0 ? -m : m) * 1.0, 0.0};
    if (std::abs(std::abs(q) - 1.0) < 1e-13) {
        // unit circle: [m]_q = sin(m theta) / sin(theta), real
        double theta = std::arg(q);
        return {std::sin(m * theta) / std::sin(theta), 0.0};
    }
    std::complex<double> qm = std::pow(q, m);
    return (qm - 1.0 / qm) / (q - 1.0 / q);
}

constexpr double kCriticalTolerance = 1e-12;

inline bool is_critical(int n, int p, std::complex<double> q) {
    return std::abs(q_integer(n - 2 * p + 1, q)) < kCriticalTolerance;
}

// Bundle of all kappa-derived weights used across the library.
struct KappaWeights {
    double kappa;
    double delta;             // chordal loop weight n(kappa)
    std::complex<double> q;   // q + 1/q = delta
    double a;                 // affine contractible weight, = n(kappa)
    double b;                 // affine non-contractible weight, = 2

    explicit KappaWeights(double kappa_) : kappa(kappa_) {
        if (!(kappa > 0.0 && kappa < 8.0)) throw DomainError("KappaWeights: kappa outside (0, 8)");
        delta = loop_weight(kappa);
        q = q_of_kappa(kappa);
        a = delta;
        b = 2.0;
        if (std::abs(q + 1.0 / q - delta) > 1e-12)
            throw DomainError("KappaWeights: q consistency failure");
    }
};

}  // namespace slecg
