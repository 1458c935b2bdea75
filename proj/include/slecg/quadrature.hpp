#pragma once

// Quadrature primitives: Gauss-Legendre and Gauss-Jacobi rules via
// Golub-Welsch, tanh-sinh (double exponential) nodes for algebraic endpoint
// singularities, and the analytically continued beta function.

#include <cmath>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "slecg/errors.hpp"

namespace slecg {

struct QuadRule {
    std::vector<double> nodes;    // on [0, 1]
    std::vector<double> weights;
};

// Gamma-based beta, valid for negative non-integer arguments.
inline double beta_ac(double a, double b) { return std::tgamma(a) * std::tgamma(b) / std::tgamma(a + b); }

namespace detail {

// Golub-Welsch from monic three-term recurrence coefficients.
inline QuadRule golub_welsch(const std::vector<double>& diag, const std::vector<double>& sub,
                             double mu0) {
    const int n = static_cast<int>(diag.size());
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        J(i, i) = diag[i];
        if (i + 1 < n) J(i, i + 1) = J(i + 1, i) = sub[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    QuadRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        r.nodes[i] = es.eigenvalues()(i);
        double v = es.eigenvectors()(0, i);
        r.weights[i] = mu0 * v * v;
    }
    return r;
}

}  // namespace detail

// N-point Gauss-Legendre on [0, 1].
inline const QuadRule& gauss_legendre(int n) {
    static std::map<int, QuadRule> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<double> diag(n, 0.0), sub(n - 1);
    for (int k = 1; k < n; ++k) sub[k - 1] = k / std::sqrt(4.0 * k * k - 1.0);
    QuadRule r = detail::golub_welsch(diag, sub, 2.0);
    for (int i = 0; i < n; ++i) {
        r.nodes[i] = 0.5 * (r.nodes[i] + 1.0);
        r.weights[i] *= 0.5;
    }
    return cache.emplace(n, std::move(r)).first->second;
}

// N-point Gauss-Jacobi on [0, 1] for weight t^bl (1-t)^br, bl, br > -1.
inline const QuadRule& gauss_jacobi(int n, double bl, double br) {
    struct Key {
        int n;
        double bl, br;
        bool operator<(const Key& o) const {
            if (n != o.n) return n < o.n;
            if (bl != o.bl) return bl < o.bl;
            return br < o.br;
        }
    };
    static std::map<Key, QuadRule> cache;
    Key key{n, bl, br};
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    if (!(bl > -1.0) || !(br > -1.0)) throw DomainError("gauss_jacobi: exponents must be > -1");

    // recurrence for weight (1-x)^A (1+x)^B on [-1,1]; our t^bl means the
    // singularity at t=0 <-> x=-1, so A = br, B = bl.
    const double A = br, B = bl;
    const int N = n;
    std::vector<double> diag(N), sub(std::max(0, N - 1));
    double apb = A + B;
    diag[0] = (B - A) / (apb + 2.0);
    for (int k = 1; k < N; ++k) {
        double den = (2.0 * k + apb) * (2.0 * k + apb + 2.0);
        diag[k] = (B * B - A * A) / den;
    }
    for (int k = 1; k < N; ++k) {
        double e2;
        if (k == 1) {
            // the (1 + apb) factor cancels against the k=1 numerator
            e2 = 4.0 * (1.0 + A) * (1.0 + B) / ((2.0 + apb) * (2.0 + apb) * (3.0 + apb));
        } else {
            e2 = 4.0 * k * (k + A) * (k + B) * (k + apb) /
                 ((2.0 * k + apb) * (2.0 * k + apb) * (2.0 * k + apb + 1.0) *
                  (2.0 * k + apb - 1.0));
        }
        sub[k - 1] = std::sqrt(e2);
    }
    double mu0 = std::pow(2.0, apb + 1.0) * beta_ac(A + 1.0, B + 1.0);
    QuadRule r = detail::golub_welsch(diag, sub, mu0);
    // map to [0,1]: t = (x+1)/2; weight (1-x)^A (1+x)^B = 2^{A+B} (1-t)^A t^B
    for (int i = 0; i < n; ++i) {
        r.nodes[i] = 0.5 * (r.nodes[i] + 1.0);
        r.weights[i] *= std::pow(2.0, -apb - 1.0);
    }
    return cache.emplace(key, std::move(r)).first->second;
}

}  // namespace slecg
