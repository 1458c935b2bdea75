#pragma once

// Gram (meander) matrices over link-pattern bases, with symbolic entries in
// the loop weights, numeric evaluation, direct determinants, and Gram-kernel
// ranks.

#include <complex>
#include <variant>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "slecg/errors.hpp"
#include "slecg/patterns.hpp"
#include "slecg/poly.hpp"

namespace slecg {

// Chordal entries live in Z[delta] (b-degree 0); affine entries in Z[a, b].
struct GramMatrix {
    int n = 0;
    int m = 0;
    bool affine = false;
    std::vector<LinkPattern> basis;
    std::vector<AffineLinkPattern> affine_basis;
    std::vector<std::vector<Poly>> entries;

    int size() const { return static_cast<int>(entries.size()); }

    Eigen::MatrixXd eval(double a, double b = 0.0) const {
        Eigen::MatrixXd M(size(), size());
        for (int i = 0; i < size(); ++i)
            for (int j = 0; j < size(); ++j) M(i, j) = entries[i][j].eval(a, b);
        return M;
    }
};

// G_{n,m}(i,j) = delta^{loops(alpha_i, alpha_j)}, 0 on defect mismatch.
inline GramMatrix gram_matrix(int n, int m) {
    GramMatrix g;
    g.n = n;
    g.m = m;
    g.basis = enumerate_chordal(n, m);
    const int d = static_cast<int>(g.basis.size());
    g.entries.assign(d, std::vector<Poly>(d));
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            auto r = glue(g.basis[i], g.basis[j]);
            Poly e = r.matched ? Poly::delta(*r.loops) : Poly(0);
            g.entries[i][j] = e;
            g.entries[j][i] = e;
        }
    }
    return g;
}

inline Eigen::MatrixXd gram_matrix_numeric(int n, int m, double delta) {
    return gram_matrix(n, m).eval(delta);
}

// Affine entries a^{n_a} b^{n_b}; a weights contractible loops, b the
// non-contractible ones.
inline GramMatrix affine_gram_matrix(int n, int m) {
    GramMatrix g;
    g.affine = true;
    g.n = n;
    g.m = m;
    g.affine_basis = enumerate_affine(n, m);
    const int d = static_cast<int>(g.affine_basis.size());
    g.entries.assign(d, std::vector<Poly>(d));
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            auto r = glue_affine(g.affine_basis[i], g.affine_basis[j]);
            Poly e = r.matched
                         ? Poly::monomial(1, r.affine_loops->first, r.affine_loops->second)
                         : Poly(0);
            g.entries[i][j] = e;
            g.entries[j][i] = e;
        }
    }
    return g;
}

inline Eigen::MatrixXd affine_gram_matrix_numeric(int n, int m, double a, double b) {
    return affine_gram_matrix(n, m).eval(a, b);
}

// Exact symbolic determinant by fraction-free elimination.
inline Poly gram_det_direct(int n, int m) { return bareiss_det(gram_matrix(n, m).entries); }
inline Poly affine_gram_det_direct(int n, int m) {
    return bareiss_det(affine_gram_matrix(n, m).entries);
}

// Numeric determinant of an evaluated Gram matrix (LU).
inline double det_numeric(const Eigen::MatrixXd& M) {
    if (M.rows() == 0) return 1.0;
    return Eigen::PartialPivLU<Eigen::MatrixXd>(M).determinant();
}

// Nullity of the Gram form at a numeric weight, by SVD with a relative
// singular-value cutoff.
constexpr double kRankTolerance = 1e-9;

inline int radical_rank(int n, int m, double delta) {
    Eigen::MatrixXd M = gram_matrix_numeric(n, m, delta);
    if (M.rows() == 0) return 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    const auto& sv = svd.singularValues();
    double cut = kRankTolerance * std::max(sv(0), 1.0);
    int nullity = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) <= cut) ++nullity;
    return nullity;
}

}  // namespace slecg
