#pragma once

// Pure partition functions assembled by meander-matrix inversion:
// Z_beta = sum_alpha Minv(alpha, beta) J_alpha, with the boundary-condition
// dichotomy checked by scaled collapse limits. Every output here rests on
// the conjectured change of basis and is labeled accordingly.

#include <vector>

#include "slecg/cgintegral.hpp"
#include "slecg/fusion.hpp"
#include "slecg/meander.hpp"

namespace slecg {

struct ChangeOfBasis {
    Eigen::MatrixXd M;
    Eigen::MatrixXd Minv;
    std::vector<LinkPattern> basis;  // enumerate order
    double rcond = 0;
};

inline ChangeOfBasis change_of_basis(int n, int m, double kappa) {
    ChangeOfBasis cb;
    cb.basis = enumerate_chordal(n, m);
    cb.M = meander_matrix(n, m, kappa);
    auto inv = invert_matrix_guarded(cb.M, "change_of_basis");
    cb.Minv = inv.inverse;
    cb.rcond = inv.rcond;
    return cb;
}

struct PureResult {
    double value = 0;
    std::vector<double> j_vector;   // J_alpha over the basis
    std::vector<double> minv_row;   // row of M^-1 used for beta
    double residual = 0;            // |sum_a M(beta,a) Z_a - J_beta|
    double rcond = 0;
    int beta_index = -1;
    bool conjecture_based = true;
};

// Chordal pure partition function of pattern beta at one configuration.
inline PureResult pure_partition(const LinkPattern& beta, const ChordalConfig& cfg,
                                 double kappa, const QuadratureSettings& st = {}) {
    const int n = beta.n(), m = beta.m();
    PureResult out;
    if (n == 0) {
        out.value = 1.0;
        out.rcond = 1.0;
        out.beta_index = 0;
        out.j_vector = {1.0};
        out.minv_row = {1.0};
        return out;
    }
    auto cb = change_of_basis(n, m, kappa);
    const int d = static_cast<int>(cb.basis.size());
    int bi = -1;
    for (int i = 0; i < d; ++i)
        if (cb.basis[i] == beta) bi = i;
    if (bi < 0) throw DomainError("pure_partition: beta is not a basis pattern");

    Eigen::VectorXd J(d);
    for (int i = 0; i < d; ++i) J(i) = eval_J_chordal(cb.basis[i], cfg, kappa, st);
    Eigen::VectorXd Z = cb.Minv * J;  // symmetric M: row/column convention agree

    out.value = Z(bi);
    out.rcond = cb.rcond;
    out.beta_index = bi;
    out.j_vector.assign(J.data(), J.data() + d);
    for (int i = 0; i < d; ++i) out.minv_row.push_back(cb.Minv(bi, i));
    out.residual = std::abs((cb.M.row(bi) * Z)(0) - J(bi));
    return out;
}

// Radial pure partition function over the affine basis; needs every basis
// integral to be evaluable (seam arcs over marked points are not), which at
// desk scale means n = 2.
inline PureResult pure_partition_radial(const AffineLinkPattern& beta, const RadialConfig& cfg,
                                        double kappa, const QuadratureSettings& st = {}) {
    const int n = beta.n(), m = beta.m();
    auto basis = enumerate_affine(n, m);
    const int d = static_cast<int>(basis.size());
    int bi = -1;
    for (int i = 0; i < d; ++i)
        if (basis[i] == beta) bi = i;
    if (bi < 0) throw DomainError("pure_partition_radial: beta is not a basis pattern");

    Eigen::MatrixXd M = affine_meander_matrix(n, m, kappa);
    auto inv = invert_matrix_guarded(M, "pure_partition_radial");
    Eigen::VectorXd J(d);
    for (int i = 0; i < d; ++i) J(i) = eval_J_radial_affine(basis[i], cfg, kappa, st);
    Eigen::VectorXd Z = inv.inverse * J;

    PureResult out;
    out.value = Z(bi);
    out.rcond = inv.rcond;
    out.beta_index = bi;
    out.j_vector.assign(J.data(), J.data() + d);
    for (int i = 0; i < d; ++i) out.minv_row.push_back(inv.inverse(bi, i));
    out.residual = std::abs((M.row(bi) * Z)(0) - J(bi));
    return out;
}

struct AsyReport {
    bool linked = false;        // {j, j+1} in beta
    double limit = 0;           // extrapolated scaled limit of Z_beta
    double expected = 0;        // 0 or Z_{beta-hat} at the reduced points
    double error_estimate = 0;
    bool match = false;
    std::vector<double> separations;
    std::vector<double> scaled_values;
};

// Boundary-condition check: Z_beta(x) (x_{j+1} - x_j)^{6/kappa - 1} tends to
// 0 when {j, j+1} is not a link of beta and to Z_{beta-hat}(x-hat) when it
// is. (The two printed forms of the exponent agree as (6-kappa)/kappa =
// 6/kappa - 1; the n=2 closed form pins the sign used here.)
inline AsyReport verify_asy(const LinkPattern& beta, int j, double kappa,
                            const ChordalConfig& base, const FusionSchedule& sched = {},
                            const QuadratureSettings& st = {}, double rel_tol = 1e-2,
                            double abs_tol = 1e-3) {
    sched.validate();
    const int n = beta.n();
    if (j < 1 || j >= n) throw DomainError("verify_asy: j out of range");
    base.validate();
    if (static_cast<int>(base.x.size()) != n) throw DomainError("verify_asy: size mismatch");

    AsyReport rep;
    rep.linked = beta.has_link(j, j + 1);
    const double sx = 6.0 / kappa - 1.0;

    double local = base.x[j] - base.x[j - 1];
    if (j - 1 > 0) local = std::min(local, base.x[j - 1] - base.x[j - 2]);
    if (j + 1 < n) local = std::min(local, base.x[j + 1] - base.x[j]);
    double eps0 = sched.eps0_factor * local;
    for (int k = 0; k < sched.count; ++k) {
        double eps = eps0 * std::pow(sched.ratio, k);
        ChordalConfig cfg = base;
        cfg.x[j] = cfg.x[j - 1] + eps;
        auto pr = pure_partition(beta, cfg, kappa, st);
        rep.separations.push_back(eps);
        rep.scaled_values.push_back(std::pow(eps, sx) * pr.value);
    }
    FusionReport fit;
    detail::richardson(rep.scaled_values, sched.ratio, fit);
    rep.limit = fit.limit;
    rep.error_estimate = fit.error_estimate;

    if (rep.linked) {
        LinkPattern bh = remove_link(beta, j);
        ChordalConfig ch;
        ch.x = base.x;
        ch.x.erase(ch.x.begin() + (j - 1), ch.x.begin() + (j + 1));
        ch.u = base.u;
        rep.expected = pure_partition(bh, ch, kappa, st).value;
    } else {
        rep.expected = 0.0;
    }
    rep.match = std::abs(rep.limit - rep.expected) <=
                std::max(abs_tol, rel_tol * std::abs(rep.expected));
    return rep;
}

}  // namespace slecg
