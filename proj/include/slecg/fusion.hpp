#pragma once

// Fusion asymptotics: classify adjacent-point collapses, extrapolate the
// scaled limits lim (x_{i+1}-x_i)^{6/kappa-1} J, compare to the predicted
// diagrammatic reductions, and assemble the meander matrix from iterated
// collapse functionals.

#include <functional>
#include <string>
#include <vector>

#include "slecg/cgintegral.hpp"
#include "slecg/gram.hpp"
#include "slecg/kappa.hpp"
#include "slecg/patterns.hpp"

namespace slecg {

enum class FusionCase {
    NoEndpoint,        // neither x_i nor x_{i+1} ends a contour
    SameContour,       // {i, i+1} is a link
    OneEndpoint,       // exactly one of the pair is linked
    DistinctContours,  // linked to different partners
    ComplementArc,     // same contour, collapsed along the far side (explicit)
};

enum class Flavor { Chordal, Radial };

inline const char* fusion_case_name(FusionCase c) {
    switch (c) {
        case FusionCase::NoEndpoint: return "NO_ENDPOINT";
        case FusionCase::SameContour: return "SAME_CONTOUR";
        case FusionCase::OneEndpoint: return "ONE_ENDPOINT";
        case FusionCase::DistinctContours: return "DISTINCT_CONTOURS";
        default: return "COMPLEMENT_ARC";
    }
}

// The tag is a function of (alpha, i) alone; COMPLEMENT_ARC is a collapse
// direction, requested explicitly and never inferred.
inline FusionCase classify(const LinkPattern& alpha, int i) {
    if (i < 1 || i >= alpha.n()) throw DomainError("classify: index out of range");
    bool li = alpha.partner(i).has_value();
    bool lj = alpha.partner(i + 1).has_value();
    if (!li && !lj) return FusionCase::NoEndpoint;
    if (alpha.has_link(i, i + 1)) return FusionCase::SameContour;
    if (li && lj) return FusionCase::DistinctContours;
    return FusionCase::OneEndpoint;
}

// Reduced pattern on n-2 points after collapsing the pair (i, i+1).
inline LinkPattern reduce_pattern(const LinkPattern& alpha, int i, FusionCase c) {
    auto shift = [&](int t) { return t > i + 1 ? t - 2 : t; };
    switch (c) {
        case FusionCase::NoEndpoint: {
            std::vector<Link> ls;
            for (const auto& l : alpha.links()) ls.push_back({shift(l.first), shift(l.second)});
            return LinkPattern(alpha.n() - 2, std::move(ls));
        }
        case FusionCase::SameContour:
        case FusionCase::ComplementArc:
            return remove_link(alpha, i);
        case FusionCase::OneEndpoint: {
            // drop the link ending at the pair; its partner becomes a defect
            int linked = alpha.partner(i) ? i : i + 1;
            int w = *alpha.partner(linked);
            std::vector<Link> ls;
            for (const auto& l : alpha.links()) {
                if (l == Link{std::min(w, linked), std::max(w, linked)}) continue;
                ls.push_back({shift(l.first), shift(l.second)});
            }
            return LinkPattern(alpha.n() - 2, std::move(ls));
        }
        default: {  // DistinctContours: join the two partners
            int w = *alpha.partner(i);
            int v = *alpha.partner(i + 1);
            std::vector<Link> ls;
            for (const auto& l : alpha.links()) {
                if (l.first == i || l.second == i || l.first == i + 1 || l.second == i + 1)
                    continue;
                ls.push_back({shift(l.first), shift(l.second)});
            }
            ls.push_back({std::min(shift(w), shift(v)), std::max(shift(w), shift(v))});
            return LinkPattern(alpha.n() - 2, std::move(ls));
        }
    }
}

// Reduced pattern for the complementary-arc collapse of the link {1, n}.
inline LinkPattern reduce_pattern_boundary(const LinkPattern& alpha) {
    if (!alpha.has_link(1, alpha.n()))
        throw PlanError("complement collapse needs the boundary link {1, n}");
    std::vector<Link> ls;
    for (const auto& l : alpha.links()) {
        if (l == Link{1, alpha.n()}) continue;
        ls.push_back({l.first - 1, l.second - 1});
    }
    return LinkPattern(alpha.n() - 2, std::move(ls));
}

struct FusionSchedule {
    double eps0_factor = 0.1;  // epsilon_0 = factor * local gap
    double ratio = 0.5;
    int count = 8;

    void validate() const {
        if (!(eps0_factor > 0.0 && eps0_factor < 1.0) || !(ratio > 0.0 && ratio < 1.0) ||
            count < 3)
            throw DomainError("FusionSchedule: need eps0, ratio in (0,1) and count >= 3");
    }
};

struct FusionReport {
    FusionCase kase = FusionCase::NoEndpoint;
    Flavor flavor = Flavor::Chordal;
    double scaling_exponent = 0;        // 6/kappa - 1
    std::vector<double> separations;    // eps_k (1/(2R_k) for complement)
    std::vector<double> scaled_values;  // s_k
    double limit = 0;
    double error_estimate = 0;
    double fitted_exponent = 0;  // correction (or decay) power
    double predicted = 0;
    std::string predicted_source;
    bool match = false;
    bool warning = false;  // non-monotone residuals: extrapolation unreliable
};

namespace detail {

// three-point Richardson with the correction exponent fitted from the data
inline void richardson(const std::vector<double>& s, double ratio, FusionReport& rep) {
    const int K = static_cast<int>(s.size());
    auto level = [&](int k) {
        double d1 = s[k] - s[k + 1];
        double d2 = s[k + 1] - s[k + 2];
        if (d2 == 0.0 || d1 * d2 <= 0.0) {
            // differences died out or alternate: take the plain tail value
            return std::pair<double, double>{s[k + 2], 0.0};
        }
        double p = std::log(d1 / d2) / std::log(1.0 / ratio);
        double q = std::pow(ratio, p);
        double L = s[k + 2] - d2 * q / (1.0 - q);
        return std::pair<double, double>{L, p};
    };
    auto [L2, p2] = level(K - 3);
    auto [L1, p1] = level(K - 4 >= 0 ? K - 4 : K - 3);
    rep.limit = L2;
    rep.fitted_exponent = p2;
    rep.error_estimate = std::abs(L2 - L1);
    (void)p1;
    // monotonicity of the residual chain
    rep.warning = false;
    for (int k = 0; k + 2 < K; ++k) {
        double d1 = std::abs(s[k] - s[k + 1]);
        double d2 = std::abs(s[k + 1] - s[k + 2]);
        if (d2 > d1 * 1.2) rep.warning = true;
    }
}

}  // namespace detail

// Scaled collapse limit of J as x_{i+1} -> x_i, by geometric schedule and
// fitted-exponent Richardson extrapolation. The complement flag collapses
// the boundary link {1, n} through the far side (x_1 -> -R, x_n -> +R).
inline FusionReport fusion_limit(const LinkPattern& alpha, const std::vector<double>& x,
                                 int i, double kappa, Flavor flavor,
                                 std::optional<Complex> z = std::nullopt,
                                 const FusionSchedule& sched = {},
                                 const QuadratureSettings& settings = {},
                                 bool complement = false) {
    sched.validate();
    const int n = alpha.n();
    if (static_cast<int>(x.size()) != n) throw DomainError("fusion_limit: size mismatch");
    if (flavor == Flavor::Radial && !z) throw DomainError("fusion_limit: radial needs z");

    FusionReport rep;
    rep.flavor = flavor;
    rep.scaling_exponent = 6.0 / kappa - 1.0;

    auto eval = [&](const std::vector<double>& xs) {
        if (flavor == Flavor::Chordal) {
            return eval_J_chordal(alpha, {xs, std::nullopt}, kappa, settings);
        }
        return eval_J_radial(alpha, {xs, *z}, kappa, settings);
    };

    if (!complement) {
        rep.kase = classify(alpha, i);
        double local = x[i] - x[i - 1];
        if (i - 1 > 0) local = std::min(local, x[i - 1] - x[i - 2]);
        if (i + 1 < n) local = std::min(local, x[i + 1] - x[i]);
        double eps0 = sched.eps0_factor * local;
        for (int k = 0; k < sched.count; ++k) {
            double eps = eps0 * std::pow(sched.ratio, k);
            std::vector<double> xs = x;
            xs[i] = xs[i - 1] + eps;  // collapse x_{i+1} onto x_i
            rep.separations.push_back(eps);
            rep.scaled_values.push_back(std::pow(eps, rep.scaling_exponent) * eval(xs));
        }
    } else {
        rep.kase = FusionCase::ComplementArc;
        if (!alpha.has_link(1, n))
            throw PlanError("fusion_limit: complement collapse needs the link {1, n}");
        double span = x.back() - x.front();
        double R0 = 8.0 * std::max(span, 1.0);
        for (int k = 0; k < sched.count; ++k) {
            double R = R0 / std::pow(sched.ratio, k);
            std::vector<double> xs = x;
            xs.front() = -R;
            xs.back() = R;
            rep.separations.push_back(1.0 / (2.0 * R));
            rep.scaled_values.push_back(std::pow(2.0 * R, rep.scaling_exponent) * eval(xs));
        }
    }
    detail::richardson(rep.scaled_values, sched.ratio, rep);
    return rep;
}

// Paper-predicted value of the scaled limit: 0, n(k) J, J, or 2 J over the
// reduced pattern and configuration.
struct FusionPrediction {
    double value = 0;
    std::string source;
    LinkPattern reduced;
};

inline FusionPrediction expected_fusion(const LinkPattern& alpha, int i, FusionCase c,
                                        double kappa, const std::vector<double>& x,
                                        Flavor flavor, std::optional<Complex> z = std::nullopt,
                                        const QuadratureSettings& settings = {}) {
    FusionPrediction pred;
    std::vector<double> xh;
    if (c == FusionCase::ComplementArc && i == 0) {
        // boundary-link collapse: the two outermost points leave
        pred.reduced = reduce_pattern_boundary(alpha);
        xh.assign(x.begin() + 1, x.end() - 1);
    } else {
        pred.reduced = reduce_pattern(alpha, i, c);
        xh = x;
        xh.erase(xh.begin() + (i - 1), xh.begin() + (i + 1));
    }
    auto eval_reduced = [&]() {
        if (pred.reduced.n() == 0 && flavor == Flavor::Chordal) return 1.0;
        if (flavor == Flavor::Chordal)
            return eval_J_chordal(pred.reduced, {xh, std::nullopt}, kappa, settings);
        return eval_J_radial(pred.reduced, {xh, *z}, kappa, settings);
    };
    switch (c) {
        case FusionCase::NoEndpoint:
            pred.value = 0.0;
            pred.source = "0";
            break;
        case FusionCase::SameContour:
            pred.value = loop_weight(kappa) * eval_reduced();
            pred.source = "n(kappa) * J_reduced";
            break;
        case FusionCase::OneEndpoint:
            pred.value = eval_reduced();
            pred.source = "J_reduced";
            break;
        case FusionCase::DistinctContours:
            pred.value = eval_reduced();
            pred.source = "J_reduced (contours joined)";
            break;
        default:
            pred.value = 2.0 * eval_reduced();
            pred.source = "2 * J_reduced";
            break;
    }
    return pred;
}

// Full report: numerical limit next to the predicted reduction.
inline FusionReport fuse(const LinkPattern& alpha, const std::vector<double>& x, int i,
                         double kappa, Flavor flavor, std::optional<Complex> z = std::nullopt,
                         const FusionSchedule& sched = {},
                         const QuadratureSettings& settings = {}, bool complement = false,
                         double abs_tol = 1e-3, double rel_tol = 1e-2) {
    auto rep = fusion_limit(alpha, x, i, kappa, flavor, z, sched, settings, complement);
    auto pred = expected_fusion(alpha, complement ? 0 : i, rep.kase, kappa, x, flavor, z,
                                settings);
    rep.predicted = pred.value;
    rep.predicted_source = pred.source;
    rep.match = std::abs(rep.limit - rep.predicted) <=
                std::max(abs_tol, rel_tol * std::abs(rep.predicted));
    return rep;
}

// ---------------------------------------------------------------------------
// iterated collapse functionals and the meander matrix from integrals
// ---------------------------------------------------------------------------

// l_beta(J_alpha): collapse an innermost link of beta at a time, dividing
// each numerical limit by the directly evaluated reduced integral. For
// matched patterns the product telescopes to delta^{loops(alpha, beta)}.
inline double l_functional(const LinkPattern& beta, const LinkPattern& alpha, double kappa,
                           const FusionSchedule& sched = {},
                           const QuadratureSettings& settings = {}) {
    if (beta.n() != alpha.n() || beta.m() != alpha.m())
        throw DomainError("l_functional: pattern shape mismatch");
    const int n0 = alpha.n();
    LinkPattern a = alpha, b = beta;
    std::vector<double> x;
    for (int i = 0; i < n0; ++i)
        x.push_back(n0 > 1 ? static_cast<double>(i) / (n0 - 1) : 0.0);

    double value = 1.0;
    while (b.m() > 0) {
        int j = 0;
        for (int t = 1; t < a.n(); ++t) {
            if (b.has_link(t, t + 1)) {
                j = t;
                break;
            }
        }
        if (j == 0) throw DomainError("l_functional: no innermost adjacent link");
        FusionCase c = classify(a, j);
        if (c == FusionCase::NoEndpoint) return 0.0;  // defect mismatch

        auto rep = fusion_limit(a, x, j, kappa, Flavor::Chordal, std::nullopt, sched, settings);
        LinkPattern ah = reduce_pattern(a, j, c);
        std::vector<double> xh = x;
        xh.erase(xh.begin() + (j - 1), xh.begin() + (j + 1));
        double denom = 1.0;
        if (ah.n() > 0) denom = eval_J_chordal(ah, {xh, std::nullopt}, kappa, settings);
        value *= rep.limit / denom;

        a = ah;
        b = remove_link(b, j);
        // renormalize the survivors to [0, 1]; harmless by homogeneity
        if (xh.size() >= 2) {
            double lo = xh.front(), span = xh.back() - xh.front();
            for (auto& v : xh) v = (v - lo) / span;
        }
        x = xh;
    }
    return value;
}

struct MeanderCheck {
    Eigen::MatrixXd from_integrals;
    Eigen::MatrixXd exact;
    double max_deviation = 0;
    std::vector<LinkPattern> basis;
};

inline MeanderCheck meander_from_integrals(int n, int m, double kappa,
                                           const FusionSchedule& sched = {},
                                           const QuadratureSettings& settings = {}) {
    if (n > 6) throw DomainError("meander_from_integrals: desk scale is n <= 6");
    MeanderCheck out;
    out.basis = enumerate_chordal(n, m);
    const int d = static_cast<int>(out.basis.size());
    out.from_integrals.resize(d, d);
    out.exact = gram_matrix_numeric(n, m, loop_weight(kappa));
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            out.from_integrals(a, b) = l_functional(out.basis[b], out.basis[a], kappa, sched,
                                                    settings);
    out.max_deviation = (out.from_integrals - out.exact).cwiseAbs().maxCoeff();
    return out;
}

}  // namespace slecg
