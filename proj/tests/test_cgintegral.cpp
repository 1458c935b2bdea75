#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "slecg/cgintegral.hpp"
#include "slecg/quadrature.hpp"

using namespace slecg;

namespace {

// closed form for the single-link ground integral at u = infinity
double j2_closed(double kappa, double x1, double x2) {
    return loop_weight(kappa) * std::pow(x2 - x1, 1.0 - 6.0 / kappa);
}

}  // namespace

TEST_CASE("charges and conformal weights") {
    auto c4 = charges(4.0);
    CHECK(std::abs(c4.a - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(c4.b) < 1e-15);
    auto c2 = charges(2.0);
    CHECK(std::abs(c2.a - 1.0) < 1e-15);
    CHECK(std::abs(c2.b + 0.5) < 1e-15);
    for (double kappa : {0.9, 3.0, 5.0, 7.5}) {
        auto c = charges(kappa);
        CHECK(std::abs(c.a * c.a * kappa - 2.0) < 1e-14);
        CHECK(std::abs(c.a * c.b - (0.5 - 2.0 / kappa)) < 1e-14);
    }
    CHECK_THROWS_AS(charges(8.0), DomainError);
    // lambda_ground matches the charge bookkeeping lambda = s^2/2 - b s
    for (double kappa : {4.7, 5.3}) {
        auto c = charges(kappa);
        for (int n = 2; n <= 5; ++n) {
            for (int m = 0; 2 * m <= n; ++m) {
                double s = 2.0 * c.b - (n - 2 * m) * c.a;
                CHECK(std::abs(c.lambda_ground_chordal(n, m) - (s * s / 2.0 - c.b * s)) < 1e-12);
            }
        }
    }
}

TEST_CASE("pochhammer_factor") {
    auto p = pochhammer_factor(-4.0 / 6.0, -4.0 / 6.0);
    CHECK(std::abs(p - Complex(3.0, 0.0)) < 1e-14);
    auto q = pochhammer_factor(-0.37, -0.37);
    CHECK(std::abs(q.imag()) < 1e-14);
    CHECK(std::abs(q.real() - 4.0 * std::pow(std::sin(kPi * 0.37), 2)) < 1e-14);
    CHECK(std::abs(pochhammer_factor(3.0, -0.37)) < 1e-13);
}

TEST_CASE("contour_plan shapes") {
    std::vector<double> x{0.0, 1.0, 2.0, 3.0};
    auto p1 = contour_plan(LinkPattern(4, {{1, 2}, {3, 4}}), x, std::nullopt, std::nullopt);
    REQUIRE(p1.contours.size() == 2);
    CHECK(p1.contours[0].kind == ContourKind::Straight);
    CHECK(p1.contours[1].kind == ContourKind::Straight);

    auto p2 = contour_plan(LinkPattern(4, {{1, 4}, {2, 3}}), x, std::nullopt, std::nullopt);
    REQUIRE(p2.contours.size() == 2);
    CHECK(p2.contours[0].kind == ContourKind::Straight);  // innermost first
    CHECK(p2.contours[0].link == Link{2, 3});
    CHECK(p2.contours[1].kind == ContourKind::Arc);
    CHECK(p2.contours[1].height > 0);

    std::vector<double> x6{0.0, 1.0, 2.0, 3.0, 4.0, 5.0};
    auto p3 = contour_plan(LinkPattern(6, {{1, 6}, {2, 5}, {3, 4}}), x6, std::nullopt,
                           std::nullopt);
    REQUIRE(p3.contours.size() == 3);
    CHECK(p3.contours[1].height < p3.contours[2].height);  // increasing outward

    CHECK_THROWS_AS(contour_plan(LinkPattern(2, {{1, 2}}), std::vector<double>{0.0, 1.0},
                                 0.5, std::nullopt),
                    PlanError);
}

TEST_CASE("closed-form single-link integral at u = infinity") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> left(-2.0, 0.0), gap(0.3, 3.0);
    LinkPattern alpha(2, {{1, 2}});
    for (double kappa : {4.5, 5.0, 6.0, 7.0}) {
        for (int t = 0; t < 5; ++t) {
            double x1 = left(rng), x2 = x1 + gap(rng);
            ChordalConfig cfg{{x1, x2}, std::nullopt};
            EvalReport rep;
            double v = eval_J_chordal(alpha, cfg, kappa, {}, &rep);
            double ref = j2_closed(kappa, x1, x2);
            CHECK(std::abs(v - ref) < 1e-8 * std::abs(ref));
            CHECK(rep.imag_residue < 1e-12);
        }
    }
    // the worked example value
    ChordalConfig c02{{0.0, 2.0}, std::nullopt};
    double v = eval_J_chordal(alpha, c02, 5.0);
    CHECK(std::abs(v - 1.40858) < 1e-5);
    CHECK(std::abs(v - 1.618033988749895 * std::pow(2.0, -0.2)) < 1e-9);
}

TEST_CASE("translation invariance at u = infinity") {
    LinkPattern alpha(4, {{1, 2}, {3, 4}});
    ChordalConfig a{{0.0, 0.7, 1.9, 3.1}, std::nullopt};
    ChordalConfig b{{5.0, 5.7, 6.9, 8.1}, std::nullopt};
    double va = eval_J_chordal(alpha, a, 5.0);
    double vb = eval_J_chordal(alpha, b, 5.0);
    CHECK(std::abs(va - vb) < 1e-8 * std::abs(va));
}

TEST_CASE("homogeneity under scaling") {
    std::vector<std::pair<int, LinkPattern>> cases = {
        {1, LinkPattern(2, {{1, 2}})},
        {1, LinkPattern(4, {{2, 3}})},
        {2, LinkPattern(4, {{1, 2}, {3, 4}})},
        {2, LinkPattern(4, {{1, 4}, {2, 3}})},
    };
    double kappa = 5.0;
    for (auto& [m, alpha] : cases) {
        int n = alpha.n();
        double D_formula = n * (n - 1) / kappa - 4.0 * m * n / kappa +
                           4.0 * m * (m - 1) / kappa + m;
        CHECK(std::abs(homogeneity_degree(n, m, kappa, false, false) - D_formula) < 1e-12);
        std::vector<double> base;
        for (int i = 0; i < n; ++i) base.push_back(0.4 * i * i + 0.3 * i - 1.0);
        for (double s : {2.0, 1.0 / 3.0}) {
            ChordalConfig c1{base, std::nullopt};
            std::vector<double> xs = base;
            for (auto& v : xs) v *= s;
            ChordalConfig c2{xs, std::nullopt};
            double v1 = eval_J_chordal(alpha, c1, kappa);
            double v2 = eval_J_chordal(alpha, c2, kappa);
            CHECK(std::abs(v2 - std::pow(s, D_formula) * v1) <
                  1e-7 * std::abs(std::pow(s, D_formula) * v1));
        }
    }
}

TEST_CASE("exchange symmetry: reversal maps J_alpha to J_mirror(alpha)") {
    double kappa = 5.5;
    std::vector<double> x{-1.3, -0.2, 0.9, 2.4};
    std::vector<double> xr;
    for (auto it = x.rbegin(); it != x.rend(); ++it) xr.push_back(-*it);
    for (const auto& alpha : enumerate_chordal(4, 2)) {
        double v = eval_J_chordal(alpha, {x, std::nullopt}, kappa);
        double vm = eval_J_chordal(alpha.mirror(), {xr, std::nullopt}, kappa);
        CHECK(std::abs(v - vm) < 1e-7 * std::abs(v));
    }
    for (const auto& alpha : enumerate_chordal(4, 1)) {
        double v = eval_J_chordal(alpha, {x, std::nullopt}, kappa);
        double vm = eval_J_chordal(alpha.mirror(), {xr, std::nullopt}, kappa);
        CHECK(std::abs(v - vm) < 1e-7 * std::abs(v));
    }
}

TEST_CASE("kappa continuity across the 4 boundary") {
    LinkPattern alpha(2, {{1, 2}});
    ChordalConfig cfg{{0.0, 1.7}, std::nullopt};
    double lo = eval_J_chordal(alpha, cfg, 4.0 - 1e-3);
    double hi = eval_J_chordal(alpha, cfg, 4.0 + 1e-3);
    CHECK(std::abs(lo - hi) < 1e-2);
    // both sides also match the closed form
    CHECK(std::abs(lo - j2_closed(4.0 - 1e-3, 0.0, 1.7)) < 1e-7);
    CHECK(std::abs(hi - j2_closed(4.0 + 1e-3, 0.0, 1.7)) < 1e-7);
}

TEST_CASE("branch contract: doubling nodes stays within the reported tolerance") {
    LinkPattern nested(4, {{1, 4}, {2, 3}});
    ChordalConfig cfg{{0.0, 0.8, 1.7, 3.0}, std::nullopt};
    QuadratureSettings st;
    st.rel_tol = 1e-8;
    EvalReport rep;
    double v = eval_J_chordal(nested, cfg, 5.0, st, &rep);
    QuadratureSettings st2 = st;
    st2.segment_nodes *= 2;
    st2.arc_nodes *= 2;
    double v2 = eval_J_chordal(nested, cfg, 5.0, st2);
    CHECK(std::abs(v - v2) <= std::max(rep.error_estimate, st.rel_tol) * std::abs(v) * 4.0);
    CHECK(rep.imag_residue < 1e-7);
}

TEST_CASE("arc equals phase-weighted straight pieces (contour deformation)") {
    // single contour over a covered point: the anchored arc value equals
    // piece(right) + e^{i pi beta} piece(left), checked through Re and |Im|
    double kappa = 5.2;
    double beta = -4.0 / kappa;
    std::vector<double> x{0.0, 0.9, 2.1};
    LinkPattern alpha(3, {{1, 3}});

    // test-local piece integrals of prod_k |u - x_k|^beta over [x0,x1], [x1,x2]
    auto piece = [&](double a, double b) {
        const auto& r = gauss_jacobi(160, beta, beta);
        double s = 0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) {
            double u = a + (b - a) * r.nodes[i];
            double rest = 1.0;
            for (double p : x)
                if (p < a || p > b) rest *= std::pow(std::abs(u - p), beta);
            s += r.weights[i] * rest;
        }
        return s * std::pow(b - a, 2.0 * beta + 1.0);
    };
    double p_left = piece(x[0], x[1]);
    double p_right = piece(x[1], x[2]);

    EvalReport rep;
    double value = eval_J_chordal(alpha, {x, std::nullopt}, kappa, {}, &rep);
    // strip the external prefactors to recover the raw contour value
    double pref = loop_weight(kappa) * std::tgamma(2.0 - 8.0 / kappa) /
                  std::pow(std::tgamma(1.0 - 4.0 / kappa), 2);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) pref *= std::pow(x[j] - x[i], 2.0 / kappa);
    double re_expect = pref * (p_right + std::cos(kPi * beta) * p_left);
    double im_expect = std::abs(pref * std::sin(kPi * beta) * p_left);
    CHECK(std::abs(value - re_expect) < 1e-6 * std::abs(re_expect));
    double im = std::abs(value) * rep.imag_residue /
                std::sqrt(1.0 - rep.imag_residue * rep.imag_residue);
    CHECK(std::abs(im - im_expect) < 1e-5 * im_expect);
}

TEST_CASE("radial reflection symmetry") {
    LinkPattern alpha(2, {{1, 2}});
    double kappa = 5.0;
    RadialConfig a{{-1.5, 0.7}, Complex(0.2, 0.9)};
    RadialConfig b{{-0.7, 1.5}, Complex(-0.2, 0.9)};
    double va = eval_J_radial(alpha, a, kappa);
    double vb = eval_J_radial(alpha, b, kappa);
    CHECK(std::abs(va - vb) < 1e-7 * std::abs(va));
}

TEST_CASE("radial scaling homogeneity") {
    LinkPattern alpha(2, {{1, 2}});
    double kappa = 5.0;
    double D = homogeneity_degree(2, 1, kappa, true, true);
    RadialConfig c1{{-1.0, 1.0}, Complex(0.1, 1.3)};
    double s = 1.7;
    RadialConfig c2{{-s, s}, Complex(0.1 * s, 1.3 * s)};
    double v1 = eval_J_radial(alpha, c1, kappa);
    double v2 = eval_J_radial(alpha, c2, kappa);
    CHECK(std::abs(v2 - std::pow(s, D) * v1) < 1e-7 * std::abs(v2));
}

TEST_CASE("radial ground value: frozen self-converged oracle") {
    LinkPattern alpha(2, {{1, 2}});
    RadialConfig cfg{{-1.0, 1.0}, Complex(0.0, 1.0)};
    EvalReport rep;
    QuadratureSettings hi;
    hi.segment_nodes = 96;
    double v = eval_J_radial(alpha, cfg, 6.0, hi, &rep);
    QuadratureSettings hi2;
    hi2.segment_nodes = 160;
    double v2 = eval_J_radial(alpha, cfg, 6.0, hi2);
    CHECK(std::abs(v - v2) < 1e-8 * std::abs(v));  // two-resolution agreement
    CHECK(std::abs(v - 1.15600522369517) < 1e-8);  // frozen self-converged value
}

TEST_CASE("ward identities, chordal n=2 finite u") {
    LinkPattern alpha(2, {{1, 2}});
    double kappa = 6.0;
    auto cs = charges(kappa);
    double lambda = cs.lambda_ground_chordal(2, 1);
    QuadratureSettings st;
    st.adaptive = false;
    st.segment_nodes = 160;
    auto f = [&](const ChordalConfig& c) { return eval_J_chordal(alpha, c, kappa, st); };
    ChordalConfig cfg{{0.0, 1.0}, 3.0};

    auto r1 = ward_residuals(f, cfg, kappa, lambda, 1e-3);
    auto r2 = ward_residuals(f, cfg, kappa, lambda, 5e-4);
    double scale = std::abs(f(cfg));
    CHECK(std::abs(r1.translation) < 1e-4 * scale);
    CHECK(std::abs(r1.dilation) < 1e-4 * scale);
    CHECK(std::abs(r1.special) < 1e-4 * scale);
    // second-order decay: halving h shrinks residuals by about 4
    for (auto [a, b] : {std::pair{r1.translation, r2.translation},
                        std::pair{r1.dilation, r2.dilation},
                        std::pair{r1.special, r2.special}}) {
        if (std::abs(a) > 1e-12 * scale) {
            double ratio = std::abs(a / b);
            CHECK(ratio > 2.5);
            CHECK(ratio < 6.0);
        }
    }

    // perturbing lambda leaves translation alone, breaks dilation/special
    auto rp = ward_residuals(f, cfg, kappa, lambda + 0.1, 1e-3);
    CHECK(std::abs(rp.translation - r1.translation) < 1e-12 * scale);
    CHECK(std::abs(rp.dilation) > 1e-3 * scale);
    CHECK(std::abs(rp.special) > 1e-3 * scale);
}

TEST_CASE("null-vector residual, chordal n=2 kappa=5") {
    LinkPattern alpha(2, {{1, 2}});
    double kappa = 5.0;
    auto cs = charges(kappa);
    double lambda = cs.lambda_ground_chordal(2, 1);
    QuadratureSettings st;
    st.adaptive = false;
    st.segment_nodes = 200;
    auto f = [&](const ChordalConfig& c) { return eval_J_chordal(alpha, c, kappa, st); };
    ChordalConfig cfg{{0.0, 1.0}, 3.0};
    double scale = std::abs(f(cfg));

    double r = nullvector_residual(f, cfg, kappa, lambda, 1, 1e-3);
    CHECK(std::abs(r) < 1e-3 * scale);
    double r2 = nullvector_residual(f, cfg, kappa, lambda, 1, 5e-4);
    if (std::abs(r) > 1e-10 * scale) {
        double ratio = std::abs(r / r2);
        CHECK(ratio > 2.5);
        CHECK(ratio < 6.5);
    }

    // sensitivity: perturbing the pairwise exponent inflates the residual
    auto fp = [&](const ChordalConfig& c) {
        return detail::eval_J_chordal_perturbed(alpha, c, kappa, 0.05, st);
    };
    double rp = nullvector_residual(fp, cfg, kappa, lambda, 1, 1e-3);
    CHECK(std::abs(rp) > 10.0 * std::abs(r));
}

TEST_CASE("excited chordal: the circle residue vanishes identically") {
    // With the neutralized charges all zeta exponents are integers, the
    // circle integral is a plain residue, and integration by parts in each
    // screening variable kills it: 2(1+beta) + (e_uU - 2) = -8/k + 8/k = 0.
    // The chordal excited value is therefore an exact zero; epsilon
    // independence and node stability hold at the quadrature noise floor.
    LinkPattern alpha(2, {{1, 2}});
    ChordalConfig cfg{{0.0, 1.0}, 3.0};
    double kappa = 5.0;
    EvalReport r1, r2;
    double k1 = eval_K_chordal(alpha, cfg, kappa, 0.5, {}, &r1);
    double k2 = eval_K_chordal(alpha, cfg, kappa, 0.25, {}, &r2);
    double floor = 1e-10 * std::max(r1.magnitude, r2.magnitude);
    CHECK(std::abs(k1) < floor);
    CHECK(std::abs(k1 - k2) < 1e-6 * std::max(std::abs(k1), floor));

    QuadratureSettings st;
    st.adaptive = false;
    st.circle_nodes = 32;
    EvalReport ra;
    double a1 = eval_K_chordal(alpha, cfg, kappa, 0.5, st, &ra);
    st.circle_nodes = 64;
    double a2 = eval_K_chordal(alpha, cfg, kappa, 0.5, st);
    CHECK(std::abs(a1 - a2) < std::max(1e-8 * std::abs(a1), 1e-12 * ra.magnitude));

    CHECK_THROWS_AS(eval_K_chordal(alpha, cfg, kappa, 1.5), GeometryError);
    ChordalConfig no_u{{0.0, 1.0}, std::nullopt};
    CHECK_THROWS_AS(eval_K_chordal(alpha, no_u, kappa, 0.2), DomainError);

    // the same cancellation at a second (n, m) and marked point
    ChordalConfig c4{{0.0, 0.7, 1.9, 3.1}, 6.0};
    EvalReport r4;
    double k4 = eval_K_chordal(LinkPattern(4, {{1, 2}, {3, 4}}), c4, kappa, 0.7, {}, &r4);
    CHECK(std::abs(k4) < 1e-10 * r4.magnitude);
}

TEST_CASE("excited radial: nonzero value, epsilon independence, parity error") {
    LinkPattern alpha(2, {{1, 2}});
    RadialConfig cfg{{-1.0, 1.0}, Complex(0.0, 2.0)};
    double kappa = 5.0;
    EvalReport rep;
    double k1 = eval_K_radial(alpha, cfg, kappa, 0.4, {}, &rep);
    double k2 = eval_K_radial(alpha, cfg, kappa, 0.2);
    CHECK(std::abs(k1) > 1e-8 * rep.magnitude);  // genuinely nonzero
    CHECK(std::abs(k1 - k2) < 1e-6 * std::abs(k1));
    CHECK(rep.imag_residue < 1e-9);  // the residue is purely imaginary

    // circle node doubling: spectral stability
    QuadratureSettings st;
    st.adaptive = false;
    st.circle_nodes = 32;
    double a1 = eval_K_radial(alpha, cfg, kappa, 0.4, st);
    st.circle_nodes = 64;
    double a2 = eval_K_radial(alpha, cfg, kappa, 0.4, st);
    CHECK(std::abs(a1 - a2) < 1e-8 * std::abs(a1));

    LinkPattern odd(3, {{1, 2}});
    RadialConfig cfg3{{-1.0, 0.0, 1.0}, Complex(0.0, 2.0)};
    CHECK_THROWS_AS(eval_K_radial(odd, cfg3, kappa, 0.2), ParityError);
}

TEST_CASE("excited radial frozen oracle value") {
    // self-converged two-resolution quadrature oracle at the reference point
    LinkPattern alpha(2, {{1, 2}});
    RadialConfig cfg{{-1.0, 1.0}, Complex(0.0, 1.0)};
    QuadratureSettings hi;
    hi.segment_nodes = 96;
    double v = eval_K_radial(alpha, cfg, 5.0, 0.3, hi);
    QuadratureSettings hi2;
    hi2.segment_nodes = 160;
    double v2 = eval_K_radial(alpha, cfg, 5.0, 0.3, hi2);
    CHECK(std::abs(v - v2) < 1e-8 * std::abs(v));
    CHECK(std::abs(v - (-0.236238370218963)) < 1e-8);  // frozen self-converged value
}

TEST_CASE("degenerate spacing is rejected") {
    LinkPattern alpha(4, {{1, 2}, {3, 4}});
    ChordalConfig cfg{{0.0, 1e-15, 1.0, 2.0}, std::nullopt};
    CHECK_THROWS_AS(eval_J_chordal(alpha, cfg, 5.0), DomainError);
}
