#include <catch2/catch_amalgamated.hpp>

#include <complex>

#include "slecg/meander.hpp"

using namespace slecg;

TEST_CASE("poly arithmetic") {
    Poly d = Poly::delta();
    Poly p = d * d * d - Poly(2) * d;
    CHECK(p.eval(2.0) == 4.0);
    CHECK(p.str() == "d^3 - 2*d");
    CHECK((p.divided_by(d)) == d * d - Poly(2));
    CHECK_THROWS_AS((d * d + Poly(1)).divided_by(d), DomainError);

    Poly ab = Poly::var_a() * Poly::var_a() - Poly::var_b() * Poly::var_b();
    CHECK(ab.eval(3.0, 2.0) == 5.0);
    CHECK((ab.divided_by(Poly::var_a() + Poly::var_b())) ==
          Poly::var_a() - Poly::var_b());
}

TEST_CASE("direct symbolic determinants") {
    Poly d = Poly::delta();
    // det G_{n,0} = 1
    for (int n = 1; n <= 8; ++n) CHECK(gram_det_direct(n, 0) == Poly(1));
    // fully paired stratum: det G_{2,1} = delta, but for p >= 2 the literature
    // claim delta^p is inconsistent with the printed G_{4,2}; the direct
    // values are authoritative
    CHECK(gram_det_direct(2, 1) == d);
    CHECK(gram_det_direct(4, 2) == d * d * d * d - d * d);
    // det G_{4,1} = delta^3 - 2 delta
    CHECK(gram_det_direct(4, 1) == d * d * d - Poly(2) * d);
    // det G_{3,1} = delta^2 - 1
    CHECK(gram_det_direct(3, 1) == d * d - Poly(1));
}

TEST_CASE("symbolic determinant evaluated matches numeric LU, n <= 8") {
    for (int n = 1; n <= 8; ++n) {
        for (int m = 0; 2 * m <= n; ++m) {
            Poly sym = gram_det_direct(n, m);
            for (double delta : {0.7, 1.3, 2.1}) {
                double direct = det_numeric(gram_matrix_numeric(n, m, delta));
                double scale = std::max(1.0, std::abs(direct));
                CHECK(std::abs(sym.eval(delta) - direct) < 1e-10 * scale);
            }
        }
    }
}

TEST_CASE("q-integer values") {
    std::complex<double> q2(2.0, 0.0);
    CHECK(std::abs(q_integer(1, q2) - 1.0) < 1e-15);
    CHECK(std::abs(q_integer(2, q2) - 2.5) < 1e-15);
    CHECK(std::abs(q_integer(3, q2) - 5.25) < 1e-15);  // 21/4
    CHECK(std::abs(q_integer(5, {1.0, 0.0}) - 5.0) < 1e-15);

    // at |q| = 1 the value is real: [m]_q = sin(m t)/sin(t)
    auto q = q_of_kappa(5.3);
    for (int mm = 1; mm <= 6; ++mm) CHECK(q_integer(mm, q).imag() == 0.0);
}

TEST_CASE("recursive determinant: bases and documented mismatch") {
    std::complex<double> q2(2.0, 0.0);
    // initial conditions pass through
    CHECK(std::abs(gram_det_recursive(5, 0, q2) - 1.0) < 1e-15);
    CHECK(std::abs(gram_det_recursive(2, 1, q2) - 2.5) < 1e-15);  // delta
    CHECK(std::abs(gram_det_recursive(6, 3, q2) - std::pow(2.5, 3)) < 1e-12);

    // (4,1) at q=2: the recursion disagrees with the direct oracle
    // (direct det = delta^3 - 2 delta = 85/8 = 10.625); record, don't trust.
    double direct = gram_det_direct(4, 1).eval(2.5);
    CHECK(direct == 10.625);
    auto rec = gram_det_recursive(4, 1, q2);
    CHECK(std::abs(rec.real() - direct) > 1.0);  // mismatch is real, not roundoff
    CHECK_FALSE(det_values_match(rec.real(), direct));

    // criticality raises a structured error: [3]_q = 0 at q = e^{i pi/3}
    std::complex<double> qc = std::exp(std::complex<double>(0.0, kPi / 3.0));
    CHECK_THROWS_AS(gram_det_recursive(4, 1, qc), CriticalityError);
    try {
        gram_det_recursive(4, 1, qc);
    } catch (const CriticalityError& e) {
        CHECK(e.n == 4);
        CHECK(e.p == 1);
    }
}

TEST_CASE("p=1 closed formula: evaluated verbatim, mismatch recorded") {
    std::complex<double> q2(2.0, 0.0);
    // n=4: prod [1][2] = 2.5 vs direct 10.625
    CHECK(std::abs(gram_det_closed_p1(4, q2) - 2.5) < 1e-15);
    CHECK_FALSE(det_values_match(gram_det_closed_p1(4, q2).real(),
                                 gram_det_direct(4, 1).eval(2.5)));
    // n=3: prod [1]_q = 1 vs direct delta^2 - 1 = [3]_q: also a mismatch
    CHECK(std::abs(gram_det_closed_p1(3, q2) - 1.0) < 1e-15);
}

TEST_CASE("affine determinants: direct oracle vs product formula") {
    // direct: det [[a,b],[b,a]] = a^2 - b^2
    Poly expect = Poly::var_a() * Poly::var_a() - Poly::var_b() * Poly::var_b();
    CHECK(affine_gram_det_direct(2, 1) == expect);

    // d = n (m = 0): formula and oracle both give 1
    for (int n = 2; n <= 6; ++n) {
        CHECK(affine_gram_det_formula(n, n, 5.0, loop_weight(5.0)) == 1.0);
        CHECK(affine_gram_det_direct(n, 0) == Poly(1));
    }

    // n=2, d=0: formula a^2 - 4cos^2(4pi/kappa) vanishes identically at
    // a = n(kappa); the direct oracle gives a^2 - 4. Mismatch recorded.
    double kappa = 5.0;
    double a = loop_weight(kappa);
    double formula = affine_gram_det_formula(2, 0, kappa, a);
    CHECK(std::abs(formula) < 1e-12);
    double direct = affine_gram_det_direct(2, 1).eval(a, 2.0);
    CHECK(std::abs(direct - (a * a - 4.0)) < 1e-12);
    CHECK_FALSE(det_values_match(formula, direct));

    auto rep = det_report(2, 1, kappa, true);
    CHECK_FALSE(rep.formula_matches_oracle);
    CHECK(rep.det_affine_formula.has_value());

    CHECK_THROWS_AS(affine_gram_det_formula(4, 1, 5.0, a), DomainError);
}

TEST_CASE("det_report chordal carries the ledger") {
    auto rep = det_report(4, 1, 5.0);
    CHECK(rep.det_recursion.has_value());
    CHECK_FALSE(rep.formula_matches_oracle);
    CHECK(rep.det_closed_p1.has_value());
    double delta = loop_weight(5.0);
    CHECK(std::abs(rep.det_direct - (std::pow(delta, 3) - 2 * delta)) < 1e-12);

    // where the claims do hold, the flag says so
    auto ok = det_report(2, 1, 5.0);
    CHECK(ok.formula_matches_oracle);
}
