#pragma once

// Exact integer-coefficient polynomials in the loop weights: univariate in
// delta for chordal Gram matrices, bivariate in (a, b) for affine ones.
// Enough ring structure for fraction-free (Bareiss) determinants.

#include <complex>
#include <map>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "slecg/errors.hpp"

namespace slecg {

using BigInt = boost::multiprecision::cpp_int;
using BigFloat = boost::multiprecision::cpp_bin_float_50;

class Poly {
public:
    using Key = std::pair<int, int>;  // exponents of (delta or a, b)

    Poly() = default;
    Poly(long c) {
        if (c != 0) terms_[{0, 0}] = c;
    }
    Poly(BigInt c) {
        if (c != 0) terms_[{0, 0}] = std::move(c);
    }

    static Poly monomial(BigInt c, int da, int db = 0) {
        Poly p;
        if (c != 0) terms_insert(p.terms_, {da, db}, std::move(c));
        return p;
    }
    static Poly delta(int power = 1) { return monomial(1, power, 0); }
    static Poly var_a(int power = 1) { return monomial(1, power, 0); }
    static Poly var_b(int power = 1) { return monomial(1, 0, power); }

    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, BigInt>& terms() const { return terms_; }

    Poly operator+(const Poly& o) const {
        Poly r = *this;
        for (const auto& [k, c] : o.terms_) terms_insert(r.terms_, k, c);
        return r;
    }
    Poly operator-(const Poly& o) const {
        Poly r = *this;
        for (const auto& [k, c] : o.terms_) terms_insert(r.terms_, k, -c);
        return r;
    }
    Poly operator-() const {
        Poly r;
        for (const auto& [k, c] : terms_) r.terms_[k] = -c;
        return r;
    }
    Poly operator*(const Poly& o) const {
        Poly r;
        for (const auto& [k1, c1] : terms_)
            for (const auto& [k2, c2] : o.terms_)
                terms_insert(r.terms_, {k1.first + k2.first, k1.second + k2.second}, c1 * c2);
        return r;
    }

    bool operator==(const Poly& o) const { return terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // Exact division (throws if the remainder is nonzero). Divisor leading
    // term taken in lexicographic (da, db) order.
    Poly divided_by(const Poly& d) const {
        if (d.is_zero()) throw DomainError("Poly: division by zero");
        Poly rem = *this, q;
        const auto lead = std::prev(d.terms_.end());
        while (!rem.is_zero()) {
            const auto rl = std::prev(rem.terms_.end());
            int da = rl->first.first - lead->first.first;
            int db = rl->first.second - lead->first.second;
            if (da < 0 || db < 0) throw DomainError("Poly: inexact division");
            BigInt c = rl->second / lead->second;
            if (c * lead->second != rl->second) throw DomainError("Poly: inexact division");
            Poly t = monomial(c, da, db);
            q = q + t;
            rem = rem - t * d;
        }
        return q;
    }

    // High-degree Gram determinants cancel catastrophically in doubles;
    // accumulate in 50-digit floats.
    double eval(double a, double b = 0.0) const {
        BigFloat s = 0, fa = a, fb = b;
        for (const auto& [k, c] : terms_) {
            BigFloat t = BigFloat(c);
            for (int i = 0; i < k.first; ++i) t *= fa;
            for (int i = 0; i < k.second; ++i) t *= fb;
            s += t;
        }
        return static_cast<double>(s);
    }
    std::complex<double> eval(std::complex<double> a, std::complex<double> b = 0.0) const {
        std::complex<double> s = 0;
        for (const auto& [k, c] : terms_)
            s += static_cast<double>(c) * std::pow(a, k.first) * std::pow(b, k.second);
        return s;
    }

    int degree_a() const {
        int d = 0;
        for (const auto& [k, c] : terms_) d = std::max(d, k.first);
        return d;
    }
    int degree_b() const {
        int d = 0;
        for (const auto& [k, c] : terms_) d = std::max(d, k.second);
        return d;
    }
    bool univariate() const { return degree_b() == 0; }

    // "d^3 - 2*d" style rendering; names default to the chordal weight.
    std::string str(const std::string& na = "d", const std::string& nb = "b") const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [k, c] = *it;
            std::string mono;
            if (k.first > 0) mono += na + (k.first > 1 ? "^" + std::to_string(k.first) : "");
            if (k.second > 0) {
                if (!mono.empty()) mono += "*";
                mono += nb + (k.second > 1 ? "^" + std::to_string(k.second) : "");
            }
            BigInt a = c < 0 ? BigInt(-c) : c;
            std::string coef = a.str();
            std::string body = mono.empty() ? coef : (a == 1 ? mono : coef + "*" + mono);
            if (s.empty())
                s = (c < 0 ? "-" : "") + body;
            else
                s += (c < 0 ? " - " : " + ") + body;
        }
        return s;
    }

private:
    static void terms_insert(std::map<Key, BigInt>& t, const Key& k, BigInt c) {
        auto it = t.find(k);
        if (it == t.end()) {
            if (c != 0) t.emplace(k, std::move(c));
        } else {
            it->second += c;
            if (it->second == 0) t.erase(it);
        }
    }

    std::map<Key, BigInt> terms_;
};

// Fraction-free Bareiss determinant over the polynomial ring; exact.
inline Poly bareiss_det(std::vector<std::vector<Poly>> m) {
    const int n = static_cast<int>(m.size());
    if (n == 0) return Poly(1);
    for (const auto& row : m)
        if (static_cast<int>(row.size()) != n) throw DomainError("bareiss_det: not square");
    Poly prev(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k].is_zero()) {
            int p = -1;
            for (int r = k + 1; r < n; ++r)
                if (!m[r][k].is_zero()) {
                    p = r;
                    break;
                }
            if (p < 0) return Poly(0);
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).divided_by(prev);
        prev = m[k][k];
    }
    Poly det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

}  // namespace slecg
