// SPDX-License-Identifier: MIT
#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dhnf {

/// Arbitrary precision rational; GMP keeps it canonical (reduced, positive denominator).
using Rational = mpq_class;

class ScalarError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

struct GaussianRational {
    Rational re;
    Rational im;

    GaussianRational() = default;
    GaussianRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}
    GaussianRational(long v) : re(v), im(0) {}

    bool is_zero() const { return re == 0 && im == 0; }
    GaussianRational conj() const { return {re, -im}; }
    Rational norm() const { return re * re + im * im; }

    GaussianRational operator-() const { return {-re, -im}; }
    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }
};

const GaussianRational kI{0, 1};

/// "a+bi" form; pure reals print as "a", pure imaginaries as "bi".
std::string to_string(const GaussianRational& g);
GaussianRational parse_gaussian(const std::string& text);

/// Exponent pair (degree in w1, degree in w2).
using FreqExp = std::pair<int, int>;

/// Graded-lex order on exponents: higher total degree first, then higher w1 degree.
struct GradedLexGreater {
    bool operator()(const FreqExp& a, const FreqExp& b) const {
        int da = a.first + a.second, db = b.first + b.second;
        if (da != db) return da > db;
        return a.first > b.first;
    }
};

/// Polynomial in the frequency symbols w1, w2 over the Gaussian rationals.
class FreqPoly {
public:
    using Terms = std::map<FreqExp, GaussianRational, GradedLexGreater>;

    FreqPoly() = default;
    FreqPoly(const GaussianRational& c);
    FreqPoly(long c) : FreqPoly(GaussianRational(c)) {}
    static FreqPoly monomial(const GaussianRational& c, int e1, int e2);
    static FreqPoly w1() { return monomial(1, 1, 0); }
    static FreqPoly w2() { return monomial(1, 0, 1); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    GaussianRational constant_term() const;
    /// Leading term in graded-lex order; throws on the zero polynomial.
    std::pair<FreqExp, GaussianRational> leading() const;
    int degree_w2() const;
    GaussianRational coeff(int e1, int e2) const;
    void add_term(const FreqExp& e, const GaussianRational& c);

    FreqPoly operator-() const;
    FreqPoly& operator+=(const FreqPoly& o);
    FreqPoly& operator-=(const FreqPoly& o);
    FreqPoly& operator*=(const FreqPoly& o);
    FreqPoly scaled(const GaussianRational& c) const;
    FreqPoly conj() const;

    friend FreqPoly operator+(FreqPoly a, const FreqPoly& b) { return a += b; }
    friend FreqPoly operator-(FreqPoly a, const FreqPoly& b) { return a -= b; }
    friend FreqPoly operator*(const FreqPoly& a, const FreqPoly& b);
    friend bool operator==(const FreqPoly& a, const FreqPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const FreqPoly& a, const FreqPoly& b) { return !(a == b); }

private:
    Terms terms_;
};

/// Quotient when b divides a.
std::optional<FreqPoly> try_divide(const FreqPoly& a, const FreqPoly& b);
/// Exact quotient a/b; throws ScalarError if b does not divide a.
FreqPoly exact_divide(const FreqPoly& a, const FreqPoly& b);
/// Greatest common divisor, normalized so the leading coefficient is 1.
FreqPoly gcd(const FreqPoly& a, const FreqPoly& b);

std::string to_string(const FreqPoly& p);
FreqPoly parse_freq_poly(const std::string& text);

/// Element of the rational function field Q(i)(w1, w2), kept canonical:
/// reduced by the gcd and with monic denominator, so equality is structural.
class FreqScalar {
public:
    FreqScalar() : num_(), den_(1) {}
    FreqScalar(const FreqPoly& num);
    FreqScalar(const FreqPoly& num, const FreqPoly& den);
    FreqScalar(const GaussianRational& c) : FreqScalar(FreqPoly(c)) {}
    FreqScalar(const Rational& c) : FreqScalar(FreqPoly(GaussianRational(c))) {}
    FreqScalar(long c) : FreqScalar(FreqPoly(c)) {}

    const FreqPoly& num() const { return num_; }
    const FreqPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    /// True when the value is free of w1, w2.
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    GaussianRational constant_value() const;
    FreqScalar conj() const;

    FreqScalar operator-() const;
    FreqScalar& operator+=(const FreqScalar& o);
    FreqScalar& operator-=(const FreqScalar& o);
    FreqScalar& operator*=(const FreqScalar& o);
    FreqScalar& operator/=(const FreqScalar& o);

    friend FreqScalar operator+(FreqScalar a, const FreqScalar& b) { return a += b; }
    friend FreqScalar operator-(FreqScalar a, const FreqScalar& b) { return a -= b; }
    friend FreqScalar operator*(FreqScalar a, const FreqScalar& b) { return a *= b; }
    friend FreqScalar operator/(FreqScalar a, const FreqScalar& b) { return a /= b; }
    friend bool operator==(const FreqScalar& a, const FreqScalar& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const FreqScalar& a, const FreqScalar& b) { return !(a == b); }

private:
    using Factors = std::vector<std::pair<FreqPoly, int>>;

    FreqScalar(FreqPoly num, Factors factors);

    FreqPoly num_;
    FreqPoly den_;
    // Pairwise coprime monic factors whose product is den_.
    Factors factors_;
};

enum class ArithKind { add, sub, mul, div };

FreqScalar scalar_arith(const FreqScalar& a, const FreqScalar& b, ArithKind kind);
bool is_zero(const FreqScalar& a);

/// "num" or "(num)/(den)".
std::string to_string(const FreqScalar& s);
FreqScalar parse_freq_scalar(const std::string& text);

}  // namespace dhnf
