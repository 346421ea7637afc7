// SPDX-License-Identifier: MIT
#pragma once

#include "dhnf/scalars.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dhnf {

enum class Family { P, R };

/// Basis element P^k_{m,n} or R^k_{m,n} of the algebra.
struct PRTerm {
    Family family = Family::P;
    int k = 1;
    int m = 0;
    int n = 0;

    int grade() const { return m + n; }
    /// Canonical order: grade, then P before R, then k, then m.
    friend bool operator<(const PRTerm& a, const PRTerm& b) {
        if (a.grade() != b.grade()) return a.grade() < b.grade();
        if (a.family != b.family) return a.family == Family::P;
        if (a.k != b.k) return a.k < b.k;
        return a.m < b.m;
    }
    friend bool operator==(const PRTerm& a, const PRTerm& b) {
        return a.family == b.family && a.k == b.k && a.m == b.m && a.n == b.n;
    }
};

inline int grade(const PRTerm& t) { return t.grade(); }

/// "P1[m,n]" etc.
std::string name(const PRTerm& t);
PRTerm parse_term(const std::string& text);

inline PRTerm P(int k, int m, int n) { return {Family::P, k, m, n}; }
inline PRTerm R(int k, int m, int n) { return {Family::R, k, m, n}; }

/// All 4(n+1) basis terms of grade n in the order used by the homological
/// system: for j = 0..n the group P1, P2, R1, R2 at (j, n-j).
std::vector<PRTerm> system_basis(int n);
/// Position of t inside system_basis(grade(t)).
int system_index(const PRTerm& t);

/// Finite rational combination of basis terms.
class GElement {
public:
    using Terms = std::map<PRTerm, Rational>;

    GElement() = default;
    GElement(const PRTerm& t, const Rational& c = 1) { add_term(t, c); }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Rational coeff(const PRTerm& t) const;
    void add_term(const PRTerm& t, const Rational& c);
    void set(const PRTerm& t, const Rational& c);
    /// Highest grade present, or -1 for zero.
    int max_grade() const;
    int min_grade() const;

    GElement homogeneous(int n) const;
    GElement truncated(int max_grade) const;
    GElement scaled(const Rational& c) const;

    GElement operator-() const { return scaled(-1); }
    GElement& operator+=(const GElement& o);
    GElement& operator-=(const GElement& o);
    friend GElement operator+(GElement a, const GElement& b) { return a += b; }
    friend GElement operator-(GElement a, const GElement& b) { return a -= b; }
    friend GElement operator*(const Rational& c, const GElement& a) { return a.scaled(c); }
    friend bool operator==(const GElement& a, const GElement& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const GElement& a, const GElement& b) { return !(a == b); }

private:
    Terms terms_;
};

std::string to_string(const GElement& g);

/// Bracket of two basis terms from the structure constants.
GElement bracket_basis(const PRTerm& a, const PRTerm& b);
GElement bracket_pr(const GElement& u, const GElement& v);

/// System in P/R form: optional linear part Theta plus grade >= 1 body.
struct SystemPR {
    std::string omega1 = "omega1";
    std::string omega2 = "omega2";
    GElement body;
    bool includes_theta = true;

    /// Grade-1 coefficients (a01_1, a01_2, a10_1, a10_2).
    std::array<Rational, 4> cubic() const;
    /// Grade-1 rotational coefficients (b01_1, b01_2, b10_1, b10_2).
    std::array<Rational, 4> rot() const;

    friend bool operator==(const SystemPR& a, const SystemPR& b) {
        return a.body == b.body && a.includes_theta == b.includes_theta;
    }
};

inline const char* kThetaLabel = "Theta(omega1,omega2)";

/// Monomial z1^e0 w1^e1 z2^e2 w2^e3 in component 1..4 (z1, w1, z2, w2).
struct CMono {
    std::array<int, 4> e{};
    int component = 1;

    int degree() const { return e[0] + e[1] + e[2] + e[3]; }
    friend bool operator<(const CMono& a, const CMono& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        if (a.e != b.e) return a.e < b.e;
        return a.component < b.component;
    }
    friend bool operator==(const CMono& a, const CMono& b) { return a.e == b.e && a.component == b.component; }
};

std::string to_string(const CMono& m);
/// Conjugate partner: swaps z/w exponents in each plane and components 1<->2, 3<->4.
CMono conjugate_partner(const CMono& m);

/// Polynomial vector field on (z1, w1, z2, w2) with frequency-dependent coefficients.
class ComplexVF {
public:
    using Terms = std::map<CMono, FreqScalar>;

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    FreqScalar coeff(const CMono& m) const;
    void add_term(const CMono& m, const FreqScalar& c);
    int max_degree() const;

    ComplexVF homogeneous(int degree) const;
    ComplexVF truncated(int max_degree) const;
    ComplexVF scaled(const FreqScalar& c) const;

    ComplexVF operator-() const { return scaled(FreqScalar(-1)); }
    ComplexVF& operator+=(const ComplexVF& o);
    ComplexVF& operator-=(const ComplexVF& o);
    friend ComplexVF operator+(ComplexVF a, const ComplexVF& b) { return a += b; }
    friend ComplexVF operator-(ComplexVF a, const ComplexVF& b) { return a -= b; }
    friend bool operator==(const ComplexVF& a, const ComplexVF& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const ComplexVF& a, const ComplexVF& b) { return !(a == b); }

private:
    Terms terms_;
};

std::string to_string(const ComplexVF& v);

/// The linear part diag(i w1, -i w1, i w2, -i w2).
ComplexVF linear_part_A();
/// First monomial breaking the conjugate-pair invariant, if any.
std::optional<CMono> reality_violation(const ComplexVF& v);

/// Commutator Dw.v - Dv.w.
ComplexVF bracket_complex(const ComplexVF& v, const ComplexVF& w);

ComplexVF pr_to_complex(const SystemPR& s);
ComplexVF pr_to_complex(const GElement& g);
/// Inverse of pr_to_complex; throws NotInSpan for non-P/R shapes.
SystemPR complex_to_pr(const ComplexVF& v);

}  // namespace dhnf
