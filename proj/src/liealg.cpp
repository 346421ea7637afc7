// SPDX-License-Identifier: MIT
#include "dhnf/liealg.hpp"

#include "dhnf/errors.hpp"

#include <algorithm>
#include <regex>
#include <set>

namespace dhnf {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::GradeTooSmall: return "GradeTooSmall";
        case ErrorKind::DegenerateCubic: return "DegenerateCubic";
        case ErrorKind::SingularBlock: return "SingularBlock";
        case ErrorKind::NonUniqueSolve: return "NonUniqueSolve";
        case ErrorKind::UncoveredCase: return "UncoveredCase";
        case ErrorKind::KernelViolation: return "KernelViolation";
        case ErrorKind::NotInSpan: return "NotInSpan";
        case ErrorKind::BadLinearPart: return "BadLinearPart";
        case ErrorKind::RealityViolation: return "RealityViolation";
        case ErrorKind::PostRationalityCheck: return "PostRationalityCheck";
        case ErrorKind::Schema: return "Schema";
    }
    return "Unknown";
}

std::string name(const PRTerm& t) {
    return std::string(t.family == Family::P ? "P" : "R") + std::to_string(t.k) + "[" + std::to_string(t.m) + "," +
           std::to_string(t.n) + "]";
}

PRTerm parse_term(const std::string& text) {
    static const std::regex re(R"(\s*([PR])([12])\[\s*(\d+)\s*,\s*(\d+)\s*\]\s*)");
    std::smatch mt;
    if (!std::regex_match(text, mt, re)) throw EngineError(ErrorKind::Schema, "bad term name '" + text + "'");
    return {mt[1] == "P" ? Family::P : Family::R, std::stoi(mt[2]), std::stoi(mt[3]), std::stoi(mt[4])};
}

std::vector<PRTerm> system_basis(int n) {
    std::vector<PRTerm> out;
    out.reserve(4 * (n + 1));
    for (int j = 0; j <= n; ++j) {
        out.push_back(P(1, j, n - j));
        out.push_back(P(2, j, n - j));
        out.push_back(R(1, j, n - j));
        out.push_back(R(2, j, n - j));
    }
    return out;
}

int system_index(const PRTerm& t) {
    return 4 * t.m + (t.family == Family::P ? 0 : 2) + (t.k - 1);
}

// ---------------------------------------------------------------- GElement

Rational GElement::coeff(const PRTerm& t) const {
    auto it = terms_.find(t);
    return it == terms_.end() ? Rational(0) : it->second;
}

void GElement::add_term(const PRTerm& t, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(t, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void GElement::set(const PRTerm& t, const Rational& c) {
    if (c == 0) terms_.erase(t);
    else terms_[t] = c;
}

int GElement::max_grade() const { return terms_.empty() ? -1 : terms_.rbegin()->first.grade(); }
int GElement::min_grade() const { return terms_.empty() ? -1 : terms_.begin()->first.grade(); }

GElement GElement::homogeneous(int n) const {
    GElement r;
    for (const auto& [t, c] : terms_)
        if (t.grade() == n) r.terms_.emplace(t, c);
    return r;
}

GElement GElement::truncated(int max_grade) const {
    GElement r;
    for (const auto& [t, c] : terms_)
        if (t.grade() <= max_grade) r.terms_.emplace(t, c);
    return r;
}

GElement GElement::scaled(const Rational& c) const {
    GElement r;
    if (c == 0) return r;
    for (const auto& [t, x] : terms_) r.terms_.emplace(t, x * c);
    return r;
}

GElement& GElement::operator+=(const GElement& o) {
    for (const auto& [t, c] : o.terms_) add_term(t, c);
    return *this;
}

GElement& GElement::operator-=(const GElement& o) {
    for (const auto& [t, c] : o.terms_) add_term(t, -c);
    return *this;
}

std::string to_string(const GElement& g) {
    if (g.is_zero()) return "0";
    std::string out;
    for (const auto& [t, c] : g.terms()) {
        if (!out.empty()) out += c < 0 ? " - " : " + ";
        else if (c < 0) out += "-";
        Rational a = abs(c);
        if (a != 1) out += to_string(a) + "*";
        out += name(t);
    }
    return out;
}

// ---------------------------------------------------------------- structure constants

GElement bracket_basis(const PRTerm& a, const PRTerm& b) {
    GElement out;
    const int M = a.m + b.m, N = a.n + b.n;
    if (a.family == Family::R && b.family == Family::R) return out;
    if (a.family == Family::P && b.family == Family::P) {
        if (a.k == 1 && b.k == 1) {
            out.add_term(P(1, M, N), 2 * (b.m - a.m));
        } else if (a.k == 2 && b.k == 2) {
            out.add_term(P(2, M, N), 2 * (b.n - a.n));
        } else if (a.k == 1) {
            // [P1_{i,j}, P2_{m,n}] = 2m P2 - 2j P1
            out.add_term(P(2, M, N), 2 * b.m);
            out.add_term(P(1, M, N), -2 * a.n);
        } else {
            return -bracket_basis(b, a);
        }
        return out;
    }
    if (a.family == Family::P) {
        out.add_term(R(b.k, M, N), a.k == 1 ? 2 * b.m : 2 * b.n);
        return out;
    }
    return -bracket_basis(b, a);
}

GElement bracket_pr(const GElement& u, const GElement& v) {
    GElement out;
    for (const auto& [a, ca] : u.terms())
        for (const auto& [b, cb] : v.terms()) {
            Rational c = ca * cb;
            GElement ab = bracket_basis(a, b);
            for (const auto& [t, x] : ab.terms()) out.add_term(t, c * x);
        }
    return out;
}

std::array<Rational, 4> SystemPR::cubic() const {
    return {body.coeff(P(1, 0, 1)), body.coeff(P(2, 0, 1)), body.coeff(P(1, 1, 0)), body.coeff(P(2, 1, 0))};
}

std::array<Rational, 4> SystemPR::rot() const {
    return {body.coeff(R(1, 0, 1)), body.coeff(R(2, 0, 1)), body.coeff(R(1, 1, 0)), body.coeff(R(2, 1, 0))};
}

// ---------------------------------------------------------------- ComplexVF

std::string to_string(const CMono& m) {
    static const char* vars[4] = {"z1", "w1", "z2", "w2"};
    std::string s;
    for (int i = 0; i < 4; ++i) {
        if (m.e[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += vars[i];
        if (m.e[i] > 1) s += "^" + std::to_string(m.e[i]);
    }
    if (s.empty()) s = "1";
    return s + " d/d" + vars[m.component - 1];
}

CMono conjugate_partner(const CMono& m) {
    static const int swap_comp[5] = {0, 2, 1, 4, 3};
    return {{m.e[1], m.e[0], m.e[3], m.e[2]}, swap_comp[m.component]};
}

FreqScalar ComplexVF::coeff(const CMono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? FreqScalar() : it->second;
}

void ComplexVF::add_term(const CMono& m, const FreqScalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

int ComplexVF::max_degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }

ComplexVF ComplexVF::homogeneous(int degree) const {
    ComplexVF r;
    for (const auto& [m, c] : terms_)
        if (m.degree() == degree) r.terms_.emplace(m, c);
    return r;
}

ComplexVF ComplexVF::truncated(int max_degree) const {
    ComplexVF r;
    for (const auto& [m, c] : terms_)
        if (m.degree() <= max_degree) r.terms_.emplace(m, c);
    return r;
}

ComplexVF ComplexVF::scaled(const FreqScalar& c) const {
    ComplexVF r;
    if (c.is_zero()) return r;
    for (const auto& [m, x] : terms_) r.terms_.emplace(m, x * c);
    return r;
}

ComplexVF& ComplexVF::operator+=(const ComplexVF& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

ComplexVF& ComplexVF::operator-=(const ComplexVF& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

std::string to_string(const ComplexVF& v) {
    if (v.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : v.terms()) {
        if (!out.empty()) out += " + ";
        out += "(" + to_string(c) + ")*" + to_string(m);
    }
    return out;
}

ComplexVF linear_part_A() {
    ComplexVF a;
    FreqScalar iw1(FreqPoly::w1().scaled(kI)), iw2(FreqPoly::w2().scaled(kI));
    a.add_term({{1, 0, 0, 0}, 1}, iw1);
    a.add_term({{0, 1, 0, 0}, 2}, -iw1);
    a.add_term({{0, 0, 1, 0}, 3}, iw2);
    a.add_term({{0, 0, 0, 1}, 4}, -iw2);
    return a;
}

std::optional<CMono> reality_violation(const ComplexVF& v) {
    for (const auto& [m, c] : v.terms())
        if (v.coeff(conjugate_partner(m)) != c.conj()) return m;
    return std::nullopt;
}

ComplexVF bracket_complex(const ComplexVF& v, const ComplexVF& w) {
    ComplexVF out;
    // Directional derivative of b along a, accumulated with the given sign.
    auto derive = [&out](const ComplexVF& a, const ComplexVF& b, long sign) {
        for (const auto& [ma, ca] : a.terms()) {
            int var = ma.component - 1;
            for (const auto& [mb, cb] : b.terms()) {
                int e = mb.e[var];
                if (e == 0) continue;
                CMono r = mb;
                r.e[var] -= 1;
                for (int i = 0; i < 4; ++i) r.e[i] += ma.e[i];
                out.add_term(r, ca * cb * FreqScalar(sign * e));
            }
        }
    };
    derive(v, w, 1);
    derive(w, v, -1);
    return out;
}

namespace {

void add_pr_term(ComplexVF& out, const PRTerm& t, const Rational& c) {
    GaussianRational g = t.family == Family::P ? GaussianRational(c) : GaussianRational(0, c);
    std::array<int, 4> base{t.m, t.m, t.n, t.n};
    int zi = t.k == 1 ? 0 : 2;
    CMono mz{base, zi + 1}, mw{base, zi + 2};
    mz.e[zi] += 1;
    mw.e[zi + 1] += 1;
    out.add_term(mz, FreqScalar(g));
    out.add_term(mw, FreqScalar(g.conj()));
}

}  // namespace

ComplexVF pr_to_complex(const GElement& g) {
    ComplexVF out;
    for (const auto& [t, c] : g.terms()) add_pr_term(out, t, c);
    return out;
}

ComplexVF pr_to_complex(const SystemPR& s) {
    ComplexVF out = pr_to_complex(s.body);
    if (s.includes_theta) out += linear_part_A();
    return out;
}

SystemPR complex_to_pr(const ComplexVF& v) {
    SystemPR s;
    ComplexVF lin = v.homogeneous(1);
    ComplexVF theta = linear_part_A();
    if (lin == theta) s.includes_theta = true;
    else if (lin.is_zero()) s.includes_theta = false;
    else
        throw EngineError(ErrorKind::NotInSpan, "linear part is neither Theta nor zero");

    for (const auto& [m, c] : v.terms()) {
        if (m.degree() <= 1) {
            if (m.degree() == 0) throw EngineError(ErrorKind::NotInSpan, "constant term " + to_string(m));
            continue;
        }
        int zi = (m.component - 1) / 2 * 2;  // 0 for plane 1, 2 for plane 2
        bool z_comp = (m.component - 1) % 2 == 0;
        std::array<int, 4> base = m.e;
        base[z_comp ? zi : zi + 1] -= 1;
        bool shaped = base[0] == base[1] && base[2] == base[3] && base[zi] >= 0 && base[zi + 1] >= 0;
        if (!shaped) throw EngineError(ErrorKind::NotInSpan, "monomial " + to_string(m) + " is not of P/R shape");
        if (!c.is_constant())
            throw EngineError(ErrorKind::PostRationalityCheck,
                              "coefficient of " + to_string(m) + " depends on the frequencies: " + to_string(c));
        GaussianRational g = c.constant_value();
        if (v.coeff(conjugate_partner(m)) != c.conj())
            throw EngineError(ErrorKind::NotInSpan, "monomial " + to_string(m) + " lacks its conjugate partner");
        if (!z_comp) continue;
        int k = zi == 0 ? 1 : 2;
        s.body.add_term(P(k, base[0], base[2]), g.re);
        s.body.add_term(R(k, base[0], base[2]), g.im);
    }
    return s;
}

}  // namespace dhnf
