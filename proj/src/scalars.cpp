// SPDX-License-Identifier: MIT
#include "dhnf/scalars.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>
#include <vector>

namespace dhnf {

Rational parse_rational(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw ScalarError("empty rational");
    auto slash = t.find('/');
    auto valid_int = [](const std::string& s, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
        if (i >= s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    std::string num = t.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false))
        throw ScalarError("malformed rational '" + text + "'");
    if (num[0] == '+') num = num.substr(1);
    mpz_class n(num), d(den);
    if (d == 0) throw ScalarError("zero denominator in '" + text + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

// ---------------------------------------------------------------- GaussianRational

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = r;
    im = i;
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    Rational n = o.norm();
    if (n == 0) throw ScalarError("division by zero");
    *this *= o.conj();
    re /= n;
    im /= n;
    return *this;
}

std::string to_string(const GaussianRational& g) {
    if (g.im == 0) return to_string(g.re);
    std::string ims = g.im == 1 ? "" : g.im == -1 ? "-" : to_string(g.im);
    if (g.re == 0) return ims + "i";
    std::string out = to_string(g.re);
    if (g.im > 0) out += "+";
    return out + ims + "i";
}

// ---------------------------------------------------------------- FreqPoly

FreqPoly::FreqPoly(const GaussianRational& c) {
    if (!c.is_zero()) terms_[{0, 0}] = c;
}

FreqPoly FreqPoly::monomial(const GaussianRational& c, int e1, int e2) {
    FreqPoly p;
    if (!c.is_zero()) p.terms_[{e1, e2}] = c;
    return p;
}

bool FreqPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == FreqExp{0, 0});
}

GaussianRational FreqPoly::constant_term() const { return coeff(0, 0); }

std::pair<FreqExp, GaussianRational> FreqPoly::leading() const {
    if (terms_.empty()) throw ScalarError("leading term of zero polynomial");
    return *terms_.begin();
}

int FreqPoly::degree_w2() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.second);
    return d;
}

GaussianRational FreqPoly::coeff(int e1, int e2) const {
    auto it = terms_.find({e1, e2});
    return it == terms_.end() ? GaussianRational() : it->second;
}

void FreqPoly::add_term(const FreqExp& e, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

FreqPoly FreqPoly::operator-() const {
    FreqPoly r;
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
}

FreqPoly& FreqPoly::operator+=(const FreqPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

FreqPoly& FreqPoly::operator-=(const FreqPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

FreqPoly operator*(const FreqPoly& a, const FreqPoly& b) {
    FreqPoly r;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_)
            r.add_term({ea.first + eb.first, ea.second + eb.second}, ca * cb);
    return r;
}

FreqPoly& FreqPoly::operator*=(const FreqPoly& o) { return *this = *this * o; }

FreqPoly FreqPoly::scaled(const GaussianRational& c) const {
    FreqPoly r;
    if (c.is_zero()) return r;
    for (const auto& [e, x] : terms_) r.terms_[e] = x * c;
    return r;
}

FreqPoly FreqPoly::conj() const {
    FreqPoly r;
    for (const auto& [e, c] : terms_) r.terms_[e] = c.conj();
    return r;
}

std::optional<FreqPoly> try_divide(const FreqPoly& a, const FreqPoly& b) {
    if (b.is_zero()) throw ScalarError("division by zero polynomial");
    auto [lb_e, lb_c] = b.leading();
    FreqPoly rem = a, quot;
    while (!rem.is_zero()) {
        auto [le, lc] = rem.leading();
        if (le.first < lb_e.first || le.second < lb_e.second) return std::nullopt;
        FreqPoly t = FreqPoly::monomial(lc / lb_c, le.first - lb_e.first, le.second - lb_e.second);
        quot += t;
        rem -= t * b;
    }
    return quot;
}

FreqPoly exact_divide(const FreqPoly& a, const FreqPoly& b) {
    std::optional<FreqPoly> q = try_divide(a, b);
    if (!q) throw ScalarError("inexact polynomial division");
    return *q;
}

namespace {

// Dense univariate polynomial in w1 over Q(i); index = degree.
using UPoly = std::vector<GaussianRational>;

void trim(UPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

UPoly u_sub(UPoly a, const UPoly& b) {
    if (a.size() < b.size()) a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

UPoly u_mul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

// Returns (quotient, remainder) of a / b over the field Q(i).
std::pair<UPoly, UPoly> u_divmod(UPoly a, const UPoly& b) {
    UPoly q;
    if (a.size() >= b.size()) q.resize(a.size() - b.size() + 1);
    while (!a.empty() && a.size() >= b.size()) {
        std::size_t shift = a.size() - b.size();
        GaussianRational c = a.back() / b.back();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
        trim(a);
    }
    trim(q);
    return {q, a};
}

UPoly u_monic(UPoly p) {
    if (p.empty()) return p;
    GaussianRational lc = p.back();
    for (auto& c : p) c /= lc;
    return p;
}

UPoly u_gcd(UPoly a, UPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        UPoly r = u_monic(u_divmod(a, b).second);
        a = std::move(b);
        b = std::move(r);
    }
    return u_monic(a);
}

// Polynomial in w2 whose coefficients are UPoly in w1; index = w2 degree.
using BPoly = std::vector<UPoly>;

void trim(BPoly& p) {
    while (!p.empty() && p.back().empty()) p.pop_back();
}

BPoly to_bpoly(const FreqPoly& f) {
    BPoly r(f.degree_w2() + 1);
    for (const auto& [e, c] : f.terms()) {
        UPoly& u = r[e.second];
        if (u.size() <= static_cast<std::size_t>(e.first)) u.resize(e.first + 1);
        u[e.first] = c;
    }
    trim(r);
    return r;
}

FreqPoly from_bpoly(const BPoly& p) {
    FreqPoly f;
    for (std::size_t j = 0; j < p.size(); ++j)
        for (std::size_t i = 0; i < p[j].size(); ++i) f.add_term({int(i), int(j)}, p[j][i]);
    return f;
}

UPoly content(const BPoly& p) {
    UPoly g;
    for (const auto& c : p) {
        g = u_gcd(g, c);
        if (g.size() == 1) break;
    }
    return g;
}

BPoly div_content(const BPoly& p, const UPoly& c) {
    BPoly r;
    for (const auto& x : p) r.push_back(u_divmod(x, c).first);
    trim(r);
    return r;
}

// Pseudo-remainder of a by b with respect to w2.
BPoly prem(BPoly a, const BPoly& b) {
    const UPoly& lb = b.back();
    while (!a.empty() && a.size() >= b.size()) {
        std::size_t shift = a.size() - b.size();
        UPoly la = a.back();
        for (auto& c : a) c = u_mul(c, lb);
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] = u_sub(a[i + shift], u_mul(la, b[i]));
        trim(a);
    }
    return a;
}

FreqPoly normalize_lc(const FreqPoly& p) {
    if (p.is_zero()) return p;
    GaussianRational one(1);
    return p.scaled(one / p.leading().second);
}

int total_degree(const FreqExp& e) { return e.first + e.second; }

bool is_homogeneous(const FreqPoly& p) {
    if (p.is_zero()) return false;
    int d = total_degree(p.terms().begin()->first);
    for (const auto& [e, c] : p.terms())
        if (total_degree(e) != d) return false;
    return true;
}

// Homogeneous p of degree d as p(t, 1) plus the multiplicity of w2.
std::pair<UPoly, int> dehomogenize(const FreqPoly& p) {
    UPoly u;
    int d = 0, top = 0;
    for (const auto& [e, c] : p.terms()) {
        d = total_degree(e);
        if (u.size() <= std::size_t(e.first)) u.resize(e.first + 1);
        u[e.first] = c;
        top = std::max(top, e.first);
    }
    return {u, d - top};
}

FreqPoly gcd_homogeneous(const FreqPoly& a, const FreqPoly& b) {
    auto [ua, va] = dehomogenize(a);
    auto [ub, vb] = dehomogenize(b);
    UPoly g = u_gcd(ua, ub);
    int k = int(g.size()) - 1, v = std::min(va, vb);
    FreqPoly out;
    for (int j = 0; j <= k; ++j)
        if (!g[j].is_zero()) out.add_term({j, k - j + v}, g[j]);
    return out;
}

// A common divisor of a homogeneous h and any p divides every homogeneous part of p.
FreqPoly gcd_with_homogeneous(const FreqPoly& h, const FreqPoly& p) {
    std::map<int, FreqPoly> parts;
    for (const auto& [e, c] : p.terms()) parts[total_degree(e)].add_term(e, c);
    FreqPoly g = h;
    for (const auto& [d, part] : parts) {
        g = gcd_homogeneous(g, part);
        if (g.is_constant()) break;
    }
    return g;
}

}  // namespace

FreqPoly gcd(const FreqPoly& a, const FreqPoly& b) {
    if (a.is_zero()) return normalize_lc(b);
    if (b.is_zero()) return normalize_lc(a);
    if (a.is_constant() || b.is_constant()) return FreqPoly(1);
    if (try_divide(a, b)) return normalize_lc(b);
    if (try_divide(b, a)) return normalize_lc(a);
    if (total_degree(a.leading().first) == 1 || total_degree(b.leading().first) == 1) return FreqPoly(1);
    if (is_homogeneous(b)) return normalize_lc(gcd_with_homogeneous(b, a));
    if (is_homogeneous(a)) return normalize_lc(gcd_with_homogeneous(a, b));
    BPoly A = to_bpoly(a), B = to_bpoly(b);
    UPoly ca = content(A), cb = content(B);
    UPoly cg = u_gcd(ca, cb);
    A = div_content(A, ca);
    B = div_content(B, cb);
    if (A.size() < B.size()) std::swap(A, B);
    while (!B.empty()) {
        BPoly r = prem(A, B);
        A = std::move(B);
        if (r.empty()) {
            B.clear();
            break;
        }
        B = div_content(r, content(r));
    }
    BPoly g = div_content(A, content(A));
    for (auto& c : g) c = u_mul(c, cg);
    return normalize_lc(from_bpoly(g));
}

// ---------------------------------------------------------------- text form

namespace {

std::string monomial_string(const FreqExp& e) {
    std::string s;
    auto factor = [&](const char* name, int d) {
        if (d == 0) return;
        if (!s.empty()) s += "*";
        s += name;
        if (d > 1) s += "^" + std::to_string(d);
    };
    factor("w1", e.first);
    factor("w2", e.second);
    return s;
}

bool is_negative_simple(const GaussianRational& c) {
    return (c.im == 0 && c.re < 0) || (c.re == 0 && c.im < 0);
}

std::string coeff_with_monomial(const GaussianRational& c, const FreqExp& e) {
    std::string mono = monomial_string(e);
    if (mono.empty()) {
        if (c.re != 0 && c.im != 0) return "(" + to_string(c) + ")";
        return to_string(c);
    }
    if (c == GaussianRational(1)) return mono;
    if (c.re != 0 && c.im != 0) return "(" + to_string(c) + ")*" + mono;
    return to_string(c) + "*" + mono;
}

// Recursive-descent parser over FreqScalar for sums, products, quotients,
// parentheses, the unit i, the symbols w1/w2 and integer powers.
class Parser {
public:
    explicit Parser(std::string s) : s_(std::move(s)) {}

    FreqScalar parse_all() {
        FreqScalar v = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ScalarError(what + " at offset " + std::to_string(pos_) + " in '" + s_ + "'");
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    FreqScalar expr() {
        skip();
        FreqScalar v;
        bool neg = false;
        if (accept('-')) neg = true;
        else accept('+');
        v = term();
        if (neg) v = -v;
        for (;;) {
            if (accept('+')) v += term();
            else if (accept('-')) v -= term();
            else return v;
        }
    }
    FreqScalar term() {
        FreqScalar v = power();
        for (;;) {
            skip();
            if (accept('*')) v *= power();
            else if (accept('/')) {
                FreqScalar d = power();
                if (d.is_zero()) fail("division by zero");
                v /= d;
            } else if (pos_ < s_.size() && (s_[pos_] == '(' || s_[pos_] == 'w' || s_[pos_] == 'i')) {
                v *= power();  // implicit product such as "2i" or "3w1"
            } else
                return v;
        }
    }
    FreqScalar power() {
        FreqScalar b = atom();
        if (accept('^')) {
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            int e = std::stoi(s_.substr(start, pos_ - start));
            FreqScalar r(1);
            for (int k = 0; k < e; ++k) r *= b;
            return r;
        }
        return b;
    }
    FreqScalar atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            FreqScalar v = expr();
            if (!accept(')')) fail("expected ')'");
            return v;
        }
        if (c == 'i') {
            ++pos_;
            return FreqScalar(kI);
        }
        if (c == 'w') {
            ++pos_;
            if (pos_ < s_.size() && s_[pos_] == '1') {
                ++pos_;
                return FreqScalar(FreqPoly::w1());
            }
            if (pos_ < s_.size() && s_[pos_] == '2') {
                ++pos_;
                return FreqScalar(FreqPoly::w2());
            }
            fail("unknown symbol");
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return FreqScalar(Rational(mpz_class(s_.substr(start, pos_ - start))));
        }
        fail("unexpected character");
    }

    std::string s_;
    std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(const FreqPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        if (first) {
            out = coeff_with_monomial(c, e);
            first = false;
        } else if (is_negative_simple(c)) {
            out += " - " + coeff_with_monomial(-c, e);
        } else {
            out += " + " + coeff_with_monomial(c, e);
        }
    }
    return out;
}

FreqPoly parse_freq_poly(const std::string& text) {
    FreqScalar s = Parser(text).parse_all();
    if (!s.den().is_constant()) throw ScalarError("not a polynomial: '" + text + "'");
    return s.num().scaled(GaussianRational(1) / s.den().constant_term());
}

GaussianRational parse_gaussian(const std::string& text) {
    FreqScalar s = Parser(text).parse_all();
    if (!s.is_constant()) throw ScalarError("not a constant: '" + text + "'");
    return s.constant_value();
}

// ---------------------------------------------------------------- FreqScalar

namespace {

// A denominator factor with its exponent in each of two operands.
struct Factor {
    FreqPoly f;
    int a = 0;
    int b = 0;
};

bool is_linear(const FreqPoly& p) { return total_degree(p.leading().first) == 1; }

bool known_coprime(const Factor& x, const Factor& y, bool sides) {
    if (sides && ((x.b == 0 && y.b == 0) || (x.a == 0 && y.a == 0))) return true;
    return is_linear(x.f) && is_linear(y.f);
}

// Splits common parts until the factors are pairwise coprime. With sides set,
// factors coming from the same operand are taken to be coprime already.
void refine(std::vector<Factor>& fs, bool sides) {
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < fs.size() && !changed; ++i) {
            for (std::size_t j = i + 1; j < fs.size() && !changed; ++j) {
                Factor& x = fs[i];
                Factor& y = fs[j];
                if (x.f == y.f) {
                    x.a += y.a;
                    x.b += y.b;
                    fs.erase(fs.begin() + j);
                    changed = true;
                    break;
                }
                if (known_coprime(x, y, sides)) continue;
                FreqPoly h = gcd(x.f, y.f);
                if (h.is_constant()) continue;
                Factor common{h, x.a + y.a, x.b + y.b};
                Factor qx{exact_divide(x.f, h), x.a, x.b};
                Factor qy{exact_divide(y.f, h), y.a, y.b};
                fs.erase(fs.begin() + j);
                fs.erase(fs.begin() + i);
                for (Factor* q : {&common, &qx, &qy})
                    if (!q->f.is_constant()) fs.push_back(std::move(*q));
                changed = true;
            }
        }
    }
}

FreqPoly power(const FreqPoly& f, int e) {
    FreqPoly p(1);
    for (int k = 0; k < e; ++k) p *= f;
    return p;
}

// Removes from num every part of the selected factors that divides it,
// lowering the exponent selected by exp. Returns true when a factor was split.
template <class Pred>
bool cancel(FreqPoly& num, std::vector<Factor>& fs, int Factor::* exp, Pred selected) {
    bool split = false;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        if (!selected(fs[i])) continue;
        while (fs[i].*exp > 0) {
            FreqPoly h = gcd(num, fs[i].f);
            if (h.is_constant()) break;
            if (h == fs[i].f) {
                num = exact_divide(num, h);
                --(fs[i].*exp);
                continue;
            }
            Factor rest = fs[i];
            rest.f = exact_divide(fs[i].f, h);
            fs[i].f = h;
            fs.push_back(std::move(rest));
            split = true;
        }
    }
    return split;
}

}  // namespace

FreqScalar::FreqScalar(const FreqPoly& num) : num_(num), den_(1) {}

FreqScalar::FreqScalar(const FreqPoly& num, const FreqPoly& den) : num_(num), den_(den) {
    if (den_.is_zero()) throw ScalarError("division by zero");
    if (num_.is_zero()) {
        den_ = FreqPoly(1);
        return;
    }
    if (!den_.is_constant()) {
        FreqPoly g = gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = exact_divide(num_, g);
            den_ = exact_divide(den_, g);
        }
    }
    GaussianRational inv = GaussianRational(1) / den_.leading().second;
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
    if (!den_.is_constant()) factors_.emplace_back(den_, 1);
}

FreqScalar::FreqScalar(FreqPoly num, Factors factors) : num_(std::move(num)), den_(1) {
    if (num_.is_zero()) return;
    for (auto& [f, e] : factors)
        if (e > 0) {
            den_ *= power(f, e);
            factors_.emplace_back(std::move(f), e);
        }
}

GaussianRational FreqScalar::constant_value() const {
    if (!is_constant()) throw ScalarError("scalar depends on frequencies");
    return num_.constant_term() / den_.constant_term();
}

FreqScalar FreqScalar::conj() const {
    Factors fs;
    for (const auto& [f, e] : factors_) fs.emplace_back(f.conj(), e);
    return FreqScalar(num_.conj(), std::move(fs));
}

FreqScalar FreqScalar::operator-() const { return FreqScalar(-num_, factors_); }

namespace {

std::vector<Factor> merged(const std::vector<std::pair<FreqPoly, int>>& x,
                           const std::vector<std::pair<FreqPoly, int>>& y) {
    std::vector<Factor> fs;
    for (const auto& [f, e] : x) fs.push_back({f, e, 0});
    for (const auto& [f, e] : y) fs.push_back({f, 0, e});
    refine(fs, true);
    return fs;
}

std::vector<std::pair<FreqPoly, int>> finish(std::vector<Factor>& fs, bool split) {
    if (split) {
        for (auto& x : fs) x.b = 0;
        refine(fs, false);
    }
    std::vector<std::pair<FreqPoly, int>> out;
    for (auto& x : fs)
        if (x.a > 0) out.emplace_back(std::move(x.f), x.a);
    return out;
}

}  // namespace

FreqScalar& FreqScalar::operator+=(const FreqScalar& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    if (factors_.empty() && o.factors_.empty()) {
        num_ += o.num_;
        return *this;
    }
    std::vector<Factor> fs = merged(factors_, o.factors_);
    FreqPoly x = num_, y = o.num_;
    for (auto& f : fs) {
        int top = std::max(f.a, f.b);
        x *= power(f.f, top - f.a);
        y *= power(f.f, top - f.b);
        // Only a factor with equal powers on both sides can divide the sum.
        f.b = f.a == f.b ? 1 : 0;
        f.a = top;
    }
    FreqPoly sum = x + y;
    if (sum.is_zero()) return *this = FreqScalar();
    bool split = cancel(sum, fs, &Factor::a, [](const Factor& f) { return f.b == 1; });
    return *this = FreqScalar(std::move(sum), finish(fs, split));
}

FreqScalar& FreqScalar::operator-=(const FreqScalar& o) { return *this += -o; }

FreqScalar& FreqScalar::operator*=(const FreqScalar& o) {
    if (is_zero() || o.is_zero()) return *this = FreqScalar();
    if (factors_.empty() && o.factors_.empty()) {
        num_ *= o.num_;
        return *this;
    }
    std::vector<Factor> fs = merged(factors_, o.factors_);
    FreqPoly x = num_, y = o.num_;
    bool split = cancel(x, fs, &Factor::b, [](const Factor& f) { return f.a == 0; });
    split |= cancel(y, fs, &Factor::a, [](const Factor& f) { return f.b == 0; });
    for (auto& f : fs) f.a += f.b;
    return *this = FreqScalar(x * y, finish(fs, split));
}

FreqScalar& FreqScalar::operator/=(const FreqScalar& o) {
    if (o.is_zero()) throw ScalarError("division by zero");
    if (is_zero()) return *this;
    GaussianRational inv = GaussianRational(1) / o.num_.leading().second;
    Factors fs;
    if (!o.num_.is_constant()) fs.emplace_back(o.num_.scaled(inv), 1);
    return *this *= FreqScalar(o.den_.scaled(inv), std::move(fs));
}

FreqScalar scalar_arith(const FreqScalar& a, const FreqScalar& b, ArithKind kind) {
    switch (kind) {
        case ArithKind::add: return a + b;
        case ArithKind::sub: return a - b;
        case ArithKind::mul: return a * b;
        case ArithKind::div: return a / b;
    }
    throw ScalarError("unknown arithmetic kind");
}

bool is_zero(const FreqScalar& a) { return a.is_zero(); }

std::string to_string(const FreqScalar& s) {
    if (s.den() == FreqPoly(1)) return to_string(s.num());
    return "(" + to_string(s.num()) + ")/(" + to_string(s.den()) + ")";
}

FreqScalar parse_freq_scalar(const std::string& text) { return Parser(text).parse_all(); }

}  // namespace dhnf
