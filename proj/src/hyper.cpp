// SPDX-License-Identifier: MIT
#include "dhnf/hyper.hpp"

#include "dhnf/errors.hpp"
#include "dhnf/verify.hpp"

#include <algorithm>
#include <numeric>

namespace dhnf {

// ---------------------------------------------------------------- blocks

RatMatrix build_block(int n, int j, int kind, const Coeffs4& cubic, const Coeffs4& rot) {
    RatMatrix b(4, 4);
    if (kind == 0) {
        const Rational& a1 = cubic[0];
        const Rational& a2 = cubic[1];
        Rational d0 = j * a1 + (n - j - 1) * a2;
        b(0, 0) = d0;
        b(0, 1) = -a1;
        b(1, 1) = j * a1 + (n - j - 2) * a2;
        b(2, 1) = -rot[0];
        b(2, 2) = d0;
        b(3, 1) = -rot[1];
        b(3, 3) = d0;
    } else {
        const Rational& c1 = cubic[2];
        const Rational& c2 = cubic[3];
        Rational d1 = j * c1 + (n - j - 1) * c2;
        b(0, 0) = (j - 1) * c1 + (n - j - 1) * c2;
        b(1, 0) = -c2;
        b(1, 1) = d1;
        b(2, 0) = -rot[2];
        b(2, 2) = d1;
        b(3, 0) = -rot[3];
        b(3, 3) = d1;
    }
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) b(r, c) *= 2;
    return b;
}

HomMatrix assemble_A(int n, const SystemPR& system) {
    if (n < 2) throw EngineError(ErrorKind::GradeTooSmall, "homological matrix needs n >= 2, got " + std::to_string(n));
    HomMatrix h;
    h.n = n;
    h.full = RatMatrix(4 * (n + 1), 4 * n);
    Coeffs4 cubic = system.cubic(), rot = system.rot();
    for (int j = 0; j < n; ++j) {
        h.diag.push_back(build_block(n, j, 0, cubic, rot));
        h.sub.push_back(build_block(n, j, 1, cubic, rot));
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
                h.full(4 * j + r, 4 * j + c) = h.diag.back()(r, c);
                h.full(4 * (j + 1) + r, 4 * j + c) = h.sub.back()(r, c);
            }
    }
    return h;
}

int rank_exact(const HomMatrix& m) { return rank_bareiss(m.full); }

// ---------------------------------------------------------------- classification

std::string to_string(CaseVariant v) {
    switch (v) {
        case CaseVariant::I: return "I";
        case CaseVariant::II: return "II";
        case CaseVariant::III: return "III";
    }
    return "?";
}

std::string to_string(Override o) {
    switch (o) {
        case Override::none: return "none";
        case Override::irrational_a01: return "irrational-a01";
        case Override::irrational_a10: return "irrational-a10";
    }
    return "?";
}

Override parse_override(const std::string& text) {
    if (text.empty() || text == "none") return Override::none;
    if (text == "irrational-a01") return Override::irrational_a01;
    if (text == "irrational-a10") return Override::irrational_a10;
    throw EngineError(ErrorKind::Schema, "unknown override '" + text + "'");
}

namespace {

bool is_integer(const Rational& x) { return x.get_den() == 1; }

std::pair<int, int> reduced(const Rational& x) {
    // x = num/den > 0, returned as (den, num)
    return {int(x.get_den().get_si()), int(x.get_num().get_si())};
}

}  // namespace

CaseTag classify_case(const Coeffs4& cubic, bool force, Override override_branch) {
    const Rational &a1 = cubic[0], &a2 = cubic[1], &c1 = cubic[2], &c2 = cubic[3];
    CaseTag tag;
    tag.override_branch = override_branch;
    if (a1 == 0 && a2 == 0 && c1 == 0 && c2 == 0) {
        if (!force) throw EngineError(ErrorKind::DegenerateCubic, "all grade-1 radial coefficients vanish");
        tag.variant = CaseVariant::III;
        tag.branch = "degenerate";
        return tag;
    }
    if (override_branch != Override::none) {
        tag.variant = CaseVariant::II;
        tag.branch = to_string(override_branch);
        return tag;
    }
    if (a1 * a2 * c1 * c2 == 0) {
        tag.variant = CaseVariant::III;
        std::string lead;
        if (a1 * a2 < 0) {
            lead = "a01-opposite";
            std::tie(tag.p, tag.q) = reduced(-a1 / a2);
        } else if (a1 == 0 && a2 != 0) {
            lead = "a01_1-zero";
        } else if (a2 == 0 && a1 != 0) {
            lead = "a01_2-zero";
        } else if (a1 == 0 && a2 == 0) {
            lead = "a01-zero";
        }
        std::string tail;
        if (c1 == 0 && c2 != 0) tail = "a10_1-zero";
        else if (c2 == 0 && c1 != 0) tail = "a10_2-zero";
        tag.branch = (lead.empty() || tail.empty()) ? "uncovered" : lead + "/" + tail;
        return tag;
    }
    if (a1 * a2 < 0 && c1 * c2 < 0) {
        tag.variant = CaseVariant::I;
        std::tie(tag.p, tag.q) = reduced(-a1 / a2);
        std::tie(tag.r, tag.s) = reduced(-c1 / c2);
        int d = tag.p + tag.q, e = tag.r + tag.s;
        if (tag.p == tag.r && tag.q == tag.s) tag.branch = "equal-ratios";
        else if (d == e) tag.branch = "equal-sums";
        else if (std::gcd(d, e) == 1) tag.branch = "coprime-sums";
        else tag.branch = "common-factor-sums";
        return tag;
    }
    tag.variant = CaseVariant::II;
    if (a1 * a2 > 0) {
        Rational k = a2 / a1;
        if (k == 1) tag.branch = "a01-equal";
        else if (is_integer(k)) tag.branch = "a01-ratio-natural";
        else tag.branch = "a01-ratio-not-natural";
    } else {
        Rational k = c1 / c2;
        tag.branch = is_integer(k) ? "a10-ratio-natural" : "a10-ratio-not-natural";
    }
    return tag;
}

PartitionClass partition_classify(int n, int p, int q, int r, int s) {
    const int d = p + q, e = r + s, L = std::lcm(d, e);
    auto mult = [](int x, int base) { return x >= base && x % base == 0; };
    if (mult(n - 1, L)) return {1, (n - 1) / L, 0};
    if (mult(n - 2, L)) return {2, (n - 2) / L, 0};
    if (mult(n - 1, d) && mult(n - 2, e)) return {3, (n - 1) / d, (n - 2) / e};
    if (mult(n - 1, e) && mult(n - 2, d)) return {4, (n - 2) / d, (n - 1) / e};
    if (mult(n - 1, d)) return {5, (n - 1) / d, 0};
    if (mult(n - 2, d)) return {6, (n - 2) / d, 0};
    return {7, 0, 0};
}

// ---------------------------------------------------------------- predicted complements

namespace {

using TermSet = std::set<PRTerm>;

TermSet fam(int j, int n) { return {P(1, j, n - j), P(2, j, n - j), R(1, j, n - j), R(2, j, n - j)}; }
TermSet p2r(int j, int n) { return {P(2, j, n - j), R(1, j, n - j), R(2, j, n - j)}; }
TermSet p1r(int j, int n) { return {P(1, j, n - j), R(1, j, n - j), R(2, j, n - j)}; }
TermSet operator|(TermSet a, const TermSet& b) {
    a.insert(b.begin(), b.end());
    return a;
}
TermSet operator-(TermSet a, const TermSet& b) {
    for (const auto& t : b) a.erase(t);
    return a;
}

[[noreturn]] void uncovered(const CaseTag& tag, int n) {
    throw EngineError(ErrorKind::UncoveredCase,
                      "no survivor description for Case " + to_string(tag.variant) + " branch '" + tag.branch +
                          "' at grade " + std::to_string(n));
}

struct Residue {
    int j = 0;
    int m = 0;
};

// n = m d + j with j in {1, 2} and m >= 1, else j = 0.
Residue residue(int n, int d) {
    if (n - 1 >= d && (n - 1) % d == 0) return {1, (n - 1) / d};
    if (n - 2 >= d && (n - 2) % d == 0) return {2, (n - 2) / d};
    return {};
}

TermSet predicted_case_I(const CaseTag& tag, int n) {
    const int p = tag.p, q = tag.q, r = tag.r, s = tag.s, d = p + q, e = r + s;
    if (n == 2) return {P(2, 0, 2), P(1, 2, 0), P(2, 2, 0), R(1, 2, 0), R(2, 2, 0)};
    if (tag.branch == "equal-ratios") {
        auto [j, m] = residue(n, d);
        if (j == 1) return p2r(m * p, n) | p2r(m * p + 1, n);
        if (j == 2) return TermSet{P(2, m * p, n - m * p)} | fam(m * p + 2, n);
        return fam(n, n);
    }
    if (tag.branch == "equal-sums") {
        auto [j, m] = residue(n, d);
        if (j == 1 && m >= 1) {
            if (p <= r) return p2r(m * p, n) | p2r(m * r + 1, n);
            return fam(m * p, n);
        }
        if (j == 2 && m >= 1) {
            if (p <= r) return fam(n, n) | TermSet{P(2, m * p, n - m * p)};
            if (m * p == m * r + 1) return TermSet{P(2, m * p, n - m * p)} | p1r(m * p + 1, n);
            return fam(m * p, n);
        }
        return fam(n, n);
    }
    PartitionClass pc = partition_classify(n, p, q, r, s);
    switch (pc.index) {
        case 1: {
            int M1 = (n - 1) * p / d, M2 = (n - 1) * r / e;
            if (p * e <= r * d) return p2r(M1, n) | p2r(M2 + 1, n);
            return fam(M1, n);
        }
        case 2: {
            int M1 = (n - 2) * p / d, M2 = (n - 2) * r / e;
            if (M1 <= M2 + 1) return fam(n, n) | TermSet{P(2, M1, n - M1)};
            return fam(M1, n);
        }
        case 3: {
            int mp = pc.m * p, mr = pc.m_prime * r;
            if (mp <= mr + 1) return fam(0, n) | TermSet{P(1, mr + 2, n - mr - 2)};
            return fam(mp, n);
        }
        case 4: {
            int mp = pc.m * p, mr = pc.m_prime * r;
            if (mp <= mr) return fam(n, n) | TermSet{P(2, mp, n - mp)};
            return fam(mp, n);
        }
        case 5:
        case 6: return fam(pc.m * p, n);
        default: return fam(n, n);
    }
}

TermSet predicted_a01_branch(int n) {
    if (n == 2) return fam(2, 2) | TermSet{P(2, 0, 2)};
    return fam(n, n);
}

TermSet predicted_a10_branch(int n) {
    if (n == 2) return fam(0, 2) | TermSet{P(1, 2, 0)};
    return fam(0, n);
}

TermSet predicted_case_II(const CaseTag& tag, int n, const SystemPR& system) {
    Coeffs4 a = system.cubic();
    if (tag.branch == "irrational-a01" || tag.branch == "a01-ratio-not-natural") return predicted_a01_branch(n);
    if (tag.branch == "irrational-a10" || tag.branch == "a10-ratio-not-natural") return predicted_a10_branch(n);
    if (tag.branch == "a01-ratio-natural") {
        Rational k = a[1] / a[0];
        if (n == 2) return predicted_a01_branch(n);
        if (Rational(n) == k + 1) return TermSet{P(2, n - 1, 1)} | p1r(n, n);
        return fam(n, n);
    }
    if (tag.branch == "a01-equal") {
        if (n != 2) return fam(n, n);
        if (a[2] != a[3]) return {P(2, 0, 2), P(2, 1, 1), P(1, 2, 0), R(1, 2, 0), R(2, 2, 0)};
        if (system.rot()[2] != 0 || a[2] != 0) return {P(2, 0, 2), P(2, 1, 1), P(1, 2, 0), P(2, 2, 0), R(2, 2, 0)};
    }
    uncovered(tag, n);
}

TermSet predicted_case_III(const CaseTag& tag, int n, const SystemPR& system) {
    const std::string& b = tag.branch;
    if (b == "a01-opposite/a10_2-zero" || b == "a01-opposite/a10_1-zero") {
        const int p = tag.p, q = tag.q, d = p + q;
        auto [j, m] = residue(n, d);
        if (b == "a01-opposite/a10_2-zero") {
            if (n == 2) return {P(1, 0, 2), P(2, 2, 0), R(1, 2, 0), R(2, 2, 0)};
            if ((j == 1 || j == 2) && m >= 1) return fam(m * p, n);
            return fam(n, n);
        }
        if (n == 2) return fam(2, 2) | TermSet{P(2, 0, 2)};
        if (j == 1 && m >= 1) return p2r(m * p, n) | p1r(n, n);
        if (j == 2 && m >= 1) return fam(n, n) | TermSet{P(2, m * p, n - m * p)};
        return fam(n, n);
    }
    if (b == "a01_1-zero/a10_1-zero")
        return TermSet{P(2, n - 2, 2)} | p1r(n - 1, n) | p1r(n, n);
    if (b == "a01_1-zero/a10_2-zero") {
        if (n == 2) return TermSet{P(2, 0, 2), P(1, 2, 0)} | fam(1, 2);
        if (n == 3) return {P(2, 1, 2), R(1, 1, 2), R(2, 1, 2), P(1, 2, 1)};
        return fam(n - 2, n);
    }
    if (b == "a01_2-zero/a10_1-zero")
        return {P(2, 0, n), P(1, n, 0), R(1, 0, n), R(2, 0, n), R(1, n, 0), R(2, n, 0)};
    if (b == "a01_2-zero/a10_2-zero") return TermSet{P(2, 0, n), R(1, 0, n), R(2, 0, n)} | fam(2, n);
    if (b == "a01-zero/a10_1-zero") return (fam(0, n) | fam(n, n)) - TermSet{P(2, n, 0)};
    if (b == "a01-zero/a10_2-zero") {
        TermSet out = (fam(0, n) | fam(1, n) | TermSet{P(1, 2, n - 2)}) - TermSet{P(1, 1, n - 1)};
        Coeffs4 rot = system.rot();
        if (rot[0] != 0) out.erase(R(1, 0, n));
        else if (rot[1] != 0) out.erase(R(2, 0, n));
        return out;
    }
    uncovered(tag, n);
}

}  // namespace

std::set<PRTerm> predicted_complement(const CaseTag& tag, int n, const SystemPR& system) {
    if (n < 2) throw EngineError(ErrorKind::GradeTooSmall, "grade " + std::to_string(n));
    switch (tag.variant) {
        case CaseVariant::I: return predicted_case_I(tag, n);
        case CaseVariant::II: return predicted_case_II(tag, n, system);
        case CaseVariant::III: return predicted_case_III(tag, n, system);
    }
    uncovered(tag, n);
}

// ---------------------------------------------------------------- block recursions

namespace {


RatVector block_apply(const RatMatrix& b, const std::array<Rational, 4>& x) {
    return b * RatVector(x.begin(), x.end());
}

RatVector target_group(const RatVector& t, int j) { return {t[4 * j], t[4 * j + 1], t[4 * j + 2], t[4 * j + 3]}; }

std::array<Rational, 4> to_array(const RatVector& v) { return {v[0], v[1], v[2], v[3]}; }

}  // namespace

GroupCoeffs asc_solve(const HomMatrix& a, int from, int to, const RatVector& targets, GroupCoeffs known) {
    known.resize(a.n);
    for (int i = from; i <= to; ++i) {
        RatVector rhs = target_group(targets, i);
        if (i > 0) {
            RatVector prev = block_apply(a.sub[i - 1], known[i - 1]);
            for (int c = 0; c < 4; ++c) rhs[c] -= prev[c];
        }
        auto x = solve_square(a.diag[i], rhs);
        if (!x) throw EngineError(ErrorKind::SingularBlock, "block (" + std::to_string(i) + ", 0) is singular");
        known[i] = to_array(*x);
    }
    return known;
}

GroupCoeffs dec_solve(const HomMatrix& a, int from, int to, const RatVector& targets, GroupCoeffs known) {
    known.resize(a.n);
    for (int i = from; i >= to; --i) {
        RatVector rhs = target_group(targets, i);
        if (i < a.n) {
            RatVector next = block_apply(a.diag[i], known[i]);
            for (int c = 0; c < 4; ++c) rhs[c] -= next[c];
        }
        auto x = solve_square(a.sub[i - 1], rhs);
        if (!x) throw EngineError(ErrorKind::SingularBlock, "block (" + std::to_string(i - 1) + ", 1) is singular");
        known[i - 1] = to_array(*x);
    }
    return known;
}

RatVector run_plan(const HomMatrix& a, const SolvePlan& plan, const RatVector& targets) {
    const int ncols = a.full.cols();
    RatVector x(ncols);
    std::vector<bool> known(ncols, false);
    for (const auto& step : plan.steps) {
        for (int z : step.zeroed) {
            x[z] = 0;
            known[z] = true;
        }
        if (step.rows.size() != step.unknowns.size())
            throw std::logic_error("solve step is not square: " + plan.description);
        std::vector<bool> in_step(ncols, false);
        for (int u : step.unknowns) in_step[u] = true;
        RatVector rhs;
        for (int r : step.rows) {
            Rational v = targets[r];
            for (int c = 0; c < ncols; ++c) {
                if (a.full(r, c) == 0) continue;
                if (known[c]) v -= a.full(r, c) * x[c];
                else if (!in_step[c]) throw std::logic_error("solve step uses an unsolved unknown: " + plan.description);
            }
            rhs.push_back(v);
        }
        auto y = solve_square(a.full.submatrix(step.rows, step.unknowns), rhs);
        if (!y) {
            int g = step.unknowns.empty() ? 0 : step.unknowns.front() / 4;
            if (step.kind == SolveStep::Kind::window)
                throw EngineError(ErrorKind::NonUniqueSolve, "window at group " + std::to_string(g) + " is singular");
            throw EngineError(ErrorKind::SingularBlock,
                              "block (" + std::to_string(g) + ", " +
                                  (step.kind == SolveStep::Kind::asc ? "0" : "1") + ") is singular");
        }
        for (std::size_t k = 0; k < step.unknowns.size(); ++k) {
            x[step.unknowns[k]] = (*y)[k];
            known[step.unknowns[k]] = true;
        }
    }
    return x;
}

namespace {

constexpr int kP1 = 0, kP2 = 1, kR1 = 2, kR2 = 3;

std::vector<int> grp(int j) { return {4 * j, 4 * j + 1, 4 * j + 2, 4 * j + 3}; }

std::vector<int> without(std::vector<int> v, const std::vector<int>& drop) {
    v.erase(std::remove_if(v.begin(), v.end(),
                           [&](int x) { return std::find(drop.begin(), drop.end(), x) != drop.end(); }),
            v.end());
    return v;
}

void asc_steps(SolvePlan& plan, int from, int to) {
    for (int i = from; i <= to; ++i) plan.steps.push_back({SolveStep::Kind::asc, grp(i), grp(i), {}});
}

// Solves x_{i-1} from term group i for i = from down to to.
void dec_steps(SolvePlan& plan, int from, int to) {
    for (int i = from; i >= to; --i) plan.steps.push_back({SolveStep::Kind::dec, grp(i - 1), grp(i), {}});
}

void window(SolvePlan& plan, std::vector<int> unknowns, std::vector<int> rows, std::vector<int> zeroed) {
    unknowns = without(unknowns, zeroed);
    plan.steps.push_back({SolveStep::Kind::window, unknowns, rows, zeroed});
}

// Product of (A^{i,1})^{-1} A^{i+1,0} over i = lo..hi-1; its (2,2) entry must not vanish.
void guard_window_product(const HomMatrix& a, int lo, int hi) {
    RatMatrix q(4, 4);
    for (int i = 0; i < 4; ++i) q(i, i) = 1;
    for (int i = lo; i < hi; ++i) {
        auto inv = inverse(a.sub[i]);
        if (!inv) throw EngineError(ErrorKind::SingularBlock, "block (" + std::to_string(i) + ", 1) is singular");
        q = q * (*inv * a.diag[i + 1]);
    }
    if (q(1, 1) == 0)
        throw EngineError(ErrorKind::NonUniqueSolve, "window product has vanishing (2,2) entry between groups " +
                                                         std::to_string(lo) + " and " + std::to_string(hi));
}

void plan_n2_first_group(SolvePlan& plan) {
    window(plan, grp(0), without(grp(0), {kP2}), {kP1});
    asc_steps(plan, 1, 1);
}

// Two singular blocks at groups lo (kind 0) and hi (kind 1), survivors P2,R1,R2 at lo and hi+1.
void plan_double_window(SolvePlan& plan, const HomMatrix& a, int n, int lo, int hi) {
    guard_window_product(a, lo, hi);
    asc_steps(plan, 0, lo - 1);
    dec_steps(plan, n, hi + 2);
    std::vector<int> unknowns, rows;
    for (int j = lo; j <= hi; ++j)
        for (int c : grp(j)) unknowns.push_back(c);
    for (int j = lo; j <= hi + 1; ++j)
        for (int c : grp(j)) rows.push_back(c);
    rows = without(rows, {4 * lo + kP2, 4 * lo + kR1, 4 * lo + kR2, 4 * (hi + 1) + kP2, 4 * (hi + 1) + kR1,
                          4 * (hi + 1) + kR2});
    window(plan, unknowns, rows, {4 * hi + kR1, 4 * hi + kR2});
}

// Survivors F(j): ascend below j, descend above.
void plan_split(SolvePlan& plan, int n, int j) {
    asc_steps(plan, 0, j - 1);
    dec_steps(plan, n, j + 1);
}

// Survivors F(n) plus P2 at group j: ascend with alpha2_j fixed to zero.
void plan_p2_gap(SolvePlan& plan, int n, int j) {
    asc_steps(plan, 0, j - 1);
    window(plan, grp(j), without(grp(j), {4 * j + kP2}), {4 * j + kP2});
    asc_steps(plan, j + 1, n - 1);
}

}  // namespace

SolvePlan special_solve_caseI(int n, const CaseTag& tag, const SystemPR& system) {
    if (tag.variant != CaseVariant::I) throw EngineError(ErrorKind::UncoveredCase, "not a Case I tag");
    HomMatrix a = assemble_A(n, system);
    SolvePlan plan;
    plan.survivors = predicted_complement(tag, n, system);
    const int p = tag.p, q = tag.q, r = tag.r, s = tag.s, d = p + q, e = r + s;
    plan.description = "Case I " + tag.branch + " grade " + std::to_string(n);
    if (n == 2) {
        plan_n2_first_group(plan);
        return plan;
    }
    if (tag.branch == "equal-ratios" || tag.branch == "equal-sums") {
        auto [j, m] = residue(n, d);
        const int mp = m * p, mr = m * r;
        if (j == 1 && m >= 1) {
            if (p <= r) plan_double_window(plan, a, n, mp, mr);
            else plan_split(plan, n, mp);
        } else if (j == 2 && m >= 1) {
            if (tag.branch == "equal-ratios") {
                asc_steps(plan, 0, mp - 1);
                window(plan, grp(mp), without(grp(mp), {4 * mp + kP2}), {4 * mp + kP2});
                asc_steps(plan, mp + 1, mp + 1);
                dec_steps(plan, n, mp + 3);
            } else if (p <= r) {
                plan_p2_gap(plan, n, mp);
            } else if (mp == mr + 1) {
                asc_steps(plan, 0, mp - 1);
                dec_steps(plan, n, mp + 2);
                std::vector<int> rows = without(grp(mp), {4 * mp + kP2});
                rows.push_back(4 * (mp + 1) + kP2);
                window(plan, grp(mp), rows, {});
            } else {
                plan_split(plan, n, mp);
            }
        } else {
            asc_steps(plan, 0, n - 1);
        }
        return plan;
    }
    PartitionClass pc = partition_classify(n, p, q, r, s);
    switch (pc.index) {
        case 1: {
            int M1 = (n - 1) * p / d, M2 = (n - 1) * r / e;
            if (p * e <= r * d) plan_double_window(plan, a, n, M1, M2);
            else plan_split(plan, n, M1);
            break;
        }
        case 2: {
            int M1 = (n - 2) * p / d, M2 = (n - 2) * r / e;
            if (M1 <= M2 + 1) plan_p2_gap(plan, n, M1);
            else plan_split(plan, n, M1);
            break;
        }
        case 3: {
            int mp = pc.m * p, mr = pc.m_prime * r;
            if (mp <= mr + 1) {
                dec_steps(plan, n, mr + 3);
                window(plan, grp(mr + 1), without(grp(mr + 2), {4 * (mr + 2) + kP1}), {4 * (mr + 1) + kP1});
                dec_steps(plan, mr + 1, 1);
            } else {
                plan_split(plan, n, mp);
            }
            break;
        }
        case 4: {
            int mp = pc.m * p, mr = pc.m_prime * r;
            if (mp <= mr) plan_p2_gap(plan, n, mp);
            else plan_split(plan, n, mp);
            break;
        }
        case 5:
        case 6: plan_split(plan, n, pc.m * p); break;
        default: asc_steps(plan, 0, n - 1);
    }
    return plan;
}

std::optional<SolvePlan> lemma_plan(int n, const CaseTag& tag, const SystemPR& system) {
    if (tag.variant == CaseVariant::I) return special_solve_caseI(n, tag, system);
    if (tag.variant != CaseVariant::II) return std::nullopt;
    SolvePlan plan;
    plan.description = "Case II " + tag.branch + " grade " + std::to_string(n);
    const std::string& b = tag.branch;
    bool a01 = b == "irrational-a01" || b == "a01-ratio-not-natural" || b == "a01-ratio-natural";
    bool a10 = b == "irrational-a10" || b == "a10-ratio-not-natural";
    if (!a01 && !a10) return std::nullopt;
    plan.survivors = predicted_complement(tag, n, system);
    if (a01) {
        if (n == 2) {
            plan_n2_first_group(plan);
        } else if (b == "a01-ratio-natural" && Rational(n) == system.cubic()[1] / system.cubic()[0] + 1) {
            asc_steps(plan, 0, n - 2);
            std::vector<int> rows = without(grp(n - 1), {4 * (n - 1) + kP2});
            rows.push_back(4 * n + kP2);
            window(plan, grp(n - 1), rows, {});
        } else {
            asc_steps(plan, 0, n - 1);
        }
        return plan;
    }
    if (n == 2) {
        window(plan, grp(1), without(grp(2), {8 + kP1}), {4 + kP1});
        dec_steps(plan, 1, 1);
    } else {
        dec_steps(plan, n, 1);
    }
    return plan;
}

// ---------------------------------------------------------------- generic solve

std::string to_string(ComplementStyle s) { return s == ComplementStyle::paper ? "paper" : "lex"; }

ComplementStyle parse_style(const std::string& text) {
    if (text == "paper") return ComplementStyle::paper;
    if (text == "lex") return ComplementStyle::lex;
    throw EngineError(ErrorKind::Schema, "unknown style '" + text + "'");
}

namespace {

RatVector grade_coords(const GElement& g, int n) {
    RatVector v(4 * (n + 1));
    for (const auto& [t, c] : g.terms())
        if (t.grade() == n) v[system_index(t)] = c;
    return v;
}

GElement from_coords(const RatVector& v, int n) {
    GElement g;
    auto basis = system_basis(n);
    for (std::size_t i = 0; i < v.size(); ++i) g.add_term(basis[i], v[i]);
    return g;
}

std::optional<CaseTag> try_classify(const SystemPR& system, Override ov) {
    try {
        return classify_case(system.cubic(), false, ov);
    } catch (const EngineError&) {
        return std::nullopt;
    }
}

// Row priority for grade n: the first independent rows in this order are removed.
std::vector<int> row_priority(const SystemPR& system, int n, ComplementStyle style, Override ov,
                              std::optional<std::set<PRTerm>>& predicted) {
    auto basis = system_basis(n);
    std::vector<int> order(basis.size());
    std::iota(order.begin(), order.end(), 0);
    if (style == ComplementStyle::lex) {
        std::sort(order.begin(), order.end(), [&](int a, int b) { return basis[a] < basis[b]; });
        return order;
    }
    predicted.reset();
    if (auto tag = try_classify(system, ov)) {
        try {
            predicted = predicted_complement(*tag, n, system);
        } catch (const EngineError&) {
        }
    }
    if (predicted)
        std::stable_partition(order.begin(), order.end(), [&](int i) { return !predicted->count(basis[i]); });
    return order;
}

struct LinearSolve {
    RatVector x;
    std::vector<int> rows;
};

// Removes the first independent rows in `priority`, pivots on columns from the
// highest index down, free columns are zero.
LinearSolve generic_solve(const RatMatrix& b, const RatVector& targets, const std::vector<int>& priority) {
    LinearSolve out;
    out.rows = select_independent_rows(b, priority);
    std::vector<int> all_cols(b.cols());
    std::iota(all_cols.begin(), all_cols.end(), 0);
    RatMatrix sub = b.submatrix(out.rows, all_cols);
    std::vector<int> col_order(all_cols.rbegin(), all_cols.rend());
    std::vector<int> pivots = select_independent_cols(sub, col_order);
    RatVector rhs;
    for (int r : out.rows) rhs.push_back(targets[r]);
    std::vector<int> local(out.rows.size());
    std::iota(local.begin(), local.end(), 0);
    auto y = solve_square(sub.submatrix(local, pivots), rhs);
    if (!y) throw std::logic_error("generic solve: pivot block singular");
    out.x.assign(b.cols(), 0);
    for (std::size_t k = 0; k < pivots.size(); ++k) out.x[pivots[k]] = (*y)[k];
    return out;
}

}  // namespace

SolveResult solve_grade(const SystemPR& system, int n, ComplementStyle style, SolvePath path, Override ov) {
    HomMatrix a = assemble_A(n, system);
    RatVector targets = grade_coords(system.body, n);
    auto basis = system_basis(n);
    auto cols = system_basis(n - 1);
    SolveResult res;
    res.rank = rank_exact(a);

    RatVector x;
    std::vector<bool> removed(basis.size(), false);
    std::optional<SolvePlan> plan;
    if (path == SolvePath::lemma) {
        if (auto tag = try_classify(system, ov)) plan = lemma_plan(n, *tag, system);
    }
    if (plan) {
        x = run_plan(a, *plan, targets);
        for (std::size_t i = 0; i < basis.size(); ++i) removed[i] = !plan->survivors.count(basis[i]);
        res.path = "lemma";
    } else {
        std::optional<std::set<PRTerm>> predicted;
        LinearSolve ls = generic_solve(a.full, targets, row_priority(system, n, style, ov, predicted));
        x = ls.x;
        for (int r : ls.rows) removed[r] = true;
        res.path = "generic";
    }

    RatVector bx = a.full * x;
    RatVector resid(targets.size());
    for (std::size_t i = 0; i < resid.size(); ++i) resid[i] = targets[i] - bx[i];
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (removed[i] && resid[i] != 0)
            throw EngineError(ErrorKind::NonUniqueSolve, "lemma solve leaves " + name(basis[i]) + " nonzero");
        (removed[i] ? res.removed : res.surviving).push_back(basis[i]);
    }
    if (int(res.removed.size()) != res.rank)
        throw EngineError(ErrorKind::NonUniqueSolve, "removed " + std::to_string(res.removed.size()) +
                                                         " terms at grade " + std::to_string(n) + " but rank is " +
                                                         std::to_string(res.rank));
    res.residual = from_coords(resid, n);
    res.generator.level = 2;
    res.generator.grade = n;
    res.generator.element = from_coords(x, n - 1);
    res.generator.components = {res.generator.element};
    return res;
}

// ---------------------------------------------------------------- levels >= 3

namespace {

RatMatrix d_matrix(const SystemPR& system, int n, const std::vector<GElement>& dom) {
    RatMatrix d(4 * (n + 1), int(dom.size()));
    for (std::size_t c = 0; c < dom.size(); ++c) {
        RatVector v = grade_coords(bracket_pr(dom[c], system.body), n);
        for (int r = 0; r < d.rows(); ++r) d(r, int(c)) = v[r];
    }
    return d;
}

}  // namespace

std::vector<GElement> level_domain(const SystemPR& system, int n, int s) {
    s = std::min(s, n);
    std::vector<GElement> dom;
    if (s < 2 || n - 1 < 1) return dom;
    dom = kernel_basis(system, n - 1, s - 1).leading;
    for (const auto& t : system_basis(n - 1)) dom.emplace_back(t);
    return dom;
}

KernelBasis kernel_basis(const SystemPR& system, int n, int s) {
    KernelBasis kb;
    kb.free_grade = n;
    s = std::min(s, n);
    if (s < 2) return kb;
    std::vector<GElement> dom = level_domain(system, n, s);
    for (const auto& z : nullspace(d_matrix(system, n, dom))) {
        GElement k;
        for (std::size_t c = 0; c < dom.size(); ++c)
            if (z[c] != 0) k += dom[c].scaled(z[c]);
        kb.leading.push_back(k);
    }
    return kb;
}

GElement d_ns(const std::vector<GElement>& tuple, const SystemPR& system, int n, int s) {
    if (s < 1) throw EngineError(ErrorKind::GradeTooSmall, "level must be at least 1");
    GElement sum;
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        int g = n - s + 1 + int(i);
        if (!tuple[i].is_zero() && (tuple[i].min_grade() != g || tuple[i].max_grade() != g))
            throw EngineError(ErrorKind::KernelViolation,
                              "component " + std::to_string(i) + " is not homogeneous of grade " + std::to_string(g));
        if (!tuple[i].is_zero() && g < 1)
            throw EngineError(ErrorKind::GradeTooSmall, "component of grade " + std::to_string(g));
        sum += tuple[i];
    }
    if (s >= 3 && tuple.size() >= 2) {
        std::vector<GElement> lead(tuple.begin(), tuple.begin() + std::min<std::size_t>(tuple.size(), s - 1));
        GElement below = d_ns(lead, system, n - 1, s - 1);
        if (!below.is_zero())
            throw EngineError(ErrorKind::KernelViolation, "leading components leave " + to_string(below) +
                                                              " at grade " + std::to_string(n - 1));
    }
    return bracket_pr(sum, system.body).homogeneous(n);
}

std::vector<GeneratorRecord> NormalFormReport::chain() const {
    std::vector<GeneratorRecord> out;
    for (const auto& r : records) out.push_back(r.generator);
    return out;
}

std::set<PRTerm> infinite_level_forced_zeros(const SystemPR& form, int max_grade) {
    std::set<PRTerm> out;
    const GElement& v = form.body;
    Rational a01_1 = v.coeff(P(1, 0, 1)), a01_2 = v.coeff(P(2, 0, 1));
    if (a01_1 * a01_2 <= 0 || Rational(a01_2 / a01_1).get_den() == 1) return out;
    auto a = [&](int k, int j) { return v.coeff(P(k, j, 0)); };
    auto b = [&](int k, int j) { return v.coeff(R(k, j, 0)); };
    if (a(1, 1) == 0 && a(2, 1) == 0 && b(1, 1) == 0 && b(2, 1) == 0)
        for (int n = 3; n <= max_grade; ++n)
            for (const auto& t : system_basis(n))
                if (t.n != 0) out.insert(t);
    for (int j = 3; j <= max_grade; ++j) {
        if (a(1, 1) != 0 && a(1, j - 1) != 0) out.insert(P(1, j, 0));
        for (int m : {1, j - 1}) {
            if (a(1, m) == 0 || a(1, j - m) != 0) continue;
            if (a(2, j - m) != 0) out.insert(P(2, j, 0));
            if (a(2, j - m) == 0 && b(1, j - m) != 0) out.insert(R(1, j, 0));
            if (b(1, j - m) == 0 && b(2, j - m) != 0) out.insert(R(1, j, 0));
        }
    }
    return out;
}

NormalFormReport s_level_normalize(const SystemPR& system, const LevelOptions& options) {
    NormalFormReport report;
    const int N = options.max_grade;
    report.input = system;
    report.input.body = system.body.truncated(N);
    report.max_grade = N;
    report.level = options.level;
    report.style = options.style;
    report.case_tag = classify_case(system.cubic(), options.force, options.override_branch);

    SystemPR current = report.input;
    const int s_max = options.level < 0 ? N : options.level;
    std::map<int, std::vector<int>> prev_removed;
    for (int s = 2; s <= s_max; ++s) {
        std::map<int, std::vector<int>> removed_now;
        for (int n = std::max(2, s); n <= N; ++n) {
            GradeRecord rec;
            rec.level = s;
            rec.grade = n;
            if (report.case_tag->variant == CaseVariant::I) {
                const auto& t = *report.case_tag;
                rec.partition = "P" + std::to_string(partition_classify(n, t.p, t.q, t.r, t.s).index);
            }
            auto basis = system_basis(n);
            GElement expected_grade_n;
            if (s == 2) {
                SolveResult sr = solve_grade(current, n, options.style, options.path, options.override_branch);
                rec.rank = sr.rank;
                rec.removed = sr.removed;
                rec.surviving = sr.surviving;
                rec.path = sr.path;
                rec.generator = sr.generator;
                expected_grade_n = sr.residual;
                if (options.style == ComplementStyle::paper) {
                    try {
                        rec.predicted = predicted_complement(*report.case_tag, n, current);
                    } catch (const EngineError&) {
                    }
                }
                if (rec.predicted) {
                    std::set<PRTerm> got(sr.surviving.begin(), sr.surviving.end());
                    if (got != *rec.predicted) {
                        auto names = [](const std::set<PRTerm>& st) {
                            std::string o;
                            for (const auto& t : st) o += (o.empty() ? "" : " ") + name(t);
                            return o;
                        };
                        report.discrepancies.push_back({"level 2 grade " + std::to_string(n) + " survivors",
                                                        names(*rec.predicted), names(got),
                                                        "predicted complement is not a complement of the image"});
                    }
                }
            } else {
                std::vector<GElement> dom = level_domain(current, n, s);
                RatMatrix d = d_matrix(current, n, dom);
                RatMatrix b(d.rows(), d.cols());
                for (int i = 0; i < d.rows(); ++i)
                    for (int j = 0; j < d.cols(); ++j) b(i, j) = -d(i, j);
                std::optional<std::set<PRTerm>> predicted;
                std::vector<int> base = row_priority(current, n, options.style, options.override_branch, predicted);
                std::vector<int> order = prev_removed[n];
                for (int i : base)
                    if (std::find(order.begin(), order.end(), i) == order.end()) order.push_back(i);
                RatVector targets = grade_coords(current.body, n);
                LinearSolve ls = generic_solve(b, targets, order);
                std::vector<bool> removed(basis.size(), false);
                for (int r : ls.rows) removed[r] = true;
                for (std::size_t i = 0; i < basis.size(); ++i)
                    (removed[i] ? rec.removed : rec.surviving).push_back(basis[i]);
                rec.rank = int(ls.rows.size());
                GElement y;
                for (std::size_t c = 0; c < dom.size(); ++c)
                    if (ls.x[c] != 0) y += dom[c].scaled(ls.x[c]);
                rec.generator.level = s;
                rec.generator.grade = n;
                rec.generator.element = y;
                for (int g = n - s + 1; g <= n - 1; ++g) rec.generator.components.push_back(y.homogeneous(g));
                RatVector bx = b * ls.x;
                RatVector resid(targets.size());
                for (std::size_t i = 0; i < resid.size(); ++i) resid[i] = targets[i] - bx[i];
                expected_grade_n = from_coords(resid, n);
            }
            for (const auto& t : rec.removed) removed_now[n].push_back(system_index(t));

            SystemPR next = exp_ad(rec.generator.element, current, N);
            for (int g = 1; g < n; ++g)
                if (next.body.homogeneous(g) != current.body.homogeneous(g))
                    throw EngineError(ErrorKind::KernelViolation, "level " + std::to_string(s) + " generator at grade " +
                                                                      std::to_string(n) + " changes grade " +
                                                                      std::to_string(g));
            if (next.body.homogeneous(n) != expected_grade_n)
                throw EngineError(ErrorKind::KernelViolation, "level " + std::to_string(s) + " update at grade " +
                                                                  std::to_string(n) + " is not linear in the generator");
            rec.generator.certified = true;
            current = next;
            report.records.push_back(std::move(rec));
        }
        prev_removed = std::move(removed_now);
    }
    report.final_form = current;
    if (options.level < 0)
        for (const auto& t : infinite_level_forced_zeros(current, N))
            if (Rational c = current.body.coeff(t); c != 0)
                report.discrepancies.push_back({"infinite level " + name(t), "0", to_string(c),
                                                "term outside the infinite-level sparsity pattern survives"});
    report.verification = verify_run(report.input, report);
    return report;
}

}  // namespace dhnf
