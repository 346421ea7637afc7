// SPDX-License-Identifier: MIT
#include "dhnf/verify.hpp"

#include "dhnf/linalg.hpp"

#include <algorithm>

namespace dhnf {

GElement exp_ad(const GElement& x, const GElement& v, int max_grade) {
    GElement result = v.truncated(max_grade);
    if (x.is_zero()) return result;
    GElement term = result;
    for (long j = 1;; ++j) {
        term = bracket_pr(x, term).truncated(max_grade).scaled(Rational(1, j));
        if (term.is_zero()) break;
        result += term;
    }
    return result;
}

SystemPR exp_ad(const GElement& x, const SystemPR& v, int max_grade) {
    SystemPR out = v;
    out.body = exp_ad(x, v.body, max_grade);
    return out;
}

ComplexVF exp_ad(const ComplexVF& x, const ComplexVF& v, int max_degree) {
    ComplexVF result = v.truncated(max_degree);
    if (x.is_zero()) return result;
    ComplexVF term = result;
    for (long j = 1;; ++j) {
        term = bracket_complex(x, term).truncated(max_degree).scaled(FreqScalar(Rational(1, j)));
        if (term.is_zero()) break;
        result += term;
    }
    return result;
}

namespace {

void compare(const GElement& computed, const GElement& expected, int max_grade, Verification& out) {
    GElement diff = computed.truncated(max_grade) - expected.truncated(max_grade);
    for (const auto& [t, c] : diff.terms())
        out.mismatches.push_back(name(t) + ": report " + to_string(expected.coeff(t)) + ", recomputed " +
                                 to_string(computed.coeff(t)));
}

Verification fold_chain(SystemPR current, const NormalFormReport& report) {
    for (const auto& g : report.chain()) current = exp_ad(g.element, current, report.max_grade);
    Verification v;
    compare(current.body, report.final_form.body, report.max_grade, v);
    if (current.includes_theta != report.final_form.includes_theta) v.mismatches.push_back("Theta: flag differs");
    v.pass = v.mismatches.empty();
    return v;
}

}  // namespace

Verification verify_run(const SystemPR& input, const NormalFormReport& report) {
    return fold_chain(input, report);
}

Verification verify_run(const ComplexVF& input, const ComplexChain& first_level, const NormalFormReport& report) {
    const int max_degree = 2 * report.max_grade + 1;
    ComplexVF current = input.truncated(max_degree);
    for (const auto& [deg, y] : first_level) current = exp_ad(y, current, max_degree);
    Verification v;
    SystemPR pr;
    try {
        pr = complex_to_pr(current);
    } catch (const std::exception& e) {
        v.mismatches.push_back(std::string("first level output not in P/R span: ") + e.what());
        return v;
    }
    compare(pr.body, report.input.body, report.max_grade, v);
    if (!v.mismatches.empty()) {
        for (auto& m : v.mismatches) m = "first level " + m;
        return v;
    }
    return fold_chain(pr, report);
}

namespace {

RatVector coords(const GElement& g, int n) {
    RatVector v(4 * (n + 1));
    for (const auto& [t, c] : g.terms())
        if (t.grade() == n) v[system_index(t)] = c;
    return v;
}

// Leading parts of the kernel of d^{m,t}, built from brackets only.
std::vector<GElement> brute_leading(const GElement& body, int m, int t);

std::vector<GElement> brute_domain(const GElement& body, int n, int s) {
    std::vector<GElement> dom;
    if (n - 1 < 1 || s < 2) return dom;
    dom = brute_leading(body, n - 1, s - 1);
    for (const auto& t : system_basis(n - 1)) dom.emplace_back(t);
    return dom;
}

std::vector<GElement> brute_leading(const GElement& body, int m, int t) {
    std::vector<GElement> dom = brute_domain(body, m, t);
    if (dom.empty()) return {};
    RatMatrix img(4 * (m + 1), int(dom.size()));
    for (std::size_t c = 0; c < dom.size(); ++c) {
        RatVector v = coords(bracket_pr(dom[c], body), m);
        for (int r = 0; r < img.rows(); ++r) img(r, int(c)) = v[r];
    }
    std::vector<GElement> out;
    for (const auto& z : nullspace(img)) {
        GElement k;
        for (std::size_t c = 0; c < dom.size(); ++c)
            if (z[c] != 0) k += dom[c].scaled(z[c]);
        if (!k.is_zero()) out.push_back(k);
    }
    return out;
}

}  // namespace

int image_dim_brute(const SystemPR& system, int n, int s) {
    s = std::min(s, n);
    IncrementalSpan span(4 * (n + 1));
    for (const auto& x : brute_domain(system.body, n, s)) span.insert(coords(bracket_pr(x, system.body), n));
    return span.size();
}

}  // namespace dhnf
