// SPDX-License-Identifier: MIT
#include "dhnf/poincare.hpp"

#include "dhnf/errors.hpp"

namespace dhnf {

FreqScalar eigenvalue(const CMono& mono) {
    static const int s1[5] = {0, 1, -1, 0, 0};
    static const int s2[5] = {0, 0, 0, 1, -1};
    long c1 = mono.e[0] - mono.e[1] - s1[mono.component];
    long c2 = mono.e[2] - mono.e[3] - s2[mono.component];
    FreqPoly p = FreqPoly::monomial(GaussianRational(0, c1), 1, 0) + FreqPoly::monomial(GaussianRational(0, c2), 0, 1);
    return FreqScalar(p);
}

bool is_resonant(const CMono& mono) { return eigenvalue(mono).is_zero(); }

FirstLevelResult first_level_complex(const ComplexVF& v, int max_grade) {
    const int max_degree = 2 * max_grade + 1;
    if (!v.homogeneous(0).is_zero()) throw EngineError(ErrorKind::BadLinearPart, "constant term present");
    if (v.homogeneous(1) != linear_part_A())
        throw EngineError(ErrorKind::BadLinearPart, "linear part differs from diag(i w1, -i w1, i w2, -i w2)");
    if (auto bad = reality_violation(v))
        throw EngineError(ErrorKind::RealityViolation, "conjugate partner of " + to_string(*bad) + " does not match");

    FirstLevelResult out;
    out.residual_degree = max_degree;
    ComplexVF current = v.truncated(max_degree);
    for (int d = 2; d <= max_degree; ++d) {
        ComplexVF y;
        ComplexVF part = current.homogeneous(d);
        for (const auto& [m, c] : part.terms()) {
            FreqScalar ev = eigenvalue(m);
            if (!ev.is_zero()) y.add_term(m, c / ev);
        }
        if (!y.is_zero()) current = exp_ad(y, current, max_degree);
        out.generators.emplace_back(d, y);
    }
    out.normal_form_complex = current;
    return out;
}

FirstLevelResult first_level_normalize(const ComplexVF& v, int max_grade) {
    FirstLevelResult out = first_level_complex(v, max_grade);
    out.normal_form = complex_to_pr(out.normal_form_complex);
    return out;
}

}  // namespace dhnf
