// SPDX-License-Identifier: MIT
#pragma once

#include "dhnf/liealg.hpp"
#include "dhnf/verify.hpp"

namespace dhnf {

/// ad_A eigenvalue of a monomial vector field:
/// i[(m1 - m2 - s1) w1 + (n1 - n2 - s2) w2] with s the component's own eigenvalue signs.
FreqScalar eigenvalue(const CMono& mono);
bool is_resonant(const CMono& mono);

struct FirstLevelResult {
    SystemPR normal_form;
    ComplexVF normal_form_complex;
    ComplexChain generators;  // one entry per degree 2..2N+1
    int residual_degree = 0;
};

/// Poincare normalization through degree 2N+1. BadLinearPart if the linear part
/// is not diag(i w1, -i w1, i w2, -i w2), RealityViolation if conjugate pairs fail,
/// PostRationalityCheck if a resonant coefficient depends on the frequencies.
FirstLevelResult first_level_normalize(const ComplexVF& v, int max_grade);
/// Same normalization without the conversion to P/R form; normal_form is left
/// empty, so frequency-dependent resonant coefficients are allowed.
FirstLevelResult first_level_complex(const ComplexVF& v, int max_grade);

}  // namespace dhnf
