// SPDX-License-Identifier: MIT
#pragma once

#include "dhnf/liealg.hpp"

#include <random>

namespace testing_support {

using namespace dhnf;

inline Rational small_rational(std::mt19937& rng, int span = 5) {
    std::uniform_int_distribution<int> num(-span, span), den(1, 4);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

inline Rational nonzero_rational(std::mt19937& rng, int span = 5) {
    Rational q;
    do q = small_rational(rng, span);
    while (q == 0);
    return q;
}

inline PRTerm random_term(std::mt19937& rng, int max_grade, int min_grade = 0) {
    std::uniform_int_distribution<int> g(min_grade, max_grade), bit(0, 1);
    int n = g(rng);
    int m = std::uniform_int_distribution<int>(0, n)(rng);
    return {bit(rng) ? Family::P : Family::R, 1 + bit(rng), m, n - m};
}

inline GElement random_element(std::mt19937& rng, int max_grade, int terms = 4, int min_grade = 0) {
    GElement g;
    for (int i = 0; i < terms; ++i) g.add_term(random_term(rng, max_grade, min_grade), small_rational(rng));
    return g;
}

inline GElement homogeneous_element(std::mt19937& rng, int grade, int terms = 4) {
    return random_element(rng, grade, terms, grade);
}

inline FreqPoly random_poly(std::mt19937& rng, int max_deg = 2, int terms = 3) {
    FreqPoly p;
    std::uniform_int_distribution<int> e(0, max_deg);
    for (int i = 0; i < terms; ++i) {
        int e1 = e(rng), e2 = std::uniform_int_distribution<int>(0, max_deg - e1)(rng);
        p += FreqPoly::monomial(GaussianRational(small_rational(rng, 3), small_rational(rng, 3)), e1, e2);
    }
    return p;
}

inline FreqScalar random_scalar(std::mt19937& rng) {
    FreqPoly den;
    do den = random_poly(rng, 1, 2);
    while (den.is_zero());
    return FreqScalar(random_poly(rng), den);
}

/// Real system with the standard linear part: conjugate pairs of random terms
/// of odd degree 3..max_degree.
inline ComplexVF random_real_complex(std::mt19937& rng, int max_degree, int pairs, bool frequency_coeffs) {
    ComplexVF v = linear_part_A();
    std::uniform_int_distribution<int> comp(0, 1), plane(0, 1);
    for (int i = 0; i < pairs; ++i) {
        int deg = 2 + std::uniform_int_distribution<int>(0, max_degree - 2)(rng);
        CMono m;
        m.component = 1 + 2 * plane(rng) + comp(rng);
        int left = deg;
        for (int k = 0; k < 3; ++k) {
            m.e[k] = std::uniform_int_distribution<int>(0, left)(rng);
            left -= m.e[k];
        }
        m.e[3] = left;
        FreqScalar c = frequency_coeffs ? random_scalar(rng)
                                        : FreqScalar(GaussianRational(small_rational(rng), small_rational(rng)));
        if (c.is_zero()) continue;
        CMono pm = conjugate_partner(m);
        v.add_term(m, c);
        if (!(pm == m)) v.add_term(pm, c.conj());
    }
    return v;
}

}  // namespace testing_support
