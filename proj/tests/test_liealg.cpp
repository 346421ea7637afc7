// SPDX-License-Identifier: MIT
#include "dhnf/errors.hpp"
#include "dhnf/liealg.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace dhnf;
using namespace testing_support;

namespace {

CMono mono(int a, int b, int c, int d, int comp) { return CMono{{a, b, c, d}, comp}; }

std::vector<PRTerm> basis_up_to(int max_grade) {
    std::vector<PRTerm> out;
    for (int n = 0; n <= max_grade; ++n)
        for (const auto& t : system_basis(n)) out.push_back(t);
    return out;
}

}  // namespace

TEST_SUITE("liealg") {

TEST_CASE("grades and names") {
    CHECK(grade(P(1, 2, 1)) == 3);
    CHECK(grade(R(2, 0, 0)) == 0);
    CHECK(name(P(1, 2, 1)) == "P1[2,1]");
    CHECK(parse_term("R2[0,3]") == R(2, 0, 3));
    CHECK_THROWS_AS(parse_term("Q1[0,0]"), EngineError);
    CHECK_THROWS_AS(parse_term("P3[0,0]"), EngineError);
    for (const auto& t : basis_up_to(4)) CHECK(parse_term(name(t)) == t);
}

TEST_CASE("system basis layout") {
    auto b = system_basis(2);
    REQUIRE(b.size() == 12);
    CHECK(b[0] == P(1, 0, 2));
    CHECK(b[1] == P(2, 0, 2));
    CHECK(b[2] == R(1, 0, 2));
    CHECK(b[3] == R(2, 0, 2));
    CHECK(b[4] == P(1, 1, 1));
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(system_index(b[i]) == int(i));
}

TEST_CASE("structure constants") {
    CHECK(bracket_pr(P(1, 0, 1), P(1, 1, 0)) == GElement(P(1, 1, 1), 2));
    CHECK(bracket_pr(R(1, 2, 0), R(2, 0, 3)).is_zero());
    CHECK(bracket_pr(P(1, 1, 0), R(1, 2, 0)) == GElement(R(1, 3, 0), 4));
    CHECK(bracket_pr(P(2, 1, 2), P(2, 0, 1)) == GElement(P(2, 1, 3), -2));
    CHECK(bracket_pr(P(1, 0, 1), P(2, 1, 0)) == GElement(P(2, 1, 1), 2) + GElement(P(1, 1, 1), -2));
}

TEST_CASE("bracket properties on random triples") {
    std::mt19937 rng(21);
    GElement theta = GElement(R(1, 0, 0), 3) + GElement(R(2, 0, 0), Rational(-7, 2));
    for (int trial = 0; trial < 220; ++trial) {
        GElement u = random_element(rng, 6), v = random_element(rng, 6), w = random_element(rng, 6);
        CHECK(bracket_pr(u, v) == -bracket_pr(v, u));
        CHECK(bracket_pr(u, u).is_zero());
        GElement jacobi = bracket_pr(u, bracket_pr(v, w)) + bracket_pr(v, bracket_pr(w, u)) +
                          bracket_pr(w, bracket_pr(u, v));
        CHECK(jacobi.is_zero());
        CHECK(bracket_pr(u, theta).is_zero());

        int gu = std::uniform_int_distribution<int>(0, 3)(rng), gv = std::uniform_int_distribution<int>(0, 3)(rng);
        GElement hu = homogeneous_element(rng, gu), hv = homogeneous_element(rng, gv);
        GElement huv = bracket_pr(hu, hv);
        for (const auto& [t, c] : huv.terms()) CHECK(t.grade() == gu + gv);
    }
}

TEST_CASE("complex bracket against a monomial") {
    ComplexVF y;
    y.add_term(mono(2, 0, 0, 1, 1), 1);
    ComplexVF expected = y.scaled(FreqScalar(FreqPoly::monomial(kI, 1, 0) - FreqPoly::monomial(kI, 0, 1)));
    CHECK(bracket_complex(linear_part_A(), y) == expected);
    CHECK(bracket_complex(y, y).is_zero());
}

TEST_CASE("P/R expansion") {
    ComplexVF p = pr_to_complex(GElement(P(1, 1, 0)));
    ComplexVF expected;
    expected.add_term(mono(2, 1, 0, 0, 1), 1);
    expected.add_term(mono(1, 2, 0, 0, 2), 1);
    CHECK(p == expected);

    ComplexVF r = pr_to_complex(GElement(R(2, 0, 0)));
    ComplexVF rexp;
    rexp.add_term(mono(0, 0, 1, 0, 3), FreqScalar(kI));
    rexp.add_term(mono(0, 0, 0, 1, 4), FreqScalar(-kI));
    CHECK(r == rexp);
    CHECK(pr_to_complex(GElement()).is_zero());

    SystemPR s;
    CHECK(pr_to_complex(s) == linear_part_A());
}

TEST_CASE("complex bracket matches the structure constants on basis pairs up to grade 3") {
    auto basis = basis_up_to(3);
    int checked = 0;
    for (const auto& a : basis)
        for (const auto& b : basis) {
            ComplexVF lhs = bracket_complex(pr_to_complex(GElement(a)), pr_to_complex(GElement(b)));
            ComplexVF rhs = pr_to_complex(bracket_pr(GElement(a), GElement(b)));
            if (lhs != rhs) FAIL_CHECK(name(a) << " with " << name(b));
            ++checked;
        }
    CHECK(checked == 1600);
}

TEST_CASE("complex bracket keeps conjugate pairs") {
    std::mt19937 rng(22);
    for (int trial = 0; trial < 20; ++trial) {
        ComplexVF v = random_real_complex(rng, 5, 3, false), w = random_real_complex(rng, 5, 3, false);
        REQUIRE_FALSE(reality_violation(v));
        CHECK_FALSE(reality_violation(bracket_complex(v, w)));
    }
}

TEST_CASE("complex to P/R conversion") {
    ComplexVF v = linear_part_A();
    v.add_term(mono(1, 0, 1, 1, 1), 1);
    v.add_term(mono(0, 1, 1, 1, 2), 1);
    SystemPR s = complex_to_pr(v);
    CHECK(s.includes_theta);
    CHECK(s.body == GElement(P(1, 0, 1)));

    ComplexVF bad = linear_part_A();
    bad.add_term(mono(2, 0, 0, 1, 1), 1);
    bad.add_term(mono(0, 2, 1, 0, 2), 1);
    try {
        complex_to_pr(bad);
        FAIL("expected NotInSpan");
    } catch (const EngineError& e) {
        CHECK(e.kind() == ErrorKind::NotInSpan);
    }

    std::mt19937 rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        SystemPR sys;
        sys.body = random_element(rng, 4, 6, 1);
        CHECK(complex_to_pr(pr_to_complex(sys)) == sys);
    }
}

}
