// SPDX-License-Identifier: MIT
#pragma once

#include "dhnf/liealg.hpp"
#include "dhnf/linalg.hpp"

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace dhnf {

using Coeffs4 = std::array<Rational, 4>;

/// 4x4 block of the grade-n homological matrix. kind 0 is the diagonal block
/// acting on generator group j and landing in term group j, kind 1 the
/// subdiagonal block landing in group j+1. cubic = (a01_1, a01_2, a10_1, a10_2),
/// rot = (b01_1, b01_2, b10_1, b10_2).
RatMatrix build_block(int n, int j, int kind, const Coeffs4& cubic, const Coeffs4& rot);

/// Block lower-bidiagonal matrix of shape 4(n+1) x 4n. Rows follow
/// system_basis(n), columns system_basis(n-1). A generator with coordinates x
/// changes the grade-n coefficients by -full * x, so the solve is full * x = a.
struct HomMatrix {
    int n = 0;
    std::vector<RatMatrix> diag;  // kind 0, j = 0..n-1
    std::vector<RatMatrix> sub;   // kind 1, j = 0..n-1
    RatMatrix full;
};

HomMatrix assemble_A(int n, const SystemPR& system);
int rank_exact(const HomMatrix& m);

enum class CaseVariant { I, II, III };
enum class Override { none, irrational_a01, irrational_a10 };

struct CaseTag {
    CaseVariant variant = CaseVariant::III;
    int p = 0, q = 0, r = 0, s = 0;  // Case I only
    std::string branch;
    Override override_branch = Override::none;
};

std::string to_string(CaseVariant v);
std::string to_string(Override o);
Override parse_override(const std::string& text);

/// Throws DegenerateCubic when all four coefficients vanish and force is false.
CaseTag classify_case(const Coeffs4& cubic, bool force = false, Override override_branch = Override::none);

/// Class P1..P7 with witnesses: m for P1/P2 counts multiples of the lcm,
/// for P3..P6 m and m_prime count multiples of p+q and r+s.
struct PartitionClass {
    int index = 7;
    int m = 0;
    int m_prime = 0;
};

PartitionClass partition_classify(int n, int p, int q, int r, int s);

/// Exact block recursions. Coordinates are generator groups x_0..x_{n-1}.
using GroupCoeffs = std::vector<std::array<Rational, 4>>;

/// Ascending recursion for j in [from, to]; groups below `from` are taken from `known`.
GroupCoeffs asc_solve(const HomMatrix& a, int from, int to, const RatVector& targets, GroupCoeffs known = {});
/// Descending recursion: solves x_{i-1} from term group i for i = from down to to.
GroupCoeffs dec_solve(const HomMatrix& a, int from, int to, const RatVector& targets, GroupCoeffs known = {});

/// One exact step of a block solve: the listed unknowns are solved from the
/// listed rows, all other unknowns involved must already be known.
struct SolveStep {
    enum class Kind { asc, dec, window } kind = Kind::window;
    std::vector<int> unknowns;  // column indices
    std::vector<int> rows;      // row indices
    std::vector<int> zeroed;    // unknowns fixed to zero before the step
};

struct SolvePlan {
    std::vector<SolveStep> steps;
    std::set<PRTerm> survivors;
    std::string description;
};

/// Runs a plan; SingularBlock for singular asc/dec blocks, NonUniqueSolve for
/// a singular window.
RatVector run_plan(const HomMatrix& a, const SolvePlan& plan, const RatVector& targets);

/// Plan for the singular Case I grades (and the regular ones), following the
/// block recursions. Includes the (2,2) nonvanishing guard of the window product.
SolvePlan special_solve_caseI(int n, const CaseTag& tag, const SystemPR& system);
/// Plan for any covered branch, or nullopt when only the generic solver applies.
std::optional<SolvePlan> lemma_plan(int n, const CaseTag& tag, const SystemPR& system);

/// Survivor set of the governing lemma; UncoveredCase otherwise.
std::set<PRTerm> predicted_complement(const CaseTag& tag, int n, const SystemPR& system);

enum class ComplementStyle { paper, lex };
std::string to_string(ComplementStyle s);
ComplementStyle parse_style(const std::string& text);

enum class SolvePath { generic, lemma };

struct GeneratorRecord {
    int level = 2;
    int grade = 0;                       // grade being normalized
    GElement element;                    // sum of the components
    std::vector<GElement> components;    // X_{n-s+1}, ..., X_{n-1}
    bool certified = true;               // kernel certificate re-evaluated
};

struct GradeRecord {
    int level = 2;
    int grade = 0;
    std::string partition;              // "P1".."P7" in Case I, else empty
    int rank = 0;
    std::vector<PRTerm> removed;
    std::vector<PRTerm> surviving;
    std::optional<std::set<PRTerm>> predicted;
    std::string path = "generic";
    GeneratorRecord generator;
};

struct SolveResult {
    GeneratorRecord generator;
    GElement residual;                  // grade-n part after the linear update
    std::vector<PRTerm> removed;
    std::vector<PRTerm> surviving;
    int rank = 0;
    std::string path;
};

/// Second-level solve at grade n.
SolveResult solve_grade(const SystemPR& system, int n, ComplementStyle style, SolvePath path = SolvePath::generic,
                        Override override_branch = Override::none);

/// d^{n,s} applied to (X_{n-s+1}, ..., X_{n-1}[, X_n]); KernelViolation if a
/// leading part is outside the kernel of the previous level.
GElement d_ns(const std::vector<GElement>& tuple, const SystemPR& system, int n, int s);

/// Kernel of d^{n,s}: leading parts spanning the kernel; the top component
/// (grade n) is always free and is not listed.
struct KernelBasis {
    std::vector<GElement> leading;
    int free_grade = 0;
};

KernelBasis kernel_basis(const SystemPR& system, int n, int s);
/// Domain of d^{n,s}: kernel leading parts of level s-1 at grade n-1 plus a basis of grade n-1.
std::vector<GElement> level_domain(const SystemPR& system, int n, int s);

struct Discrepancy {
    std::string where;
    std::string expected;
    std::string computed;
    std::string note;
};

struct Verification {
    bool pass = false;
    std::vector<std::string> mismatches;
};

struct NormalFormReport {
    SystemPR input;                      // P/R form entering level 2
    int max_grade = 0;
    int level = 2;                       // -1 for "inf"
    ComplementStyle style = ComplementStyle::paper;
    std::optional<CaseTag> case_tag;
    std::vector<GradeRecord> records;
    SystemPR final_form;
    Verification verification;
    std::vector<Discrepancy> discrepancies;

    /// Generators in application order.
    std::vector<GeneratorRecord> chain() const;
};

struct LevelOptions {
    int max_grade = 4;
    int level = 2;  // -1 = infinite
    ComplementStyle style = ComplementStyle::paper;
    bool force = false;
    Override override_branch = Override::none;
    SolvePath path = SolvePath::generic;
};

NormalFormReport s_level_normalize(const SystemPR& system, const LevelOptions& options);

/// Terms an infinite-level normal form has to drop when a01_1 a01_2 > 0 and
/// a01_2/a01_1 is not an integer. With the cubic a10/b10 terms absent every
/// grade >= 3 term outside the (j,0) family is listed; the remaining entries
/// come from the coefficient conditions on the (j,0) family.
std::set<PRTerm> infinite_level_forced_zeros(const SystemPR& form, int max_grade);

}  // namespace dhnf
