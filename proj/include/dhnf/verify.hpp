// SPDX-License-Identifier: MIT
#pragma once

#include "dhnf/hyper.hpp"
#include "dhnf/liealg.hpp"

#include <utility>
#include <vector>

namespace dhnf {

/// sum_j ad_X^j V / j!, dropping everything above grade N.
GElement exp_ad(const GElement& x, const GElement& v, int max_grade);
SystemPR exp_ad(const GElement& x, const SystemPR& v, int max_grade);
/// Complex version; truncation is by polynomial degree.
ComplexVF exp_ad(const ComplexVF& x, const ComplexVF& v, int max_degree);

/// Degree-tagged first-level generators in application order.
using ComplexChain = std::vector<std::pair<int, ComplexVF>>;

/// Folds the report's chain over the input and compares with the final form
/// up to the report's grade cap.
Verification verify_run(const SystemPR& input, const NormalFormReport& report);
/// Same, starting from a complex input and its first-level chain.
Verification verify_run(const ComplexVF& input, const ComplexChain& first_level, const NormalFormReport& report);

/// Dimension of im d^{n,s} computed from brackets over the kernel-constrained domain.
int image_dim_brute(const SystemPR& system, int n, int s);

}  // namespace dhnf
