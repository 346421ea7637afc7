// SPDX-License-Identifier: MIT
#pragma once

#include "dhnf/hyper.hpp"
#include "dhnf/poincare.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>

namespace dhnf {

using Json = nlohmann::ordered_json;

enum class InputMode { pr, complex };

struct InputOptions {
    int max_grade = 4;
    int level = 2;  // -1 = "inf"
    ComplementStyle style = ComplementStyle::paper;
    bool force = false;
    Override override_branch = Override::none;
    SolvePath path = SolvePath::generic;

    friend bool operator==(const InputOptions&, const InputOptions&) = default;
};

/// Values a run is compared against, such as hand-derived or transcribed
/// figures. Differences are logged as discrepancies and never enforced.
struct Reference {
    std::map<std::pair<int, int>, GElement> generators;  // (level, grade)
    std::optional<GElement> final_form;
    int final_through = -1;  // grade cap of the final-form comparison, -1 = max_grade

    bool empty() const { return generators.empty() && !final_form; }
    friend bool operator==(const Reference&, const Reference&) = default;
};

struct InputSpec {
    InputMode mode = InputMode::pr;
    std::string omega1 = "omega1";
    std::string omega2 = "omega2";
    SystemPR pr;          // pr mode
    ComplexVF complex;    // complex mode, linear part included
    InputOptions options;
    Reference reference;

    friend bool operator==(const InputSpec& a, const InputSpec& b) {
        return a.mode == b.mode && a.omega1 == b.omega1 && a.omega2 == b.omega2 && a.pr == b.pr &&
               a.complex == b.complex && a.options == b.options && a.reference == b.reference;
    }
};

/// Schema errors carry the JSON path of the offending value.
InputSpec parse_input(const Json& doc);
InputSpec parse_input_text(const std::string& text);
Json emit_input(const InputSpec& spec);

struct PipelineResult {
    NormalFormReport report;
    std::optional<FirstLevelResult> first_level;
};

/// First level (complex mode), then the requested level, then verification
/// and the comparison with spec.reference.
PipelineResult run_pipeline(const InputSpec& spec);

/// Appends one discrepancy per reference coefficient that differs from the report.
void compare_reference(const Reference& reference, NormalFormReport& report);

Json report_to_json(const PipelineResult& result);
/// Rebuilds the parts of a report needed to re-run verification.
PipelineResult report_from_json(const Json& doc, const InputSpec& spec);

/// Re-checks a stored report against its input.
Verification verify_report(const InputSpec& spec, const PipelineResult& stored);

std::string level_to_string(int level);

}  // namespace dhnf
