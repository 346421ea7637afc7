// SPDX-License-Identifier: MIT
#include "dhnf/io.hpp"

#include "dhnf/errors.hpp"
#include "dhnf/verify.hpp"

#include <algorithm>
#include <set>

namespace dhnf {

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& what) {
    throw EngineError(ErrorKind::Schema, path + ": " + what);
}

const Json& require(const Json& obj, const std::string& key, const std::string& path) {
    if (!obj.is_object()) schema(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) schema(path + "." + key, "missing");
    return *it;
}

std::string get_string(const Json& v, const std::string& path) {
    if (!v.is_string()) schema(path, "expected a string");
    return v.get<std::string>();
}

int get_int(const Json& v, const std::string& path) {
    if (!v.is_number_integer()) schema(path, "expected an integer");
    return v.get<int>();
}

template <class F>
auto at_path(const std::string& path, F&& f) {
    try {
        return f();
    } catch (const ScalarError& e) {
        schema(path, e.what());
    } catch (const std::invalid_argument& e) {
        schema(path, e.what());
    } catch (const EngineError& e) {
        if (e.kind() != ErrorKind::Schema) throw;
        schema(path, e.what());
    }
}

InputOptions parse_options(const Json& o, const std::string& path) {
    InputOptions opt;
    if (!o.is_object()) schema(path, "expected an object");
    for (const auto& [key, v] : o.items()) {
        std::string p = path + "." + key;
        if (key == "grade") {
            opt.max_grade = get_int(v, p);
            if (opt.max_grade < 1) schema(p, "grade cap must be at least 1");
        } else if (key == "level") {
            if (v.is_string() && v.get<std::string>() == "inf") opt.level = -1;
            else {
                opt.level = get_int(v, p);
                if (opt.level < 1) schema(p, "level must be at least 1 or \"inf\"");
            }
        } else if (key == "style") {
            opt.style = at_path(p, [&] { return parse_style(get_string(v, p)); });
        } else if (key == "force") {
            if (!v.is_boolean()) schema(p, "expected a boolean");
            opt.force = v.get<bool>();
        } else if (key == "override") {
            opt.override_branch = parse_override(get_string(v, p));
        } else if (key == "path") {
            std::string s = get_string(v, p);
            if (s == "generic") opt.path = SolvePath::generic;
            else if (s == "lemma") opt.path = SolvePath::lemma;
            else schema(p, "unknown solve path '" + s + "'");
        } else {
            schema(p, "unknown option");
        }
    }
    return opt;
}

Json terms_json(const GElement& g) {
    Json arr = Json::array();
    for (const auto& [t, c] : g.terms()) arr.push_back({{"term", name(t)}, {"coeff", to_string(c)}});
    return arr;
}

GElement parse_terms(const Json& arr, const std::string& path) {
    if (!arr.is_array()) schema(path, "expected an array");
    GElement g;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        std::string p = path + "[" + std::to_string(i) + "]";
        PRTerm t = at_path(p + ".term", [&] { return parse_term(get_string(require(arr[i], "term", p), p + ".term")); });
        Rational c = at_path(p + ".coeff",
                             [&] { return parse_rational(get_string(require(arr[i], "coeff", p), p + ".coeff")); });
        g.add_term(t, c);
    }
    return g;
}

Json monomials_json(const ComplexVF& v) {
    Json arr = Json::array();
    for (const auto& [m, c] : v.terms())
        arr.push_back({{"exps", m.e}, {"component", m.component}, {"coeff", to_string(c)}});
    return arr;
}

ComplexVF parse_monomials(const Json& arr, const std::string& path) {
    if (!arr.is_array()) schema(path, "expected an array");
    ComplexVF v;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        std::string p = path + "[" + std::to_string(i) + "]";
        const Json& ex = require(arr[i], "exps", p);
        if (!ex.is_array() || ex.size() != 4) schema(p + ".exps", "expected four exponents");
        CMono m;
        for (int k = 0; k < 4; ++k) {
            m.e[k] = get_int(ex[k], p + ".exps[" + std::to_string(k) + "]");
            if (m.e[k] < 0) schema(p + ".exps[" + std::to_string(k) + "]", "negative exponent");
        }
        m.component = get_int(require(arr[i], "component", p), p + ".component");
        if (m.component < 1 || m.component > 4) schema(p + ".component", "component must be 1..4");
        FreqScalar c = at_path(p + ".coeff", [&] {
            return parse_freq_scalar(get_string(require(arr[i], "coeff", p), p + ".coeff"));
        });
        v.add_term(m, c);
    }
    return v;
}

Json options_json(const InputOptions& o) {
    Json j;
    j["grade"] = o.max_grade;
    if (o.level < 0) j["level"] = "inf";
    else j["level"] = o.level;
    j["style"] = to_string(o.style);
    j["force"] = o.force;
    j["override"] = to_string(o.override_branch);
    j["path"] = o.path == SolvePath::lemma ? "lemma" : "generic";
    return j;
}

Json system_json(const SystemPR& s) {
    Json j;
    j["theta"] = s.includes_theta ? Json(kThetaLabel) : Json(nullptr);
    j["terms"] = terms_json(s.body);
    return j;
}

Json names_json(const std::vector<PRTerm>& ts) {
    Json arr = Json::array();
    for (const auto& t : ts) arr.push_back(name(t));
    return arr;
}

Reference parse_reference(const Json& doc, const std::string& path) {
    if (!doc.is_object()) schema(path, "expected an object");
    Reference ref;
    if (auto it = doc.find("generators"); it != doc.end()) {
        if (!it->is_array()) schema(path + ".generators", "expected an array");
        for (std::size_t i = 0; i < it->size(); ++i) {
            std::string p = path + ".generators[" + std::to_string(i) + "]";
            const Json& g = (*it)[i];
            int level = get_int(require(g, "level", p), p + ".level");
            int grade = get_int(require(g, "grade", p), p + ".grade");
            if (level < 2) schema(p + ".level", "level must be at least 2");
            if (grade < 2) schema(p + ".grade", "grade must be at least 2");
            if (!ref.generators.emplace(std::pair{level, grade}, parse_terms(require(g, "terms", p), p + ".terms"))
                     .second)
                schema(p, "duplicate (level, grade)");
        }
    }
    if (auto it = doc.find("final_form"); it != doc.end()) {
        std::string p = path + ".final_form";
        if (!it->is_object()) schema(p, "expected an object");
        ref.final_form = parse_terms(require(*it, "terms", p), p + ".terms");
        if (auto t = it->find("through_grade"); t != it->end()) {
            ref.final_through = get_int(*t, p + ".through_grade");
            if (ref.final_through < 1) schema(p + ".through_grade", "must be at least 1");
        }
    }
    return ref;
}

Json reference_json(const Reference& ref) {
    Json j;
    if (!ref.generators.empty()) {
        Json arr = Json::array();
        for (const auto& [key, g] : ref.generators)
            arr.push_back({{"level", key.first}, {"grade", key.second}, {"terms", terms_json(g)}});
        j["generators"] = arr;
    }
    if (ref.final_form) {
        Json f;
        if (ref.final_through >= 0) f["through_grade"] = ref.final_through;
        f["terms"] = terms_json(*ref.final_form);
        j["final_form"] = f;
    }
    return j;
}

}  // namespace

std::string level_to_string(int level) { return level < 0 ? "inf" : std::to_string(level); }

InputSpec parse_input(const Json& doc) {
    InputSpec spec;
    std::string mode = get_string(require(doc, "mode", "$"), "$.mode");
    if (mode == "pr") spec.mode = InputMode::pr;
    else if (mode == "complex") spec.mode = InputMode::complex;
    else schema("$.mode", "expected \"pr\" or \"complex\"");
    if (auto it = doc.find("frequencies"); it != doc.end()) {
        if (!it->is_array() || it->size() != 2) schema("$.frequencies", "expected two labels");
        spec.omega1 = get_string((*it)[0], "$.frequencies[0]");
        spec.omega2 = get_string((*it)[1], "$.frequencies[1]");
    }
    if (auto it = doc.find("options"); it != doc.end()) spec.options = parse_options(*it, "$.options");
    if (auto it = doc.find("reference"); it != doc.end()) spec.reference = parse_reference(*it, "$.reference");
    spec.pr.omega1 = spec.omega1;
    spec.pr.omega2 = spec.omega2;
    if (spec.mode == InputMode::pr) {
        spec.pr.body = parse_terms(require(doc, "terms", "$"), "$.terms");
        for (const auto& [t, c] : spec.pr.body.terms())
            if (t.grade() == 0) schema("$.terms", "grade-0 term " + name(t) + " belongs to the linear part");
        if (auto it = doc.find("theta"); it != doc.end()) {
            if (!it->is_boolean()) schema("$.theta", "expected a boolean");
            spec.pr.includes_theta = it->get<bool>();
        }
    } else {
        spec.complex = parse_monomials(require(doc, "monomials", "$"), "$.monomials");
        if (spec.complex.homogeneous(1).is_zero()) spec.complex += linear_part_A();
    }
    return spec;
}

InputSpec parse_input_text(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const Json::parse_error& e) {
        schema("$", std::string("malformed JSON: ") + e.what());
    }
    return parse_input(doc);
}

Json emit_input(const InputSpec& spec) {
    Json j;
    j["mode"] = spec.mode == InputMode::pr ? "pr" : "complex";
    j["frequencies"] = {spec.omega1, spec.omega2};
    if (spec.mode == InputMode::pr) {
        j["theta"] = spec.pr.includes_theta;
        j["terms"] = terms_json(spec.pr.body);
    } else {
        j["monomials"] = monomials_json(spec.complex);
    }
    j["options"] = options_json(spec.options);
    if (!spec.reference.empty()) j["reference"] = reference_json(spec.reference);
    return j;
}

void compare_reference(const Reference& reference, NormalFormReport& report) {
    auto diff = [&](const std::string& where, const GElement& want, const GElement& got) {
        std::set<PRTerm> terms;
        for (const auto& [t, c] : want.terms()) terms.insert(t);
        for (const auto& [t, c] : got.terms()) terms.insert(t);
        for (const auto& t : terms)
            if (want.coeff(t) != got.coeff(t))
                report.discrepancies.push_back({where + " " + name(t), to_string(want.coeff(t)),
                                                to_string(got.coeff(t)), "reference value differs from the computation"});
    };
    for (const auto& [key, want] : reference.generators) {
        std::string where = "generator level " + std::to_string(key.first) + " grade " + std::to_string(key.second);
        auto rec = std::find_if(report.records.begin(), report.records.end(), [&](const GradeRecord& r) {
            return r.level == key.first && r.grade == key.second;
        });
        if (rec == report.records.end()) {
            report.discrepancies.push_back({where, to_string(want), "", "no record for this level and grade"});
            continue;
        }
        diff(where, want, rec->generator.element);
    }
    if (reference.final_form) {
        int cap = reference.final_through < 0 ? report.max_grade : std::min(reference.final_through, report.max_grade);
        diff("final form", reference.final_form->truncated(cap), report.final_form.body.truncated(cap));
    }
}

PipelineResult run_pipeline(const InputSpec& spec) {
    PipelineResult out;
    SystemPR system = spec.pr;
    if (spec.mode == InputMode::complex) {
        out.first_level = first_level_normalize(spec.complex, spec.options.max_grade);
        system = out.first_level->normal_form;
        system.omega1 = spec.omega1;
        system.omega2 = spec.omega2;
    }
    LevelOptions lo;
    lo.max_grade = spec.options.max_grade;
    lo.level = spec.options.level;
    lo.style = spec.options.style;
    lo.force = spec.options.force;
    lo.override_branch = spec.options.override_branch;
    lo.path = spec.options.path;
    if (lo.level == 1) {
        NormalFormReport& r = out.report;
        r.input = system;
        r.input.body = system.body.truncated(lo.max_grade);
        r.max_grade = lo.max_grade;
        r.level = 1;
        r.style = lo.style;
        r.final_form = r.input;
        r.verification = verify_run(r.input, r);
    } else {
        out.report = s_level_normalize(system, lo);
    }
    if (out.first_level) out.report.verification = verify_run(spec.complex, out.first_level->generators, out.report);
    compare_reference(spec.reference, out.report);
    return out;
}

Json report_to_json(const PipelineResult& result) {
    const NormalFormReport& r = result.report;
    Json j;
    j["max_grade"] = r.max_grade;
    j["level"] = r.level < 0 ? Json("inf") : Json(r.level);
    j["style"] = to_string(r.style);
    if (r.case_tag) {
        const CaseTag& t = *r.case_tag;
        Json c;
        c["variant"] = to_string(t.variant);
        c["branch"] = t.branch;
        if (t.variant == CaseVariant::I) c["pqrs"] = {t.p, t.q, t.r, t.s};
        else if (t.p != 0) c["pq"] = {t.p, t.q};
        c["override"] = to_string(t.override_branch);
        j["case"] = c;
    } else {
        j["case"] = nullptr;
    }
    if (result.first_level) {
        Json fl;
        fl["normal_form"] = monomials_json(result.first_level->normal_form_complex);
        Json gens = Json::array();
        for (const auto& [deg, g] : result.first_level->generators)
            gens.push_back({{"degree", deg}, {"monomials", monomials_json(g)}});
        fl["generators"] = gens;
        j["first_level"] = fl;
    }
    j["input"] = system_json(r.input);
    Json ranks = Json::array();
    for (const auto& rec : r.records)
        ranks.push_back({{"level", rec.level}, {"grade", rec.grade}, {"rank", rec.rank},
                         {"partition", rec.partition.empty() ? Json(nullptr) : Json(rec.partition)}});
    j["ranks"] = ranks;
    Json recs = Json::array();
    for (const auto& rec : r.records) {
        Json x;
        x["level"] = rec.level;
        x["grade"] = rec.grade;
        x["path"] = rec.path;
        x["removed"] = names_json(rec.removed);
        x["surviving"] = names_json(rec.surviving);
        if (rec.predicted) x["predicted"] = names_json({rec.predicted->begin(), rec.predicted->end()});
        else x["predicted"] = nullptr;
        Json comps = Json::array();
        for (const auto& c : rec.generator.components) comps.push_back(terms_json(c));
        x["generator"] = {{"terms", terms_json(rec.generator.element)},
                          {"components", comps},
                          {"certified", rec.generator.certified}};
        recs.push_back(x);
    }
    j["generators"] = recs;
    j["final_form"] = system_json(r.final_form);
    Json mism = Json::array();
    for (const auto& m : r.verification.mismatches) mism.push_back(m);
    j["verification"] = {{"status", r.verification.pass ? "pass" : "fail"}, {"mismatches", mism}};
    Json disc = Json::array();
    for (const auto& d : r.discrepancies)
        disc.push_back({{"where", d.where}, {"expected", d.expected}, {"computed", d.computed}, {"note", d.note}});
    j["discrepancies"] = disc;
    return j;
}

PipelineResult report_from_json(const Json& doc, const InputSpec& spec) {
    PipelineResult out;
    NormalFormReport& r = out.report;
    r.max_grade = get_int(require(doc, "max_grade", "$"), "$.max_grade");
    const Json& lv = require(doc, "level", "$");
    r.level = lv.is_string() && lv.get<std::string>() == "inf" ? -1 : get_int(lv, "$.level");
    r.style = parse_style(get_string(require(doc, "style", "$"), "$.style"));
    r.input = spec.pr;
    r.input.body = parse_terms(require(require(doc, "input", "$"), "terms", "$.input"), "$.input.terms");
    r.final_form = r.input;
    r.final_form.body =
        parse_terms(require(require(doc, "final_form", "$"), "terms", "$.final_form"), "$.final_form.terms");
    const Json& gens = require(doc, "generators", "$");
    if (!gens.is_array()) schema("$.generators", "expected an array");
    for (std::size_t i = 0; i < gens.size(); ++i) {
        std::string p = "$.generators[" + std::to_string(i) + "]";
        GradeRecord rec;
        rec.level = get_int(require(gens[i], "level", p), p + ".level");
        rec.grade = get_int(require(gens[i], "grade", p), p + ".grade");
        rec.generator.level = rec.level;
        rec.generator.grade = rec.grade;
        rec.generator.element =
            parse_terms(require(require(gens[i], "generator", p), "terms", p + ".generator"), p + ".generator.terms");
        r.records.push_back(rec);
    }
    if (spec.mode == InputMode::complex) {
        const Json& fl = require(doc, "first_level", "$");
        const Json& g = require(fl, "generators", "$.first_level");
        FirstLevelResult flr;
        for (std::size_t i = 0; i < g.size(); ++i) {
            std::string p = "$.first_level.generators[" + std::to_string(i) + "]";
            int deg = get_int(require(g[i], "degree", p), p + ".degree");
            flr.generators.emplace_back(deg, parse_monomials(require(g[i], "monomials", p), p + ".monomials"));
        }
        flr.normal_form = r.input;
        out.first_level = flr;
    }
    return out;
}

Verification verify_report(const InputSpec& spec, const PipelineResult& stored) {
    if (spec.mode == InputMode::complex) {
        if (!stored.first_level) return {false, {"report has no first-level chain"}};
        return verify_run(spec.complex, stored.first_level->generators, stored.report);
    }
    SystemPR input = spec.pr;
    input.body = input.body.truncated(stored.report.max_grade);
    if (!(input == stored.report.input)) return {false, {"report input differs from the given input"}};
    return verify_run(input, stored.report);
}

}  // namespace dhnf
