// SPDX-License-Identifier: MIT
#include "dhnf/errors.hpp"
#include "dhnf/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

dhnf::Coeffs4 parse_coeffs(const std::string& text) {
    dhnf::Coeffs4 out;
    std::stringstream ss(text);
    std::string item;
    int i = 0;
    while (std::getline(ss, item, ',')) {
        if (i == 4) throw std::runtime_error("--coeffs takes four values");
        out[i++] = dhnf::parse_rational(item);
    }
    if (i != 4) throw std::runtime_error("--coeffs takes four values");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Second- and higher-level normal forms of double Hopf vector fields"};
    app.require_subcommand(1);

    std::string input, report_path, level = "", style = "", coeffs, rot = "0,0,0,0", output;
    int grade = 0, n = 0;
    bool force = false;

    auto* normalize = app.add_subcommand("normalize", "Normalize an input system and print the report");
    normalize->add_option("--input", input, "Input JSON")->required()->check(CLI::ExistingFile);
    normalize->add_option("--level", level, "Level: 1, 2, 3, ... or inf");
    normalize->add_option("--grade", grade, "Grade cap N");
    normalize->add_option("--style", style, "Complement style")->check(CLI::IsMember({"paper", "lex"}));
    normalize->add_flag("--force", force, "Proceed with a degenerate cubic part");
    normalize->add_option("--output", output, "Write the report here instead of stdout");

    auto* verify = app.add_subcommand("verify", "Re-check a stored report against its input");
    verify->add_option("--input", input, "Input JSON")->required()->check(CLI::ExistingFile);
    verify->add_option("--report", report_path, "Report JSON")->required()->check(CLI::ExistingFile);

    auto* rank = app.add_subcommand("rank", "Rank of the grade-n homological matrix");
    rank->add_option("--n", n, "Grade")->required();
    rank->add_option("--coeffs", coeffs, "a01_1,a01_2,a10_1,a10_2")->required();
    rank->add_option("--rot", rot, "b01_1,b01_2,b10_1,b10_2");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*normalize) {
            dhnf::InputSpec spec = dhnf::parse_input_text(slurp(input));
            if (!level.empty()) spec.options.level = level == "inf" ? -1 : std::stoi(level);
            if (grade > 0) spec.options.max_grade = grade;
            if (!style.empty()) spec.options.style = dhnf::parse_style(style);
            if (force) spec.options.force = true;
            dhnf::PipelineResult res = dhnf::run_pipeline(spec);
            std::string text = dhnf::report_to_json(res).dump(2) + "\n";
            if (output.empty()) std::cout << text;
            else std::ofstream(output) << text;
            if (!res.report.verification.pass) {
                std::cerr << "verification failed\n";
                for (const auto& m : res.report.verification.mismatches) std::cerr << "  " << m << "\n";
                return 1;
            }
            return 0;
        }
        if (*verify) {
            dhnf::InputSpec spec = dhnf::parse_input_text(slurp(input));
            dhnf::PipelineResult stored = dhnf::report_from_json(dhnf::Json::parse(slurp(report_path)), spec);
            dhnf::Verification v = dhnf::verify_report(spec, stored);
            std::cout << (v.pass ? "pass" : "fail") << "\n";
            for (const auto& m : v.mismatches) std::cout << "  " << m << "\n";
            return v.pass ? 0 : 1;
        }
        if (*rank) {
            dhnf::SystemPR s;
            dhnf::Coeffs4 a = parse_coeffs(coeffs), b = parse_coeffs(rot);
            dhnf::PRTerm p1[] = {dhnf::P(1, 0, 1), dhnf::P(2, 0, 1), dhnf::P(1, 1, 0), dhnf::P(2, 1, 0)};
            dhnf::PRTerm r1[] = {dhnf::R(1, 0, 1), dhnf::R(2, 0, 1), dhnf::R(1, 1, 0), dhnf::R(2, 1, 0)};
            for (int i = 0; i < 4; ++i) {
                s.body.add_term(p1[i], a[i]);
                s.body.add_term(r1[i], b[i]);
            }
            dhnf::HomMatrix m = dhnf::assemble_A(n, s);
            dhnf::Json j;
            j["n"] = n;
            j["rows"] = m.full.rows();
            j["cols"] = m.full.cols();
            j["rank"] = dhnf::rank_exact(m);
            try {
                dhnf::CaseTag tag = dhnf::classify_case(a);
                j["case"] = dhnf::to_string(tag.variant);
                j["branch"] = tag.branch;
                if (tag.variant == dhnf::CaseVariant::I)
                    j["partition"] = "P" + std::to_string(dhnf::partition_classify(n, tag.p, tag.q, tag.r, tag.s).index);
            } catch (const dhnf::EngineError&) {
                j["case"] = nullptr;
            }
            std::cout << j.dump(2) << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
