// dimcalc - Krull/valuative dimension calculator for pullback constructions
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "dimcalc/exec.hpp"
#include "dimcalc/suites.hpp"

namespace {

int run_eval(const std::string& path, bool json, bool trace) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open '" << path << "'\n";
        return 1;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();

    dimcalc::SourceProgram program;
    try {
        program = dimcalc::parse(buffer.str());
    } catch (const dimcalc::ParseError& e) {
        std::cerr << path << ":" << e.span().line << ":" << e.span().col << ": error: "
                  << e.what() << "\n";
        return 1;
    }
    dimcalc::ExecOptions options{json, trace};
    return dimcalc::execute(program, options, std::cout, std::cerr);
}

int run_check(const dimcalc::GeneratorConfig& config, bool json) {
    dimcalc::SuiteReport report = dimcalc::run_suites(config);
    std::cout << (json ? dimcalc::render_json(report) : dimcalc::render_text(report));
    if (json) std::cout << "\n";
    return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dimension calculator for k-algebras arising from pullbacks"};
    app.require_subcommand(1);

    std::string file;
    bool eval_json = false, eval_trace = false;
    CLI::App* eval = app.add_subcommand("eval", "evaluate the queries of a program file");
    eval->add_option("file", file, "program file")->required();
    eval->add_flag("--json", eval_json, "machine-readable report");
    eval->add_flag("--trace", eval_trace, "print full derivation traces");

    dimcalc::GeneratorConfig config;
    bool check_json = false;
    CLI::App* check = app.add_subcommand("check", "run the randomized property suites");
    check->add_option("--seed", config.seed, "generator seed");
    check->add_option("--count", config.count, "number of generated pairs");
    check->add_option("--depth", config.max_depth, "maximum nesting depth");
    check->add_flag("--json", check_json, "machine-readable report");

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval->parsed()) return run_eval(file, eval_json, eval_trace);
        return run_check(config, check_json);
    } catch (const dimcalc::InternalError& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return 2;
    }
}
