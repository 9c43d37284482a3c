// Command-line derivative calculator for the expression language.
//
// Exit codes: 0 success, 1 parse or validation error, 2 numeric domain
// error, 3 oracle check failure under --check.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nestad/errors.hpp"
#include "nestad/eval.hpp"
#include "nestad/parse.hpp"
#include "nestad/report.hpp"

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream file(path);
    if (!file) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nestad - forward-mode derivative calculator with nested derivatives"};
    app.require_subcommand(1);

    std::string input;
    bool json = false;
    bool check = false;
    double fd_step = 0.0;
    int precision = 17;

    CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate a program from a file or - for stdin");
    eval_cmd->add_option("input", input, "program file, or - for stdin")->required();
    eval_cmd->add_flag("--json", json, "emit the report as JSON");
    eval_cmd->add_flag("--check", check, "cross-check derivatives against the oracles");
    eval_cmd->add_option("--fd-step", fd_step, "fixed finite-difference step (default: automatic)");
    eval_cmd->add_option("--precision", precision, "significant digits in text output")
        ->check(CLI::Range(1, 17));

    CLI11_PARSE(app, argc, argv);

    std::string source;
    try {
        source = read_input(input);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }

    nestad::Program program;
    try {
        program = nestad::parse(source);
    } catch (const nestad::ParseError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }

    nestad::EvalReport report;
    try {
        report = nestad::evaluate(program);
        if (check) {
            nestad::CheckOptions options;
            if (fd_step > 0.0) {
                options.fd.step_first = fd_step;
                options.fd.step_second = fd_step;
            }
            report.check = nestad::run_check(program, report, options);
        }
    } catch (const nestad::ArithmeticError& err) {
        std::cerr << "error: " << err.message_with_location() << "\n";
        return 2;
    } catch (const nestad::NonFiniteError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }

    if (json)
        std::cout << nestad::to_json(report) << "\n";
    else
        std::cout << nestad::to_text(report, precision);

    if (report.check && !report.check->ok) return 3;
    return 0;
}
