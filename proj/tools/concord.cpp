#include "concord/problem.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::string normalize(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            if (!out.empty() && out.back() != ' ') out += ' ';
        } else {
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"concord: exact coherence checking, propagation, and entailment\n"
                 "over conditional events"};
    app.require_subcommand(1);

    bool json = false;
    bool table = false;
    int max_atoms = 8;
    app.add_flag("--json", json, "emit machine-readable JSON reports");
    app.add_flag("--table", table, "emit value tables (constituent -> expression)");
    app.add_option("--max-atoms", max_atoms, "atom budget per problem file")
        ->default_val(8)
        ->check(CLI::PositiveNumber);

    auto* check = app.add_subcommand("check", "run the queries of .problem files");
    std::vector<std::string> files;
    check->add_option("files", files, "problem files")
        ->required()
        ->check(CLI::ExistingFile);
    check->fallthrough();

    auto* rules = app.add_subcommand("rules", "verify the builtin inference rules");
    std::vector<std::string> rule_words;
    rules->add_option("name", rule_words, "a single rule name (default: all rules)");
    rules->fallthrough();

    CLI11_PARSE(app, argc, argv);

    int verbosity = 0;
    if (const char* v = std::getenv("CONCORD_VERBOSE")) verbosity = std::atoi(v);
    concord::RunOptions opts{json, table, verbosity};

    if (rules->parsed()) {
        std::vector<concord::RuleInstance> selected = concord::builtin_rules();
        if (!rule_words.empty()) {
            std::string want;
            for (const auto& w : rule_words) {
                if (!want.empty()) want += ' ';
                want += w;
            }
            want = normalize(want);
            std::vector<concord::RuleInstance> matched;
            for (auto& r : selected) {
                if (normalize(r.name) == want) matched.push_back(std::move(r));
            }
            if (matched.empty()) {
                std::cerr << "unknown rule '" << want << "'; builtin rules:\n";
                for (const auto& r : selected) std::cerr << "  " << r.name << "\n";
                return 1;
            }
            selected = std::move(matched);
        }
        concord::RunResult res = concord::run_rules(selected, opts);
        std::cout << res.output;
        return res.exit_code;
    }

    int exit_code = 0;
    for (const auto& file : files) {
        std::ifstream in(file);
        if (!in) {
            std::cerr << file << ": cannot open\n";
            return 1;
        }
        std::stringstream buffer;
        buffer << in.rdbuf();
        try {
            concord::ProblemFile problem = concord::parse_problem(buffer.str(), max_atoms);
            if (files.size() > 1 && !json) std::cout << "== " << file << " ==\n";
            concord::RunResult res = concord::run_problem(problem, opts);
            std::cout << res.output;
            exit_code = std::max(exit_code, res.exit_code);
        } catch (const concord::ParseError& e) {
            std::cerr << file << ":" << e.line << ":" << e.column << ": error: " << e.what()
                      << "\n";
            return 2;
        } catch (const concord::Error& e) {
            std::cerr << file << ": error: " << e.what() << "\n";
            exit_code = std::max(exit_code, 1);
        }
    }
    return exit_code;
}
