#pragma once

#include "concord/rules.hpp"

#include <map>
#include <string>
#include <vector>

namespace concord {

struct Query {
    enum class Kind { Coherent, Extend, Entails, Iterated, Conjoin, Rule };
    Kind kind = Kind::Coherent;
    int line = 0;
    std::string display;                     // the query as written
    std::string extend_name;                 // Extend
    std::vector<std::string> premise_names;  // Entails / Iterated / Conjoin
    std::string conclusion_name;             // Entails / Iterated
    std::string rule_name;                   // Rule
};

struct ProblemFile {
    AtomTable atoms;
    std::vector<std::string> cond_names;  // declaration order
    std::map<std::string, ConditionalEvent> conds;
    std::vector<std::pair<std::string, Rational>> assessments;  // declaration order
    std::vector<Query> queries;
};

/// Parses the problem DSL. Statements: `atom A B C;`, `cond c1 = C | A;`
/// (the last `|` outside parentheses is the conditioning bar), `assess
/// P(c1) = 1/2;`. Queries: `coherent?`, `extend c?`, `entails {c1, c2} =>
/// c3?`, `iterated c3 | (c1 & c2)?`, `conjoin (c1 & c2)?`, `rule <name>?`.
/// `#` starts a line comment. Decimal literals convert exactly; scientific
/// notation is rejected. Throws ParseError with line/column on syntax
/// errors, undeclared or duplicate names, and malformed literals;
/// UnsatisfiableAntecedent on a `cond` whose antecedent is impossible.
ProblemFile parse_problem(const std::string& text, int max_atoms = 8);

struct RunOptions {
    bool json = false;
    bool table = false;
    int verbosity = 0;  // 1 adds derivation notes and canonical bindings
};

struct RunResult {
    int exit_code = 0;  // 0 all queries executed, 1 some query failed
    std::string output;
};

/// Executes the queries in order; a failing query is reported and does not
/// stop the rest.
RunResult run_problem(const ProblemFile& p, const RunOptions& opts);

/// Verifies the given builtin rules and renders the reports.
RunResult run_rules(const std::vector<RuleInstance>& rules, const RunOptions& opts);

/// Value table of a quantity, one row per constituent class.
std::string crq_table(const Crq& q, const SymbolTable& symbols, const AtomTable& atoms);

}  // namespace concord
