#include "concord/problem.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstring>
#include <sstream>

namespace concord {

namespace {

using ordered_json = nlohmann::ordered_json;

struct Token {
    enum class Kind { Ident, Number, Punct, End };
    Kind kind = Kind::End;
    std::string text;
    int line = 1;
    int col = 1;
};

std::vector<Token> lex(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    const size_t n = text.size();
    auto step = [&] {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++i;
    };
    while (i < n) {
        char c = text[i];
        if (c == '#') {
            while (i < n && text[i] != '\n') step();
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            step();
            continue;
        }
        Token t;
        t.line = line;
        t.col = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            t.kind = Token::Kind::Ident;
            while (i < n && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
                t.text += text[i];
                step();
            }
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            t.kind = Token::Kind::Number;
            auto digits = [&] {
                while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
                    t.text += text[i];
                    step();
                }
            };
            digits();
            if (i < n && (text[i] == '.' || text[i] == '/')) {
                t.text += text[i];
                step();
                if (i >= n || !std::isdigit(static_cast<unsigned char>(text[i]))) {
                    throw ParseError("malformed number '" + t.text + "'", line, col);
                }
                digits();
            }
            if (i < n && (text[i] == 'e' || text[i] == 'E')) {
                throw ParseError("scientific notation is not supported; write an exact rational",
                                 line, col);
            }
            if (i < n &&
                (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_' ||
                 text[i] == '.')) {
                throw ParseError("malformed number", line, col);
            }
        } else if (c == '=' && i + 1 < n && text[i + 1] == '>') {
            t.kind = Token::Kind::Punct;
            t.text = "=>";
            step();
            step();
        } else if (std::strchr(";?=~&|(){},", c) != nullptr) {
            t.kind = Token::Kind::Punct;
            t.text = std::string(1, c);
            step();
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
        out.push_back(std::move(t));
    }
    out.push_back(Token{Token::Kind::End, "", line, col});
    return out;
}

class Parser {
public:
    Parser(std::vector<Token> toks, int max_atoms)
        : toks_(std::move(toks)), max_atoms_(max_atoms) {}

    ProblemFile parse() {
        while (peek().kind != Token::Kind::End) statement();
        return std::move(out_);
    }

private:
    std::vector<Token> toks_;
    size_t pos_ = 0;
    int max_atoms_;
    ProblemFile out_;

    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }

    [[noreturn]] void fail(const Token& t, const std::string& msg) {
        throw ParseError(msg, t.line, t.col);
    }

    bool at_punct(const std::string& p) const {
        return peek().kind == Token::Kind::Punct && peek().text == p;
    }

    void expect_punct(const std::string& p, const std::string& where) {
        if (!at_punct(p)) fail(peek(), "expected '" + p + "' " + where);
        ++pos_;
    }

    std::string expect_ident(const std::string& what) {
        if (peek().kind != Token::Kind::Ident) fail(peek(), "expected " + what);
        return next().text;
    }

    bool is_cond(const std::string& name) const { return out_.conds.count(name) > 0; }
    bool is_atom(const std::string& name) const { return out_.atoms.index(name).has_value(); }

    /// Conditional referred to by name: a declared conditional, or an atom
    /// read as the unconditional event.
    ConditionalEvent resolve(const Token& t) {
        auto it = out_.conds.find(t.text);
        if (it != out_.conds.end()) return it->second;
        if (auto idx = out_.atoms.index(t.text)) {
            return ConditionalEvent(EventExpr::atom(*idx), EventExpr::truth(), out_.atoms);
        }
        fail(t, "undeclared name '" + t.text + "'");
    }

    EventExpr parse_primary() {
        if (at_punct("~")) {
            ++pos_;
            return !parse_primary();
        }
        if (at_punct("(")) {
            ++pos_;
            EventExpr e = parse_or();
            expect_punct(")", "to close the parenthesis");
            return e;
        }
        if (peek().kind != Token::Kind::Ident) fail(peek(), "expected an atom name");
        const Token& t = next();
        if (auto idx = out_.atoms.index(t.text)) return EventExpr::atom(*idx);
        if (is_cond(t.text)) {
            fail(t, "conditional '" + t.text + "' cannot appear inside an event expression");
        }
        fail(t, "undeclared atom '" + t.text + "'");
    }

    EventExpr parse_and() {
        EventExpr e = parse_primary();
        while (at_punct("&")) {
            ++pos_;
            e = e & parse_primary();
        }
        return e;
    }

    EventExpr parse_or() {
        EventExpr e = parse_and();
        while (at_punct("|")) {
            ++pos_;
            e = e | parse_and();
        }
        return e;
    }

    void statement() {
        const Token& kw = peek();
        if (kw.kind != Token::Kind::Ident) fail(kw, "expected a statement or query keyword");
        const std::string& k = kw.text;
        if (k == "atom") {
            parse_atoms();
        } else if (k == "cond") {
            parse_cond();
        } else if (k == "assess") {
            parse_assess();
        } else if (k == "coherent") {
            ++pos_;
            Query q;
            q.kind = Query::Kind::Coherent;
            q.line = kw.line;
            q.display = "coherent?";
            expect_punct("?", "to end the query");
            out_.queries.push_back(std::move(q));
        } else if (k == "extend") {
            ++pos_;
            Query q;
            q.kind = Query::Kind::Extend;
            q.line = kw.line;
            const Token& t = peek();
            q.extend_name = expect_ident("a conditional or atom name");
            resolve(t);
            q.display = "extend " + q.extend_name + "?";
            expect_punct("?", "to end the query");
            out_.queries.push_back(std::move(q));
        } else if (k == "entails") {
            parse_entails(kw);
        } else if (k == "iterated") {
            parse_iterated(kw);
        } else if (k == "conjoin") {
            parse_conjoin(kw);
        } else if (k == "rule") {
            ++pos_;
            Query q;
            q.kind = Query::Kind::Rule;
            q.line = kw.line;
            std::string name;
            while (peek().kind == Token::Kind::Ident) {
                if (!name.empty()) name += ' ';
                name += next().text;
            }
            if (name.empty()) fail(peek(), "expected a rule name");
            q.rule_name = name;
            q.display = "rule " + name + "?";
            expect_punct("?", "to end the query");
            out_.queries.push_back(std::move(q));
        } else {
            fail(kw, "unknown keyword '" + k + "'");
        }
    }

    void parse_atoms() {
        ++pos_;
        if (peek().kind != Token::Kind::Ident) fail(peek(), "expected an atom name");
        while (peek().kind == Token::Kind::Ident) {
            const Token& t = next();
            if (is_atom(t.text) || is_cond(t.text)) fail(t, "name '" + t.text + "' already declared");
            if (out_.atoms.size() >= max_atoms_) {
                fail(t, "atom budget exceeded (max " + std::to_string(max_atoms_) + ")");
            }
            out_.atoms.add(t.text);
        }
        expect_punct(";", "to end the atom declaration");
    }

    void parse_cond() {
        ++pos_;
        const Token& nt = peek();
        std::string name = expect_ident("a conditional name");
        if (is_atom(name) || is_cond(name)) fail(nt, "name '" + name + "' already declared");
        expect_punct("=", "after the conditional name");
        // Alternatives separated by top-level bars; the last bar conditions.
        std::vector<EventExpr> parts{parse_and()};
        while (at_punct("|")) {
            ++pos_;
            parts.push_back(parse_and());
        }
        expect_punct(";", "to end the conditional declaration");
        EventExpr antecedent = EventExpr::truth();
        if (parts.size() > 1) {
            antecedent = parts.back();
            parts.pop_back();
        }
        EventExpr consequent = parts[0];
        for (size_t i = 1; i < parts.size(); ++i) consequent = consequent | parts[i];
        out_.conds.emplace(name, ConditionalEvent(consequent, antecedent, out_.atoms));
        out_.cond_names.push_back(name);
    }

    void parse_assess() {
        ++pos_;
        const Token& pt = peek();
        if (expect_ident("'P'") != "P") fail(pt, "expected 'P' after assess");
        expect_punct("(", "after P");
        const Token& nt = peek();
        std::string name = expect_ident("a conditional or atom name");
        resolve(nt);
        expect_punct(")", "after the name");
        expect_punct("=", "before the value");
        const Token& vt = peek();
        if (vt.kind != Token::Kind::Number) fail(vt, "expected a rational or decimal literal");
        std::optional<Rational> value = parse_rational(next().text);
        if (!value) fail(vt, "malformed rational '" + vt.text + "'");
        expect_punct(";", "to end the assessment");
        for (const auto& [n, v] : out_.assessments) {
            if (n == name) fail(nt, "'" + name + "' is already assessed");
        }
        out_.assessments.emplace_back(name, *value);
    }

    void parse_entails(const Token& kw) {
        ++pos_;
        Query q;
        q.kind = Query::Kind::Entails;
        q.line = kw.line;
        expect_punct("{", "to open the premise list");
        while (true) {
            const Token& t = peek();
            q.premise_names.push_back(expect_ident("a premise name"));
            resolve(t);
            if (at_punct(",")) {
                ++pos_;
                continue;
            }
            break;
        }
        expect_punct("}", "to close the premise list");
        expect_punct("=>", "before the conclusion");
        const Token& ct = peek();
        q.conclusion_name = expect_ident("the conclusion name");
        resolve(ct);
        expect_punct("?", "to end the query");
        std::string prem;
        for (const auto& p : q.premise_names) {
            if (!prem.empty()) prem += ", ";
            prem += p;
        }
        q.display = "entails {" + prem + "} => " + q.conclusion_name + "?";
        out_.queries.push_back(std::move(q));
    }

    std::vector<std::string> parse_amp_list(const char* what) {
        std::vector<std::string> names;
        bool parens = at_punct("(");
        if (parens) ++pos_;
        while (true) {
            const Token& t = peek();
            names.push_back(expect_ident(what));
            resolve(t);
            if (at_punct("&")) {
                ++pos_;
                continue;
            }
            break;
        }
        if (parens) expect_punct(")", "to close the list");
        return names;
    }

    void parse_iterated(const Token& kw) {
        ++pos_;
        Query q;
        q.kind = Query::Kind::Iterated;
        q.line = kw.line;
        const Token& ct = peek();
        q.conclusion_name = expect_ident("the conclusion name");
        resolve(ct);
        expect_punct("|", "before the premise conjunction");
        const Token& lt = peek();
        q.premise_names = parse_amp_list("a premise name");
        if (q.premise_names.size() > 2) {
            fail(lt, "iterated characterization takes 1 or 2 premises");
        }
        expect_punct("?", "to end the query");
        std::string prem = q.premise_names[0];
        for (size_t i = 1; i < q.premise_names.size(); ++i) prem += " & " + q.premise_names[i];
        if (q.premise_names.size() > 1) prem = "(" + prem + ")";
        q.display = "iterated " + q.conclusion_name + " | " + prem + "?";
        out_.queries.push_back(std::move(q));
    }

    void parse_conjoin(const Token& kw) {
        ++pos_;
        Query q;
        q.kind = Query::Kind::Conjoin;
        q.line = kw.line;
        const Token& lt = peek();
        q.premise_names = parse_amp_list("a conditional name");
        if (q.premise_names.size() < 2 || q.premise_names.size() > 3) {
            fail(lt, "conjoin takes 2 or 3 conditionals");
        }
        expect_punct("?", "to end the query");
        std::string prem = q.premise_names[0];
        for (size_t i = 1; i < q.premise_names.size(); ++i) prem += " & " + q.premise_names[i];
        q.display = "conjoin (" + prem + ")?";
        out_.queries.push_back(std::move(q));
    }
};

ConditionalEvent resolve_name(const ProblemFile& p, const std::string& name) {
    auto it = p.conds.find(name);
    if (it != p.conds.end()) return it->second;
    auto idx = p.atoms.index(name);
    if (!idx) throw InternalError("unresolved name survived parsing: " + name);
    return ConditionalEvent(EventExpr::atom(*idx), EventExpr::truth(), p.atoms);
}

std::string interval_to_string(const RationalInterval& iv) { return iv.to_string(); }

ordered_json interval_json(const RationalInterval& iv) {
    return ordered_json{{"lo", to_string(iv.lo)},
                        {"hi", to_string(iv.hi)},
                        {"lo_closed", iv.lo_closed},
                        {"hi_closed", iv.hi_closed}};
}

/// Rows merged by value for display: one line per distinct value, its event
/// being the union of the constituents taking it. Ordered 1, 0, other
/// symbolic values by first appearance, the quantity's own prevision last.
std::vector<std::pair<std::string, std::string>> display_rows(const Crq& q,
                                                              const SymbolTable& symbols,
                                                              const AtomTable& atoms) {
    struct Group {
        AffineValue value;
        WorldSet worlds;
        int rank;
        int first_symbol;
    };
    std::vector<Group> groups;
    AffineValue own = AffineValue::symbol(q.prevision());
    for (const auto& row : q.rows()) {
        auto it = std::find_if(groups.begin(), groups.end(),
                               [&](const Group& g) { return g.value == row.value; });
        if (it != groups.end()) {
            it->worlds = it->worlds | row.constituent.worlds;
            continue;
        }
        int rank = row.value == AffineValue(1)   ? 0
                   : row.value == AffineValue(0) ? 1
                   : row.value == own            ? 3
                                                 : 2;
        auto syms = row.value.symbols();
        int first = syms.empty() ? -1 : *syms.begin();
        groups.push_back({row.value, row.constituent.worlds, rank, first});
    }
    std::stable_sort(groups.begin(), groups.end(), [](const Group& a, const Group& b) {
        return a.rank != b.rank ? a.rank < b.rank : a.first_symbol < b.first_symbol;
    });
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& g : groups) {
        out.emplace_back(compact_dnf(g.worlds, atoms), g.value.to_string(symbols));
    }
    return out;
}

ordered_json table_json(const Crq& q, const SymbolTable& symbols, const AtomTable& atoms) {
    ordered_json rows = ordered_json::array();
    for (const auto& [on, value] : display_rows(q, symbols, atoms)) {
        rows.push_back(ordered_json{{"on", on}, {"value", value}});
    }
    return rows;
}

std::string indent_block(const std::string& s) {
    std::istringstream in(s);
    std::string line, out;
    while (std::getline(in, line)) out += "    " + line + "\n";
    return out;
}

struct AssessedBase {
    std::vector<Crq> objects;
    Assessment values;
    std::vector<std::string> names;
};

/// Indicator per assessed conditional, excluding `skip`, symbols 0..k-1.
AssessedBase assessed_base(const ProblemFile& p, const std::string& skip = "") {
    AssessedBase base;
    for (const auto& [name, value] : p.assessments) {
        if (name == skip) continue;
        int sym = static_cast<int>(base.objects.size());
        base.objects.push_back(indicator(resolve_name(p, name), sym, p.atoms));
        base.values[sym] = value;
        base.names.push_back(name);
    }
    return base;
}

struct QueryRenderer {
    const ProblemFile& p;
    const RunOptions& opts;

    ordered_json run_coherent(std::string& text) const {
        AssessedBase base = assessed_base(p);
        CoherenceReport report;
        bool ok = check_coherence(base.objects, base.values, p.atoms, &report);
        text = ok ? "coherent" : "incoherent";
        text += " (" + std::to_string(base.objects.size()) + " assessments, depth " +
                std::to_string(report.recursion_depth) + ")";
        return ordered_json{{"coherent", ok},
                            {"assessed", base.names},
                            {"depth", report.recursion_depth}};
    }

    ordered_json run_extend(const Query& q, std::string& text) const {
        AssessedBase base = assessed_base(p, q.extend_name);
        Crq target = indicator(resolve_name(p, q.extend_name),
                               static_cast<int>(base.objects.size()), p.atoms);
        RationalInterval iv = extension_interval(base.objects, base.values, target, p.atoms);
        text = interval_to_string(iv);
        return ordered_json{{"name", q.extend_name},
                            {"given", base.names},
                            {"interval", interval_json(iv)}};
    }

    ordered_json run_entails(const Query& q, std::string& text,
                             std::string& detail) const {
        std::vector<ConditionalEvent> premises;
        for (const auto& n : q.premise_names) premises.push_back(resolve_name(p, n));
        ConditionalEvent conclusion = resolve_name(p, q.conclusion_name);
        ordered_json j{{"premises", q.premise_names}, {"conclusion", q.conclusion_name}};
        bool pc = p_consistent(premises, p.atoms);
        j["p_consistent"] = pc;
        if (!pc) {
            text = "premises are not p-consistent";
            return j;
        }
        bool direct = p_entails_direct(premises, conclusion, p.atoms);
        EntailmentVerdict qc = p_entails_qc_witness(premises, conclusion, p.atoms);
        j["direct"] = direct;
        j["qc"] = ordered_json{{"holds", qc.holds},
                               {"witness", qc.witness},
                               {"tautological_conclusion", qc.tautological_conclusion}};
        text = direct ? "p-entails" : "does not p-entail";
        detail = std::string("direct: ") + (direct ? "yes" : "no");
        detail += std::string(", qc-witness: ") + (qc.holds ? "yes" : "no");
        if (qc.holds && !qc.tautological_conclusion) {
            detail += " {";
            for (size_t i = 0; i < qc.witness.size(); ++i) {
                if (i) detail += ", ";
                detail += q.premise_names[static_cast<size_t>(qc.witness[i])];
            }
            detail += "}";
        }
        if (premises.size() <= 2) {
            IteratedAnalysis an = analyze_iterated(premises, conclusion, p.atoms);
            j["iterated"] = ordered_json{{"holds", an.holds}, {"mu_set", an.mu_set.to_string()}};
            detail += std::string(", iterated: mu ") + an.mu_set.to_string();
        } else {
            j["iterated"] = nullptr;
            detail += ", iterated: covers at most 2 premises";
        }
        return j;
    }

    ordered_json run_iterated(const Query& q, std::string& text,
                              std::string& detail) const {
        std::vector<ConditionalEvent> premises;
        for (const auto& n : q.premise_names) premises.push_back(resolve_name(p, n));
        ConditionalEvent conclusion = resolve_name(p, q.conclusion_name);
        IteratedAnalysis an = analyze_iterated(premises, conclusion, p.atoms);
        ordered_json j{{"premises", q.premise_names},
                       {"conclusion", q.conclusion_name},
                       {"forced", an.holds},
                       {"mu_set", an.mu_set.to_string()}};
        j["table"] = table_json(an.iterated, an.symbols, p.atoms);
        j["notes"] = an.notes;
        if (!an.holds) {
            ordered_json binding = ordered_json::object();
            for (const auto& [sym, v] : an.canonical_binding) {
                binding[an.symbols.name(sym)] = to_string(v);
            }
            j["witness_binding"] = binding;
        }
        text = an.holds ? "mu forced to 1" : ("mu not forced; coherent mu set " +
                                              an.mu_set.to_string());
        if (opts.table) detail += crq_table(an.iterated, an.symbols, p.atoms);
        if (opts.verbosity > 0) {
            for (const auto& n : an.notes) detail += "note: " + n + "\n";
        }
        return j;
    }

    ordered_json run_conjoin(const Query& q, std::string& text,
                             std::string& detail) const {
        std::vector<ConditionalEvent> premises;
        for (const auto& n : q.premise_names) premises.push_back(resolve_name(p, n));
        SymbolTable symbols;
        Crq conj;
        if (premises.size() == 2) {
            int x1 = symbols.add("x1"), x2 = symbols.add("x2"), x12 = symbols.add("x12");
            conj = conjunction2(premises[0], premises[1], x1, x2, x12, p.atoms);
        } else {
            Conj3Symbols s;
            s.x1 = symbols.add("x1");
            s.x2 = symbols.add("x2");
            s.x3 = symbols.add("x3");
            s.x12 = symbols.add("x12");
            s.x13 = symbols.add("x13");
            s.x23 = symbols.add("x23");
            s.x123 = symbols.add("x123");
            conj = conjunction3(premises[0], premises[1], premises[2], s, p.atoms);
        }
        ordered_json j{{"premises", q.premise_names}};
        j["table"] = table_json(conj, symbols, p.atoms);
        text = "conjunction of " + std::to_string(premises.size()) + " conditionals";
        // With both previsions assessed, the pair conjunction's coherent
        // prevision interval (the Frechet bounds when logically independent).
        if (premises.size() == 2) {
            std::optional<Rational> v1, v2;
            for (const auto& [name, value] : p.assessments) {
                if (name == q.premise_names[0]) v1 = value;
                if (name == q.premise_names[1]) v2 = value;
            }
            if (v1 && v2) {
                std::vector<Crq> objs{indicator(premises[0], 0, p.atoms),
                                      indicator(premises[1], 1, p.atoms)};
                Assessment a{{0, *v1}, {1, *v2}};
                Crq target = conjunction2(premises[0], premises[1], 0, 1, 2, p.atoms);
                RationalInterval iv = extension_interval(objs, a, target, p.atoms);
                j["interval"] = interval_json(iv);
                text += "; coherent prevision " + interval_to_string(iv);
            }
        }
        if (opts.table) detail += crq_table(conj, symbols, p.atoms);
        return j;
    }

    ordered_json run_rule(const Query& q, std::string& text, std::string& detail) const;
};

std::string normalize_rule_name(const std::string& s) {
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

ordered_json rule_report_json(const RuleReport& rep) {
    ordered_json j{{"name", rep.name},
                   {"pass", rep.pass},
                   {"p_consistent", rep.premises_p_consistent},
                   {"direct", rep.direct},
                   {"qc", ordered_json{{"holds", rep.qc_holds},
                                       {"witness", rep.qc_witness},
                                       {"tautological_conclusion", rep.qc_tautological}}},
                   {"iterated", ordered_json{{"holds", rep.iterated_holds}}},
                   {"mu_set", rep.mu_set},
                   {"propagation", rep.propagation},
                   {"notes", rep.notes},
                   {"externally_sourced", rep.externally_sourced}};
    if (rep.boundary_note) j["boundary"] = *rep.boundary_note;
    if (rep.default_claim_holds) j["default_claim_holds"] = *rep.default_claim_holds;
    if (rep.default_refutation) {
        j["default_refutation"] = ordered_json{{"side", rep.default_refutation->first},
                                               {"conclusion", rep.default_refutation->second}};
    }
    if (rep.specialization_holds) j["specialization_holds"] = *rep.specialization_holds;
    return j;
}

std::string rule_report_line(const RuleReport& rep) {
    std::string s = rep.pass ? "PASS" : "FAIL";
    s += " (";
    s += rep.direct ? "p-valid" : "not p-valid";
    s += ", mu " + rep.mu_set + ", propagation " + rep.propagation;
    if (rep.default_claim_holds) {
        s += *rep.default_claim_holds ? ", default claim holds" : ", default claim refuted";
    }
    if (rep.specialization_holds) {
        s += *rep.specialization_holds ? ", specialization holds" : ", specialization fails";
    }
    if (rep.externally_sourced) s += ", externally sourced";
    s += ")";
    return s;
}

ordered_json QueryRenderer::run_rule(const Query& q, std::string& text,
                                     std::string& detail) const {
    std::string want = normalize_rule_name(q.rule_name);
    for (const auto& r : builtin_rules()) {
        if (normalize_rule_name(r.name) != want) continue;
        RuleReport rep = verify_rule(r);
        text = rule_report_line(rep);
        if (opts.verbosity > 0) {
            for (const auto& n : rep.notes) detail += "note: " + n + "\n";
            if (rep.boundary_note) detail += "boundary: " + *rep.boundary_note + "\n";
        }
        if (opts.table) {
            IteratedAnalysis an = analyze_iterated(r.premises, r.conclusion, r.atoms);
            detail += crq_table(an.iterated, an.symbols, r.atoms);
        }
        return ordered_json{{"rule", r.name}, {"report", rule_report_json(rep)}};
    }
    std::string known;
    for (const auto& r : builtin_rules()) {
        if (!known.empty()) known += ", ";
        known += r.name;
    }
    throw Error("unknown rule '" + q.rule_name + "'; builtin rules: " + known);
}

}  // namespace

std::string crq_table(const Crq& q, const SymbolTable& symbols, const AtomTable& atoms) {
    auto rows = display_rows(q, symbols, atoms);
    size_t width = 0;
    for (const auto& [on, value] : rows) width = std::max(width, on.size());
    std::string out;
    for (const auto& [on, value] : rows) {
        out += on + std::string(width - on.size(), ' ') + "  :  " + value + "\n";
    }
    return out;
}

ProblemFile parse_problem(const std::string& text, int max_atoms) {
    Parser parser(lex(text), max_atoms);
    return parser.parse();
}

RunResult run_problem(const ProblemFile& p, const RunOptions& opts) {
    RunResult result;
    QueryRenderer renderer{p, opts};
    ordered_json queries = ordered_json::array();
    std::string text;
    for (const Query& q : p.queries) {
        ordered_json j{{"line", q.line}, {"query", q.display}};
        std::string summary, detail;
        try {
            ordered_json body;
            switch (q.kind) {
                case Query::Kind::Coherent: body = renderer.run_coherent(summary); break;
                case Query::Kind::Extend: body = renderer.run_extend(q, summary); break;
                case Query::Kind::Entails: body = renderer.run_entails(q, summary, detail); break;
                case Query::Kind::Iterated:
                    body = renderer.run_iterated(q, summary, detail);
                    break;
                case Query::Kind::Conjoin: body = renderer.run_conjoin(q, summary, detail); break;
                case Query::Kind::Rule: body = renderer.run_rule(q, summary, detail); break;
            }
            j["result"] = body;
            j["ok"] = true;
        } catch (const Error& e) {
            j["ok"] = false;
            j["error"] = e.what();
            summary = std::string("error: ") + e.what();
            result.exit_code = 1;
        }
        queries.push_back(std::move(j));
        text += "[L" + std::to_string(q.line) + "] " + q.display + " -> " + summary + "\n";
        if (!detail.empty()) text += indent_block(detail);
    }
    if (opts.json) {
        result.output = ordered_json{{"queries", std::move(queries)}}.dump(2) + "\n";
    } else {
        result.output = text;
    }
    return result;
}

RunResult run_rules(const std::vector<RuleInstance>& rules, const RunOptions& opts) {
    RunResult result;
    std::vector<RuleReport> reports;
    for (const auto& r : rules) reports.push_back(verify_rule(r));

    if (opts.json) {
        ordered_json arr = ordered_json::array();
        for (const auto& rep : reports) arr.push_back(rule_report_json(rep));
        result.output = ordered_json{{"rules", arr}}.dump(2) + "\n";
    } else {
        size_t name_w = 4, mu_w = 2, prop_w = 11;
        for (const auto& rep : reports) {
            name_w = std::max(name_w, rep.name.size());
            mu_w = std::max(mu_w, rep.mu_set.size());
            prop_w = std::max(prop_w, rep.propagation.size());
        }
        auto pad = [](const std::string& s, size_t w) {
            return s + std::string(w - s.size(), ' ');
        };
        result.output = pad("name", name_w) + "  " + pad("p-valid", 7) + "  " +
                        pad("mu", mu_w) + "  " + pad("propagation", prop_w) + "  result\n";
        for (size_t i = 0; i < reports.size(); ++i) {
            const RuleReport& rep = reports[i];
            result.output += pad(rep.name, name_w) + "  " +
                             pad(rep.direct ? "yes" : "no", 7) + "  " +
                             pad(rep.mu_set, mu_w) + "  " + pad(rep.propagation, prop_w) +
                             "  " + (rep.pass ? "PASS" : "FAIL") + "\n";
            if (opts.verbosity > 0) {
                for (const auto& n : rep.notes) result.output += "    note: " + n + "\n";
                if (rep.boundary_note) {
                    result.output += "    boundary: " + *rep.boundary_note + "\n";
                }
                if (rep.default_claim_holds) {
                    result.output += std::string("    default claim: ") +
                                     (*rep.default_claim_holds ? "holds" : "refuted") + "\n";
                }
            }
            if (opts.table) {
                IteratedAnalysis an =
                    analyze_iterated(rules[i].premises, rules[i].conclusion, rules[i].atoms);
                result.output += indent_block(crq_table(an.iterated, an.symbols, rules[i].atoms));
            }
        }
    }
    for (const auto& rep : reports) {
        if (!rep.pass) result.exit_code = 1;
    }
    return result;
}

}  // namespace concord
