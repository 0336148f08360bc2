#include "concord/rules.hpp"

namespace concord {

namespace {

RuleInstance make_rule(std::string name, AtomTable atoms,
                       std::vector<ConditionalEvent> premises, ConditionalEvent conclusion,
                       std::vector<SideCondition> sides, RuleExpected expected) {
    std::vector<std::string> labels;
    for (const auto& p : premises) labels.push_back(p.to_string(atoms));
    std::string conclusion_label = conclusion.to_string(atoms);
    return RuleInstance{std::move(name),
                        std::move(atoms),
                        std::move(premises),
                        std::move(labels),
                        std::move(conclusion),
                        std::move(conclusion_label),
                        std::move(sides),
                        std::move(expected)};
}

const RuleExpected kValid{true, "{1}"};
const RuleExpected kInvalid{false, "[0,1]"};

}  // namespace

std::vector<RuleInstance> builtin_rules() {
    std::vector<RuleInstance> out;

    {  // Modus Ponens: {C|A, A} entails C.
        AtomTable t;
        EventExpr a = EventExpr::atom(t.add("A")), c = EventExpr::atom(t.add("C"));
        EventExpr T = EventExpr::truth();
        out.push_back(make_rule("Modus Ponens", t,
                                {ConditionalEvent(c, a, t), ConditionalEvent(a, T, t)},
                                ConditionalEvent(c, T, t), {}, kValid));
    }
    {  // Modus Tollens: {C|A, ~C} entails ~A, assuming P(C|A) > 0.
        AtomTable t;
        EventExpr a = EventExpr::atom(t.add("A")), c = EventExpr::atom(t.add("C"));
        EventExpr T = EventExpr::truth();
        SideCondition pos{SideKind::PositivePremise, 0, std::nullopt, "P(C|A) > 0", false};
        out.push_back(make_rule("Modus Tollens", t,
                                {ConditionalEvent(c, a, t), ConditionalEvent(!c, T, t)},
                                ConditionalEvent(!a, T, t), {pos}, kValid));
    }
    {  // Bayes: {E|AH, H|A} entails H|EA.
        AtomTable t;
        EventExpr a = EventExpr::atom(t.add("A")), e = EventExpr::atom(t.add("E")),
                  h = EventExpr::atom(t.add("H"));
        out.push_back(make_rule(
            "Bayes", t, {ConditionalEvent(e, a & h, t), ConditionalEvent(h, a, t)},
            ConditionalEvent(h, e & a, t), {}, kValid));
    }
    {  // And: {B|A, C|A} entails BC|A.
        AtomTable t;
        EventExpr a = EventExpr::atom(t.add("A")), b = EventExpr::atom(t.add("B")),
                  c = EventExpr::atom(t.add("C"));
        out.push_back(make_rule("And", t,
                                {ConditionalEvent(b, a, t), ConditionalEvent(c, a, t)},
                                ConditionalEvent(b & c, a, t), {}, kValid));
    }
    {  // Cut: {C|AB, B|A} entails C|A.
        AtomTable t;
        EventExpr a = EventExpr::atom(t.add("A")), b = EventExpr::atom(t.add("B")),
                  c = EventExpr::atom(t.add("C"));
        out.push_back(make_rule("Cut", t,
                                {ConditionalEvent(c, a & b, t), ConditionalEvent(b, a, t)},
                                ConditionalEvent(c, a, t), {}, kValid));
    }
    {  // Cautious Monotonicity: {C|A, B|A} entails C|AB.
        AtomTable t;
        EventExpr a = EventExpr::atom(t.add("A")), b = EventExpr::atom(t.add("B")),
                  c = EventExpr::atom(t.add("C"));
        out.push_back(make_rule("Cautious Monotonicity", t,
                                {ConditionalEvent(c, a, t), ConditionalEvent(b, a, t)},
                                ConditionalEvent(c, a & b, t), {}, kValid));
    }
    {  // Or: {C|A, C|B} entails C|(A v B).
        AtomTable t;
        EventExpr a = EventExpr::atom(t.add("A")), b = EventExpr::atom(t.add("B")),
                  c = EventExpr::atom(t.add("C"));
        out.push_back(make_rule("Or", t,
                                {ConditionalEvent(c, a, t), ConditionalEvent(c, b, t)},
                                ConditionalEvent(c, a | b, t), {}, kValid));
    }
    {  // QAND: {B|A, D|C} entails its quasi conjunction.
        AtomTable t;
        EventExpr a = EventExpr::atom(t.add("A")), b = EventExpr::atom(t.add("B")),
                  c = EventExpr::atom(t.add("C")), d = EventExpr::atom(t.add("D"));
        std::vector<ConditionalEvent> prem{ConditionalEvent(b, a, t), ConditionalEvent(d, c, t)};
        ConditionalEvent qc = quasi_conjunction(prem, t);
        out.push_back(make_rule("QAND", t, std::move(prem), std::move(qc), {}, kValid));
    }
    {  // Denial of the Antecedent: {~A, C|A} does not entail ~C.
        AtomTable t;
        EventExpr a = EventExpr::atom(t.add("A")), c = EventExpr::atom(t.add("C"));
        EventExpr T = EventExpr::truth();
        out.push_back(make_rule("Denial of the Antecedent", t,
                                {ConditionalEvent(!a, T, t), ConditionalEvent(c, a, t)},
                                ConditionalEvent(!c, T, t), {}, kInvalid));
    }
    {  // Affirmation of the Consequent: {C, C|A} does not entail A.
        AtomTable t;
        EventExpr a = EventExpr::atom(t.add("A")), c = EventExpr::atom(t.add("C"));
        EventExpr T = EventExpr::truth();
        out.push_back(make_rule("Affirmation of the Consequent", t,
                                {ConditionalEvent(c, T, t), ConditionalEvent(c, a, t)},
                                ConditionalEvent(a, T, t), {}, kInvalid));
    }
    {  // Transitivity: {C|B, B|A} does not entail C|A.
        AtomTable t;
        EventExpr a = EventExpr::atom(t.add("A")), b = EventExpr::atom(t.add("B")),
                  c = EventExpr::atom(t.add("C"));
        out.push_back(make_rule("Transitivity", t,
                                {ConditionalEvent(c, b, t), ConditionalEvent(b, a, t)},
                                ConditionalEvent(c, a, t), {}, kInvalid));
    }
    {  // Affirmation of the Consequent, salvaged by P(C|~A) < 1.
        AtomTable t;
        EventExpr a = EventExpr::atom(t.add("A")), c = EventExpr::atom(t.add("C"));
        EventExpr T = EventExpr::truth();
        SideCondition def{SideKind::NegatedDefault, -1, ConditionalEvent(c, !a, t),
                          "P(C|~A) < 1", false};
        out.push_back(make_rule("Affirmation of the Consequent with negated default", t,
                                {ConditionalEvent(c, T, t), ConditionalEvent(c, a, t)},
                                ConditionalEvent(a, T, t), {def}, kInvalid));
    }
    {  // Transitivity, salvaged by P(~A|(A v B)) < 1 (claim cited externally).
        AtomTable t;
        EventExpr a = EventExpr::atom(t.add("A")), b = EventExpr::atom(t.add("B")),
                  c = EventExpr::atom(t.add("C"));
        SideCondition def{SideKind::NegatedDefault, -1, ConditionalEvent(!a, a | b, t),
                          "P(~A|(A v B)) < 1", true};
        out.push_back(make_rule("Transitivity with negated default", t,
                                {ConditionalEvent(c, b, t), ConditionalEvent(b, a, t)},
                                ConditionalEvent(c, a, t), {def}, kInvalid));
    }
    return out;
}

namespace {

/// Probes a PositivePremise side condition at its boundary: with that premise
/// assessed 0 and the others 1, is every value of the reduced iterated table
/// called off? Only attempted when the table involves nothing beyond the
/// premise previsions.
std::optional<std::string> boundary_probe(const RuleInstance& r, const IteratedAnalysis& an,
                                          const SideCondition& sc) {
    int mu = *an.symbols.index("mu");
    Assessment boundary;
    for (int s : an.iterated.symbols()) {
        if (s == mu) continue;
        const std::string& nm = an.symbols.name(s);
        int premise = nm == "x1" || nm == "x" ? 0 : nm == "x2" ? 1 : -1;
        if (premise < 0) return std::nullopt;
        boundary[s] = premise == sc.premise_index ? 0 : 1;
    }
    if (!active_event(an.iterated, boundary, r.atoms).empty()) return std::nullopt;
    return "with " + r.premise_labels[static_cast<size_t>(sc.premise_index)] +
           " assessed 0 the conditioning conjunction vanishes and every value is "
           "called off (the TrivialIterated case): the verdict is indeterminate there";
}

}  // namespace

RuleReport verify_rule(const RuleInstance& r) {
    RuleReport rep;
    rep.name = r.name;
    rep.premises_p_consistent = p_consistent(r.premises, r.atoms);
    if (!rep.premises_p_consistent) return rep;

    rep.direct = p_entails_direct(r.premises, r.conclusion, r.atoms);
    EntailmentVerdict qc = p_entails_qc_witness(r.premises, r.conclusion, r.atoms);
    rep.qc_holds = qc.holds;
    rep.qc_witness = qc.witness;
    rep.qc_tautological = qc.tautological_conclusion;

    IteratedAnalysis an = analyze_iterated(r.premises, r.conclusion, r.atoms);
    rep.iterated_holds = an.holds;
    rep.mu_set = an.mu_set.to_string();
    rep.notes = an.notes;

    std::vector<Crq> objs;
    Assessment ones;
    for (size_t i = 0; i < r.premises.size(); ++i) {
        int sym = static_cast<int>(i);
        objs.push_back(indicator(r.premises[i], sym, r.atoms));
        ones[sym] = 1;
    }
    Crq target = indicator(r.conclusion, static_cast<int>(r.premises.size()), r.atoms);
    rep.propagation = extension_interval(objs, ones, target, r.atoms).to_string();

    bool sides_ok = true;
    for (const auto& sc : r.side_conditions) {
        if (sc.kind == SideKind::PositivePremise) {
            rep.boundary_note = boundary_probe(r, an, sc);
            sides_ok = sides_ok && rep.boundary_note.has_value();
        } else {
            std::vector<Crq> prem;
            int next = 0;
            for (const auto& p : r.premises) prem.push_back(indicator(p, next++, r.atoms));
            Crq side = indicator(*sc.event, next++, r.atoms);
            Crq concl = indicator(r.conclusion, next++, r.atoms);
            SideClaimResult res = side_claim_holds(prem, side, concl, r.atoms);
            rep.default_claim_holds = res.holds;
            if (!res.holds && res.witness) {
                rep.default_refutation = {to_string(res.witness->first),
                                          to_string(res.witness->second)};
            }
            rep.externally_sourced = rep.externally_sourced || sc.externally_sourced;
            sides_ok = sides_ok && res.holds;
        }
    }

    if (r.name == "Bayes") {
        // With the conditioning event sure the rule collapses to a single
        // premise: {EH} forces H|E, through the same iterated construction.
        AtomTable t;
        EventExpr e = EventExpr::atom(t.add("E")), h = EventExpr::atom(t.add("H"));
        IteratedAnalysis sp =
            analyze_iterated({ConditionalEvent(e & h, EventExpr::truth(), t)},
                             ConditionalEvent(h, e, t), t);
        rep.specialization_holds = sp.holds;
        rep.notes.push_back(std::string("sure-antecedent specialization {EH} => H|E: ") +
                            (sp.holds ? "forced to 1" : "not forced"));
    }

    rep.pass = rep.direct == r.expected.p_valid && rep.qc_holds == r.expected.p_valid &&
               rep.iterated_holds == r.expected.p_valid && rep.mu_set == r.expected.mu_set &&
               rep.propagation == (r.expected.p_valid ? "[1,1]" : "[0,1]") && sides_ok &&
               (!rep.specialization_holds || *rep.specialization_holds);
    return rep;
}

bool verify_qc_theorem(const ConditionalEvent& c1, const ConditionalEvent& c2,
                       const AtomTable& atoms) {
    std::vector<ConditionalEvent> family{c1, c2};
    return analyze_iterated(family, quasi_conjunction(family, atoms), atoms).holds;
}

}  // namespace concord
