#pragma once

#include "concord/entailment.hpp"

#include <optional>
#include <string>
#include <vector>

namespace concord {

/// Strict constraint attached to a rule: either a premise's probability is
/// required positive, or an extra conditional (a negated default) is required
/// below one.
enum class SideKind { PositivePremise, NegatedDefault };

struct SideCondition {
    SideKind kind;
    // PositivePremise: index into the premise list. NegatedDefault: unused.
    int premise_index = -1;
    // NegatedDefault: the conditional required strictly below one.
    std::optional<ConditionalEvent> event;
    std::string label;
    // The claim is cited rather than derived in the source material.
    bool externally_sourced = false;
};

struct RuleExpected {
    bool p_valid = false;
    std::string mu_set;  // canonical set string, e.g. "{1}" or "[0,1]"
};

struct RuleInstance {
    std::string name;
    AtomTable atoms;
    std::vector<ConditionalEvent> premises;
    std::vector<std::string> premise_labels;
    ConditionalEvent conclusion;
    std::string conclusion_label;
    std::vector<SideCondition> side_conditions;
    RuleExpected expected;
};

struct RuleReport {
    std::string name;
    bool premises_p_consistent = false;
    // The three entailment verdicts, which must agree.
    bool direct = false;
    bool qc_holds = false;
    std::vector<int> qc_witness;
    bool qc_tautological = false;
    bool iterated_holds = false;
    std::string mu_set;
    // Coherent conclusion probabilities when every premise is assessed 1.
    std::string propagation;
    std::vector<std::string> notes;
    // PositivePremise boundary: what the rule degenerates to at probability 0.
    std::optional<std::string> boundary_note;
    // NegatedDefault: does "side < 1 forces conclusion = 1" hold?
    std::optional<bool> default_claim_holds;
    std::optional<std::pair<std::string, std::string>> default_refutation;
    // Extra entailment checked alongside the rule (Bayes with a sure premise).
    std::optional<bool> specialization_holds;
    bool externally_sourced = false;
    bool pass = false;
};

/// The eleven catalogued rules plus the two negated-default variants.
std::vector<RuleInstance> builtin_rules();

RuleReport verify_rule(const RuleInstance& r);

/// True when the quasi conjunction of {c1, c2}, conditioned on their
/// conjunction, is the constant 1 (its prevision is forced to 1 by coherence
/// for every coherent choice of the underlying previsions).
bool verify_qc_theorem(const ConditionalEvent& c1, const ConditionalEvent& c2,
                       const AtomTable& atoms);

}  // namespace concord
