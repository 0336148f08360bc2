#pragma once

#include "concord/coherence.hpp"

#include <optional>
#include <string>
#include <vector>

namespace concord {

enum class EntailmentMethod { Direct, QcWitness, Iterated };

std::string to_string(EntailmentMethod m);

struct EntailmentVerdict {
    bool holds = false;
    EntailmentMethod method = EntailmentMethod::Direct;
    /// qc-witness verdicts: premise indices whose quasi conjunction decides,
    /// empty with tautological_conclusion when the conclusion is constant 1.
    std::vector<int> witness;
    bool tautological_conclusion = false;
    /// Iterated verdicts: the forced prevision set of the iterated object.
    std::optional<CoherentSet> mu_set;
};

/// The all-ones assessment on the family is coherent.
bool p_consistent(const std::vector<ConditionalEvent>& family, const AtomTable& atoms);

/// Premises at 1 force the conclusion to 1: the assessment (1,...,1,0) on
/// family + conclusion is incoherent. Any family size.
bool p_entails_direct(const std::vector<ConditionalEvent>& family,
                      const ConditionalEvent& conclusion, const AtomTable& atoms);

/// Entailment by quasi-conjunction witness: the conclusion is constant 1, or
/// some nonempty premise subset's quasi conjunction implies the conclusion in
/// the Goodman-Nguyen order. Searches subsets by ascending size, then
/// declaration order, for a deterministic witness.
EntailmentVerdict p_entails_qc_witness(const std::vector<ConditionalEvent>& family,
                                       const ConditionalEvent& conclusion,
                                       const AtomTable& atoms);

/// Single-premise entailment in closed form: Goodman-Nguyen inclusion, or a
/// tautological conclusion. Requires the premise's true part satisfiable.
bool p_entails_pair(const ConditionalEvent& premise, const ConditionalEvent& conclusion,
                    const AtomTable& atoms);

/// Full analysis of the conclusion conditioned on the premise family (one
/// premise, or the conjunction of two): the table after every substitution
/// forced by coherence, whether the object is constant 1, and its forced
/// prevision set.
struct IteratedAnalysis {
    SymbolTable symbols;
    Crq iterated;  // table after forced substitutions
    bool holds = false;
    /// {1} when holds; otherwise the coherent prevision set at a canonical
    /// coherent binding with every premise at 1.
    CoherentSet mu_set;
    Assessment canonical_binding;  // bound symbols of a failing mu_set
    std::vector<std::string> notes;
};

IteratedAnalysis analyze_iterated(const std::vector<ConditionalEvent>& family,
                                  const ConditionalEvent& conclusion, const AtomTable& atoms);

/// Entailment decided through the iterated object. Family size 1 or 2.
EntailmentVerdict p_entails_iterated(const std::vector<ConditionalEvent>& family,
                                     const ConditionalEvent& conclusion,
                                     const AtomTable& atoms);

/// The four exhaustive ways a two-premise entailment can hold, tested in
/// order; None exactly when the entailment fails.
enum class DisjunctiveCase {
    ConclusionConstantOne,
    IteratedSingleton1,
    IteratedSingleton2,
    IteratedPairQc,
    None,
};

std::string to_string(DisjunctiveCase c);

DisjunctiveCase disjunctive_characterization(const std::vector<ConditionalEvent>& family,
                                             const ConditionalEvent& conclusion,
                                             const AtomTable& atoms);

}  // namespace concord
