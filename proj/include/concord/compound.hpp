#pragma once

#include "concord/events.hpp"
#include "concord/poly.hpp"

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace concord {

/// One merged table row: a class of worlds on which the quantity takes a
/// single (symbolic) value.
struct CrqRow {
    Constituent constituent;
    AffineValue value;
};

/// Conditional random quantity: a world-indexed value table, affine in
/// prevision symbols, together with a conditioning event and the symbol
/// naming the quantity's own prevision. On every world where the
/// conditioning event is false the value is exactly the own symbol (a
/// called-off bet returns the paid amount).
class Crq {
public:
    static Crq build(std::vector<ConditionalEvent> family, EventExpr conditioning,
                     int prevision, const std::function<AffineValue(World)>& value_fn,
                     const AtomTable& atoms);

    const EventExpr& conditioning() const { return conditioning_; }
    int prevision() const { return prevision_; }
    const std::vector<ConditionalEvent>& family() const { return family_; }
    const std::vector<CrqRow>& rows() const { return rows_; }
    int n_atoms() const { return n_atoms_; }

    const AffineValue& value_at(World w) const;
    /// Every symbol any row mentions (the own prevision included when it
    /// appears in the table).
    std::set<int> symbols() const;

    Crq substituted(int sym, const AffineValue& v, const AtomTable& atoms) const;

private:
    EventExpr conditioning_ = EventExpr::truth();
    int prevision_ = -1;
    int n_atoms_ = 0;
    std::vector<ConditionalEvent> family_;
    std::vector<CrqRow> rows_;
};

/// World rendered as a conjunction of atom literals: "A & ~B & C".
std::string world_to_string(World w, const AtomTable& atoms);

/// A|H as a quantity: 1 on AH, 0 on (not A)H, x elsewhere.
Crq indicator(const ConditionalEvent& c, int x, const AtomTable& atoms);

/// Pointwise minimum of two conditional indicators, given either antecedent:
/// 1 / 0 / x / y / z across the five constituent classes.
Crq conjunction2(const ConditionalEvent& c1, const ConditionalEvent& c2, int x, int y,
                 int z, const AtomTable& atoms);

struct Conj3Symbols {
    int x1, x2, x3;     // single previsions
    int x12, x13, x23;  // pairwise conjunction previsions
    int x123;           // prevision of the triple conjunction
};

/// Pointwise minimum of three conditional indicators; nine-case table.
Crq conjunction3(const ConditionalEvent& c1, const ConditionalEvent& c2,
                 const ConditionalEvent& c3, const Conj3Symbols& s, const AtomTable& atoms);

/// Conjunction of each "void or true" surrogate, given the disjunction of
/// antecedents. Two-valued; returned as a plain conditional event.
ConditionalEvent quasi_conjunction(const std::vector<ConditionalEvent>& family,
                                   const AtomTable& atoms);

/// Consequent conditioned on a single conditional: conjunction plus mu times
/// the antecedent-false indicator, with the conjunction prevision z already
/// rewritten as mu*x. Throws TrivialIterated when the antecedent can never
/// be true.
Crq iterated2(const ConditionalEvent& consequent, const ConditionalEvent& antecedent,
              int x, int y, int z, int mu, const AtomTable& atoms);

struct IteratedConjSymbols {
    Conj3Symbols conj;  // x3 is the consequent's prevision
    int mu;
};

/// Consequent conditioned on a two-conditional conjunction: triple
/// conjunction plus mu*(1 - pair conjunction), with the triple prevision
/// rewritten as mu*x12. Throws TrivialIterated when the pair conjunction is
/// the zero quantity.
Crq iterated_on_conjunction(const ConditionalEvent& consequent, const ConditionalEvent& c1,
                            const ConditionalEvent& c2, const IteratedConjSymbols& s,
                            const AtomTable& atoms);

struct ReduceResult {
    bool equal = false;
    // On success: substitute `from_sym` by `to_sym` everywhere.
    int from_sym = -1;
    int to_sym = -1;
    // On failure: first world (within either conditioning event) where the
    // tables differ.
    std::optional<World> witness;
};

/// Quantity equality: tables coincide on every world where either
/// conditioning event is true; on success the two prevision symbols are
/// identified.
ReduceResult reduce_equal_crq(const Crq& q1, const Crq& q2, const AtomTable& atoms);

/// Conjunction of an inclusion-ordered pair collapses to the smaller member.
/// Throws NotGnImplied unless c1 is included in c2.
Crq conjunction_with_gn(const ConditionalEvent& c1, const ConditionalEvent& c2, int x1,
                        const AtomTable& atoms);

}  // namespace concord
