#include "concord/entailment.hpp"

#include <bit>

namespace concord {

std::string to_string(EntailmentMethod m) {
    switch (m) {
        case EntailmentMethod::Direct: return "direct";
        case EntailmentMethod::QcWitness: return "qc-witness";
        case EntailmentMethod::Iterated: return "iterated";
    }
    return "?";
}

std::string to_string(DisjunctiveCase c) {
    switch (c) {
        case DisjunctiveCase::ConclusionConstantOne: return "conclusion-constant-1";
        case DisjunctiveCase::IteratedSingleton1: return "iterated-singleton-1";
        case DisjunctiveCase::IteratedSingleton2: return "iterated-singleton-2";
        case DisjunctiveCase::IteratedPairQc: return "iterated-pair-QC";
        case DisjunctiveCase::None: return "none";
    }
    return "?";
}

bool p_consistent(const std::vector<ConditionalEvent>& family, const AtomTable& atoms) {
    std::vector<Crq> objs;
    Assessment a;
    for (size_t i = 0; i < family.size(); ++i) {
        int sym = static_cast<int>(i);
        objs.push_back(indicator(family[i], sym, atoms));
        a[sym] = 1;
    }
    return check_coherence(objs, a, atoms);
}

bool p_entails_direct(const std::vector<ConditionalEvent>& family,
                      const ConditionalEvent& conclusion, const AtomTable& atoms) {
    if (!p_consistent(family, atoms)) {
        throw NotPConsistent("premise family is not p-consistent");
    }
    std::vector<Crq> objs;
    Assessment a;
    for (size_t i = 0; i < family.size(); ++i) {
        int sym = static_cast<int>(i);
        objs.push_back(indicator(family[i], sym, atoms));
        a[sym] = 1;
    }
    int conc = static_cast<int>(family.size());
    objs.push_back(indicator(conclusion, conc, atoms));
    a[conc] = 0;
    return !check_coherence(objs, a, atoms);
}

EntailmentVerdict p_entails_qc_witness(const std::vector<ConditionalEvent>& family,
                                       const ConditionalEvent& conclusion,
                                       const AtomTable& atoms) {
    if (!p_consistent(family, atoms)) {
        throw NotPConsistent("premise family is not p-consistent");
    }
    EntailmentVerdict v;
    v.method = EntailmentMethod::QcWitness;
    if (implies(conclusion.antecedent(), conclusion.consequent(), atoms)) {
        v.holds = true;
        v.tautological_conclusion = true;
        return v;
    }
    int n = static_cast<int>(family.size());
    for (int size = 1; size <= n; ++size) {
        for (uint32_t mask = 1; mask < (uint32_t{1} << n); ++mask) {
            if (std::popcount(mask) != size) continue;
            std::vector<ConditionalEvent> subset;
            std::vector<int> indices;
            for (int i = 0; i < n; ++i) {
                if (mask & (uint32_t{1} << i)) {
                    subset.push_back(family[static_cast<size_t>(i)]);
                    indices.push_back(i);
                }
            }
            if (gn_implies(quasi_conjunction(subset, atoms), conclusion, atoms)) {
                v.holds = true;
                v.witness = std::move(indices);
                return v;
            }
        }
    }
    return v;
}

bool p_entails_pair(const ConditionalEvent& premise, const ConditionalEvent& conclusion,
                    const AtomTable& atoms) {
    if (!satisfiable(premise.consequent() & premise.antecedent(), atoms)) {
        throw TrivialPremise("premise can never be true");
    }
    return gn_implies(premise, conclusion, atoms) ||
           implies(conclusion.antecedent(), conclusion.consequent(), atoms);
}

namespace {

/// Substitutions forced on a prevision symbol by the structure of its
/// conditional event alone.
void classify_single(const ConditionalEvent& c, int sym, const AtomTable& atoms,
                     std::map<int, AffineValue>& subs, std::vector<std::string>& notes,
                     const SymbolTable& names) {
    if (implies(c.antecedent(), c.consequent(), atoms)) {
        subs.emplace(sym, AffineValue(1));
        notes.push_back(names.name(sym) + " forced to 1: antecedent implies consequent");
    } else if (!satisfiable(c.consequent() & c.antecedent(), atoms)) {
        subs.emplace(sym, AffineValue(0));
        notes.push_back(names.name(sym) + " forced to 0: the event can never be true");
    }
}

AffineValue current(const std::map<int, AffineValue>& subs, int sym) {
    auto it = subs.find(sym);
    return it == subs.end() ? AffineValue::symbol(sym) : it->second;
}

Crq apply_subs(Crq q, const std::map<int, AffineValue>& subs, const AtomTable& atoms) {
    for (const auto& [sym, v] : subs) q = q.substituted(sym, v, atoms);
    return q;
}

/// Every row equal to 1 once mu is: the table is the constant 1 under the
/// prevision forced by coherence.
bool all_rows_one_at_mu_one(const Crq& q, int mu, std::vector<std::string>& notes,
                            const SymbolTable& names, const AtomTable& atoms) {
    bool ok = true;
    for (const auto& row : q.rows()) {
        if (row.value.substituted(mu, AffineValue(1)) == AffineValue(1)) continue;
        ok = false;
        notes.push_back("blocking row at " +
                        world_to_string(row.constituent.representative, atoms) + ": " +
                        row.value.to_string(names));
    }
    return ok;
}

/// Binds `sym` (when the table mentions it) to the lower end of its coherent
/// extension and appends the settled quantity to the object list.
void bind_lower(int sym, Crq target, const std::set<int>& table_syms, bool force,
                std::vector<Crq>& objs, Assessment& binding, const AtomTable& atoms) {
    if (!force && table_syms.count(sym) == 0) return;
    RationalInterval iv = extension_interval(objs, binding, target, atoms);
    binding[sym] = iv.lo_closed ? iv.lo : (iv.lo + iv.hi) / 2;
    objs.push_back(std::move(target));
}

}  // namespace

IteratedAnalysis analyze_iterated(const std::vector<ConditionalEvent>& family,
                                  const ConditionalEvent& conclusion, const AtomTable& atoms) {
    if (family.empty() || family.size() > 2) {
        throw UnsupportedArity("iterated characterization takes 1 or 2 premises");
    }
    if (!p_consistent(family, atoms)) {
        throw NotPConsistent("premise family is not p-consistent");
    }

    IteratedAnalysis an;
    std::map<int, AffineValue> subs;

    if (family.size() == 1) {
        int x = an.symbols.add("x");
        int y = an.symbols.add("y");
        int z = an.symbols.add("z");
        int mu = an.symbols.add("mu");
        Crq q = iterated2(conclusion, family[0], x, y, z, mu, atoms);
        classify_single(family[0], x, atoms, subs, an.notes, an.symbols);
        classify_single(conclusion, y, atoms, subs, an.notes, an.symbols);
        an.iterated = apply_subs(q, subs, atoms);
        an.holds = all_rows_one_at_mu_one(an.iterated, mu, an.notes, an.symbols, atoms);
        if (an.holds) {
            an.mu_set = CoherentSet::point(1);
            return an;
        }
        std::set<int> table_syms = q.symbols();
        std::vector<Crq> objs{indicator(family[0], x, atoms)};
        Assessment binding{{x, 1}};
        bind_lower(y, indicator(conclusion, y, atoms), table_syms, false, objs, binding, atoms);
        an.canonical_binding = binding;
        an.mu_set = coherent_mu_set(q, binding, atoms);
        if (an.mu_set.is_point(1)) {
            throw InternalError("failing iterated verdict has prevision set {1}");
        }
        return an;
    }

    IteratedConjSymbols s;
    s.conj.x1 = an.symbols.add("x1");
    s.conj.x2 = an.symbols.add("x2");
    s.conj.x3 = an.symbols.add("x3");
    s.conj.x12 = an.symbols.add("x12");
    s.conj.x13 = an.symbols.add("x13");
    s.conj.x23 = an.symbols.add("x23");
    s.conj.x123 = an.symbols.add("x123");
    s.mu = an.symbols.add("mu");
    Crq q = iterated_on_conjunction(conclusion, family[0], family[1], s, atoms);
    std::set<int> table_syms = q.symbols();

    classify_single(family[0], s.conj.x1, atoms, subs, an.notes, an.symbols);
    classify_single(family[1], s.conj.x2, atoms, subs, an.notes, an.symbols);
    classify_single(conclusion, s.conj.x3, atoms, subs, an.notes, an.symbols);

    // Pair previsions with the conclusion collapse when forced: squeezed by
    // the conjunction bounds when the conclusion's prevision is extreme, or
    // identified when the pair conjunction reduces to one of its members.
    auto collapse_pair = [&](int pair_sym, const ConditionalEvent& ci, int xi) {
        if (table_syms.count(pair_sym) == 0) return;
        const std::string& pname = an.symbols.name(pair_sym);
        auto it3 = subs.find(s.conj.x3);
        if (it3 != subs.end()) {
            if (it3->second == AffineValue(1)) {
                subs.emplace(pair_sym, current(subs, xi));
                an.notes.push_back(pname + " squeezed to " + an.symbols.name(xi) +
                                   " by the conjunction bounds at x3 = 1");
            } else {
                subs.emplace(pair_sym, AffineValue(0));
                an.notes.push_back(pname + " squeezed to 0 by the conjunction bounds at x3 = 0");
            }
            return;
        }
        auto iti = subs.find(xi);
        if (iti != subs.end()) {
            const std::string& iname = an.symbols.name(xi);
            if (iti->second == AffineValue(1)) {
                subs.emplace(pair_sym, AffineValue::symbol(s.conj.x3));
                an.notes.push_back(pname + " squeezed to x3 by the conjunction bounds at " +
                                   iname + " = 1");
            } else {
                subs.emplace(pair_sym, AffineValue(0));
                an.notes.push_back(pname + " squeezed to 0 by the conjunction bounds at " +
                                   iname + " = 0");
            }
            return;
        }
        Crq pair_conj = apply_subs(
            conjunction2(ci, conclusion, xi, s.conj.x3, pair_sym, atoms), subs, atoms);
        Crq ind_i = apply_subs(indicator(ci, xi, atoms), subs, atoms);
        if (reduce_equal_crq(pair_conj, ind_i, atoms).equal) {
            subs.emplace(pair_sym, current(subs, xi));
            an.notes.push_back(pname + " collapses to " + an.symbols.name(xi) +
                               ": the pair conjunction reduces to the premise");
            return;
        }
        Crq ind_3 = apply_subs(indicator(conclusion, s.conj.x3, atoms), subs, atoms);
        if (reduce_equal_crq(pair_conj, ind_3, atoms).equal) {
            subs.emplace(pair_sym, current(subs, s.conj.x3));
            an.notes.push_back(pname +
                               " collapses to x3: the pair conjunction reduces to the conclusion");
        }
    };
    collapse_pair(s.conj.x13, family[0], s.conj.x1);
    collapse_pair(s.conj.x23, family[1], s.conj.x2);

    an.iterated = apply_subs(q, subs, atoms);
    an.holds = all_rows_one_at_mu_one(an.iterated, s.mu, an.notes, an.symbols, atoms);
    if (an.holds) {
        an.mu_set = CoherentSet::point(1);
        return an;
    }

    std::vector<Crq> objs{indicator(family[0], s.conj.x1, atoms),
                          indicator(family[1], s.conj.x2, atoms)};
    Assessment binding{{s.conj.x1, 1}, {s.conj.x2, 1}};
    bool need_x3 = table_syms.count(s.conj.x3) > 0 || table_syms.count(s.conj.x13) > 0 ||
                   table_syms.count(s.conj.x23) > 0;
    bind_lower(s.conj.x12, conjunction2(family[0], family[1], s.conj.x1, s.conj.x2, s.conj.x12, atoms),
               table_syms, true, objs, binding, atoms);
    bind_lower(s.conj.x3, indicator(conclusion, s.conj.x3, atoms), table_syms, need_x3, objs,
               binding, atoms);
    bind_lower(s.conj.x13, conjunction2(family[0], conclusion, s.conj.x1, s.conj.x3, s.conj.x13, atoms),
               table_syms, false, objs, binding, atoms);
    bind_lower(s.conj.x23, conjunction2(family[1], conclusion, s.conj.x2, s.conj.x3, s.conj.x23, atoms),
               table_syms, false, objs, binding, atoms);
    an.canonical_binding = binding;
    an.mu_set = coherent_mu_set(q, binding, atoms);
    if (an.mu_set.is_point(1)) {
        throw InternalError("failing iterated verdict has prevision set {1}");
    }
    return an;
}

EntailmentVerdict p_entails_iterated(const std::vector<ConditionalEvent>& family,
                                     const ConditionalEvent& conclusion,
                                     const AtomTable& atoms) {
    IteratedAnalysis an = analyze_iterated(family, conclusion, atoms);
    EntailmentVerdict v;
    v.holds = an.holds;
    v.method = EntailmentMethod::Iterated;
    v.mu_set = an.mu_set;
    return v;
}

DisjunctiveCase disjunctive_characterization(const std::vector<ConditionalEvent>& family,
                                             const ConditionalEvent& conclusion,
                                             const AtomTable& atoms) {
    if (family.size() != 2) {
        throw UnsupportedArity("disjunctive characterization takes exactly 2 premises");
    }
    if (!p_consistent(family, atoms)) {
        throw NotPConsistent("premise family is not p-consistent");
    }
    if (implies(conclusion.antecedent(), conclusion.consequent(), atoms)) {
        return DisjunctiveCase::ConclusionConstantOne;
    }
    if (analyze_iterated({family[0]}, conclusion, atoms).holds) {
        return DisjunctiveCase::IteratedSingleton1;
    }
    if (analyze_iterated({family[1]}, conclusion, atoms).holds) {
        return DisjunctiveCase::IteratedSingleton2;
    }
    if (analyze_iterated({quasi_conjunction(family, atoms)}, conclusion, atoms).holds) {
        return DisjunctiveCase::IteratedPairQc;
    }
    return DisjunctiveCase::None;
}

}  // namespace concord
