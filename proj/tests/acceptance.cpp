// End-to-end acceptance checks for the library's headline guarantees. Each
// check prints one [PASS]/[FAIL] line with a short tally and its runtime;
// the exit status is the number of failures. Checks 3 and 8 harvest the
// coherent bindings they produce so check 10 can replay the product
// identities on them.

#include "catalog.hpp"
#include "oracles.hpp"

#include "concord/problem.hpp"
#include "concord/rules.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

using namespace concord;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Rational random_dyadic(std::mt19937& rng) {
    std::uniform_int_distribution<int> kd(1, 5);
    int den = 1 << kd(rng);
    std::uniform_int_distribution<int> nd(0, den);
    return Rational(nd(rng), den);
}

/// A premise/conclusion pair whose entailment analysis failed, together with
/// the canonical coherent binding and the prevision set found at it.
struct PairCase {
    AtomTable atoms;
    ConditionalEvent premise, conclusion;
    Assessment binding;
    CoherentSet mu_set;
};

struct TripleCase {
    AtomTable atoms;
    ConditionalEvent c1, c2, c3;
    Assessment binding;
    CoherentSet mu_set;
};

/// Deterministic sample of a coherent set: every closed endpoint plus each
/// interval's midpoint.
std::vector<Rational> sample_set(const CoherentSet& s) {
    std::vector<Rational> out;
    for (const auto& p : s.pieces()) {
        if (p.lo == p.hi) {
            out.push_back(p.lo);
            continue;
        }
        if (p.lo_closed) out.push_back(p.lo);
        out.push_back((p.lo + p.hi) / 2);
        if (p.hi_closed) out.push_back(p.hi);
    }
    return out;
}

// ---- check 1: conjunction extension reproduces the Frechet-Hoeffding bounds

Outcome check_frechet() {
    AtomTable t;
    t.add("A");
    t.add("H");
    t.add("B");
    t.add("K");
    EventExpr a = EventExpr::atom(0), h = EventExpr::atom(1);
    EventExpr b = EventExpr::atom(2), k = EventExpr::atom(3);
    ConditionalEvent ah(a, h, t), bk(b, k, t);

    std::mt19937 rng(101);
    int exact = 0;
    const int n = 100;
    for (int i = 0; i < n; ++i) {
        Rational x = random_dyadic(rng), y = random_dyadic(rng);
        std::vector<Crq> objs{indicator(ah, 0, t), indicator(bk, 1, t)};
        Assessment va{{0, x}, {1, y}};
        RationalInterval iv = extension_interval(objs, va, conjunction2(ah, bk, 0, 1, 2, t), t);
        Rational lo = x + y - 1;
        if (lo < 0) lo = 0;
        Rational hi = x < y ? x : y;
        if (iv == RationalInterval{lo, hi, true, true}) ++exact;
    }
    return {exact == n, fmt("%d/%d dyadic assessments give the exact closed interval", exact, n)};
}

// ---- check 2: modus ponens propagates to the exact product interval

Outcome check_modus_ponens_interval() {
    AtomTable t;
    t.add("A");
    t.add("C");
    EventExpr a = EventExpr::atom(0), c = EventExpr::atom(1), tr = EventExpr::truth();
    ConditionalEvent a_t(a, tr, t), c_a(c, a, t), c_t(c, tr, t);

    std::mt19937 rng(202);
    int exact = 0;
    const int n = 50;
    for (int i = 0; i < n; ++i) {
        Rational x = catalog::random_rational(rng, 12), y = catalog::random_rational(rng, 12);
        std::vector<Crq> objs{indicator(a_t, 0, t), indicator(c_a, 1, t)};
        Assessment va{{0, x}, {1, y}};
        RationalInterval iv = extension_interval(objs, va, indicator(c_t, 2, t), t);
        if (iv == RationalInterval{x * y, x * y + 1 - x, true, true}) ++exact;
    }
    return {exact == n, fmt("%d/%d assessments propagate to exactly [xy, xy+1-x]", exact, n)};
}

// ---- check 3: pair entailment coincides with a forced iterated prevision

Outcome check_pair_equivalence(std::vector<PairCase>& harvest) {
    int agree = 0, total = 0, entailed = 0;

    auto examine = [&](const AtomTable& t, const ConditionalEvent& prem,
                       const ConditionalEvent& concl) {
        bool direct = p_entails_direct({prem}, concl, t);
        IteratedAnalysis an = analyze_iterated({prem}, concl, t);
        ++total;
        if (direct == an.holds) ++agree;
        if (direct) ++entailed;
        if (!an.holds) harvest.push_back({t, prem, concl, an.canonical_binding, an.mu_set});
    };

    // Exhaustive over two atoms: every premise with a satisfiable true part
    // (equivalently, p-consistent on its own) against every conclusion. The
    // enumeration is one entry per distinct (consequent-and-antecedent,
    // antecedent) pair, so pairs are deduplicated by logical equivalence.
    AtomTable t2;
    t2.add("A");
    t2.add("B");
    auto premises = catalog::truable_conditionals(t2);
    auto conclusions = catalog::all_conditionals(t2);
    for (const auto& prem : premises)
        for (const auto& concl : conclusions) examine(t2, prem, concl);

    // Random four-atom pairs, deduplicated by their world-set masks.
    AtomTable t4;
    t4.add("A");
    t4.add("B");
    t4.add("C");
    t4.add("D");
    const uint32_t full = (uint32_t{1} << t4.world_count()) - 1;
    std::mt19937 rng(303);
    std::uniform_int_distribution<uint32_t> dist(0, full);
    std::set<std::tuple<uint32_t, uint32_t, uint32_t, uint32_t>> seen;
    while (seen.size() < 200) {
        uint32_t h1 = dist(rng), h2 = dist(rng);
        if (h1 == 0 || h2 == 0) continue;
        uint32_t e1 = dist(rng) & h1, e2 = dist(rng) & h2;
        if (e1 == 0) continue;  // premise needs a satisfiable true part
        if (!seen.insert({e1, h1, e2, h2}).second) continue;
        examine(t4, catalog::from_masks(e1, h1, t4), catalog::from_masks(e2, h2, t4));
    }

    return {agree == total && total >= 200,
            fmt("%d/%d pairs agree (%d entail; %d exhaustive + 200 random)", agree, total,
                entailed, total - 200)};
}

// ---- check 4: the eight p-valid rules verify with prevision forced to 1

const RuleInstance& rule_named(const std::string& name) {
    static const std::vector<RuleInstance> rules = builtin_rules();
    for (const auto& r : rules)
        if (r.name == name) return r;
    throw Error("no builtin rule named " + name);
}

Outcome check_valid_rules() {
    const char* names[] = {"And",          "Cut",           "Cautious Monotonicity",
                           "Or",           "Modus Ponens",  "Modus Tollens",
                           "Bayes",        "QAND"};
    int ok = 0, total = 0;
    std::string first_bad;
    for (const char* name : names) {
        ++total;
        RuleReport rep = verify_rule(rule_named(name));
        if (rep.pass && rep.direct && rep.iterated_holds && rep.mu_set == "{1}") {
            ++ok;
        } else if (first_bad.empty()) {
            first_bad = name;
        }
    }

    // The disjunction rule's table must carry exactly the four claimed
    // values: 1, x+mu(1-x), y+mu(1-y), and mu.
    const RuleInstance& orr = rule_named("Or");
    IteratedAnalysis an = analyze_iterated(orr.premises, orr.conclusion, orr.atoms);
    AffineValue x1 = AffineValue::symbol(*an.symbols.index("x1"));
    AffineValue x2 = AffineValue::symbol(*an.symbols.index("x2"));
    AffineValue mu = AffineValue::symbol(*an.symbols.index("mu"));
    AffineValue one(1);
    std::vector<AffineValue> expected{one, x1 + mu * (one - x1), x2 + mu * (one - x2), mu};
    std::vector<AffineValue> got;
    for (const auto& row : an.iterated.rows()) {
        bool dup = false;
        for (const auto& v : got) dup = dup || v == row.value;
        if (!dup) got.push_back(row.value);
    }
    bool table_ok = got.size() == expected.size();
    for (const auto& e : expected) {
        bool found = false;
        for (const auto& v : got) found = found || v == e;
        table_ok = table_ok && found;
    }

    if (ok != total) return {false, "rule " + first_bad + " failed verification"};
    if (!table_ok) return {false, "disjunction table does not carry the four claimed values"};
    return {true, fmt("%d/%d rules forced to {1}; disjunction table has its four values", ok,
                      total)};
}

// ---- check 5: non-p-valid rules leave the full prevision interval

Outcome check_invalid_rules() {
    for (const char* name : {"Denial of the Antecedent", "Affirmation of the Consequent"}) {
        RuleReport rep = verify_rule(rule_named(name));
        if (rep.direct || rep.mu_set != "[0,1]" || !rep.pass) {
            return {false, std::string(name) + " does not report mu set [0,1]"};
        }
    }
    RuleReport trans = verify_rule(rule_named("Transitivity"));
    if (trans.propagation != "[0,1]") {
        return {false, "transitivity propagation is " + trans.propagation + ", want [0,1]"};
    }
    return {true, "DA and AC leave mu in [0,1]; transitivity propagates to [0,1]"};
}

// ---- check 6: the negated-default variant forces a sure conclusion

Outcome check_negated_default() {
    RuleReport rep = verify_rule(rule_named("Affirmation of the Consequent with negated default"));
    bool holds = rep.default_claim_holds && *rep.default_claim_holds && !rep.default_refutation;
    if (!holds || !rep.pass) {
        return {false, "the side claim P(side)<1 => P(conclusion)=1 did not verify"};
    }
    return {true, "P(side)<1 forces P(conclusion)=1, no refuting region"};
}

// ---- check 7: quasi conjunction conditioned on its family is constant 1

Outcome check_qc_theorem() {
    AtomTable t;
    t.add("A");
    t.add("B");
    t.add("C");
    t.add("D");
    std::mt19937 rng(707);
    int ok = 0, total = 0;
    while (total < 200) {
        ConditionalEvent c1 = catalog::random_conditional(rng, t, true);
        ConditionalEvent c2 = catalog::random_conditional(rng, t, true);
        if (!p_consistent({c1, c2}, t)) continue;
        ++total;
        if (verify_qc_theorem(c1, c2, t)) ++ok;
    }
    return {ok == total, fmt("%d/%d p-consistent pairs force the conditioned QC to 1", ok, total)};
}

// ---- check 8: triple entailment coincides with a forced iterated prevision

Outcome check_triple_equivalence(std::vector<TripleCase>& harvest) {
    AtomTable t;
    t.add("A");
    t.add("B");
    t.add("C");
    t.add("D");
    std::mt19937 rng(808);
    int agree = 0, total = 0, entailed = 0, trivial = 0;
    while (total < 200) {
        ConditionalEvent c1 = catalog::random_conditional(rng, t, true);
        ConditionalEvent c2 = catalog::random_conditional(rng, t, true);
        ConditionalEvent c3 = catalog::random_conditional(rng, t, false);
        if (!p_consistent({c1, c2}, t)) continue;
        bool direct = p_entails_direct({c1, c2}, c3, t);
        std::optional<IteratedAnalysis> an;
        try {
            an = analyze_iterated({c1, c2}, c3, t);
        } catch (const TrivialIterated&) {
            ++trivial;  // conjunction identically zero: no iterated object
            continue;
        }
        ++total;
        if (direct == an->holds) ++agree;
        if (direct) ++entailed;
        if (!an->holds) harvest.push_back({t, c1, c2, c3, an->canonical_binding, an->mu_set});
    }
    return {agree == total && trivial == 0,
            fmt("%d/%d triples agree (%d entail, %d trivial conjunctions)", agree, total,
                entailed, trivial)};
}

// ---- check 9: coherence checker agrees with the vertex-enumeration oracle

Outcome check_oracle_grid() {
    struct Family {
        const char* name;
        AtomTable atoms;
        std::vector<ConditionalEvent> events;
    };
    std::vector<Family> families;

    auto add_family = [&](const char* name, const std::vector<const char*>& atom_names,
                          auto build) {
        Family f;
        f.name = name;
        for (const char* a : atom_names) f.atoms.add(a);
        f.events = build(f.atoms);
        families.push_back(std::move(f));
    };

    EventExpr tr = EventExpr::truth();
    add_family("single", {"A", "H"}, [&](const AtomTable& t) {
        EventExpr a = EventExpr::atom(0), h = EventExpr::atom(1);
        return std::vector<ConditionalEvent>{{a, h, t}};
    });
    add_family("complementary", {"A", "H"}, [&](const AtomTable& t) {
        EventExpr a = EventExpr::atom(0), h = EventExpr::atom(1);
        return std::vector<ConditionalEvent>{{a, h, t}, {!a, h, t}};
    });
    add_family("modus-ponens", {"A", "C"}, [&](const AtomTable& t) {
        EventExpr a = EventExpr::atom(0), c = EventExpr::atom(1);
        return std::vector<ConditionalEvent>{{a, tr, t}, {c, a, t}};
    });
    add_family("modus-tollens", {"A", "C"}, [&](const AtomTable& t) {
        EventExpr a = EventExpr::atom(0), c = EventExpr::atom(1);
        return std::vector<ConditionalEvent>{{c, a, t}, {!c, tr, t}, {!a, tr, t}};
    });
    add_family("disjunctive-antecedent", {"A", "B"}, [&](const AtomTable& t) {
        EventExpr a = EventExpr::atom(0), b = EventExpr::atom(1);
        return std::vector<ConditionalEvent>{{a, a | b, t}, {b, a | b, t}, {a | b, tr, t}};
    });
    add_family("product", {"A", "B"}, [&](const AtomTable& t) {
        EventExpr a = EventExpr::atom(0), b = EventExpr::atom(1);
        return std::vector<ConditionalEvent>{{a, tr, t}, {b, a, t}, {a & b, tr, t}};
    });
    add_family("zero-layer-cascade", {"A", "H", "B", "C"}, [&](const AtomTable& t) {
        EventExpr a = EventExpr::atom(0), h = EventExpr::atom(1);
        EventExpr b = EventExpr::atom(2), c = EventExpr::atom(3);
        return std::vector<ConditionalEvent>{{a, h, t}, {b, !h, t}, {c, (!h) & (!b), t}};
    });
    add_family("quasi-conjunction", {"A", "H", "B", "K"}, [&](const AtomTable& t) {
        EventExpr a = EventExpr::atom(0), h = EventExpr::atom(1);
        EventExpr b = EventExpr::atom(2), k = EventExpr::atom(3);
        ConditionalEvent ah(a, h, t), bk(b, k, t);
        return std::vector<ConditionalEvent>{ah, bk, quasi_conjunction({ah, bk}, t)};
    });
    add_family("inclusion-chain", {"A", "B"}, [&](const AtomTable& t) {
        EventExpr a = EventExpr::atom(0), b = EventExpr::atom(1);
        return std::vector<ConditionalEvent>{{a & b, a | b, t}, {b, a | b, t}, {(!a) | b, tr, t}};
    });
    add_family("transitivity", {"A", "B", "C"}, [&](const AtomTable& t) {
        EventExpr a = EventExpr::atom(0), b = EventExpr::atom(1), c = EventExpr::atom(2);
        return std::vector<ConditionalEvent>{{a, b, t}, {b, c, t}, {a, c, t}};
    });
    add_family("bayes-triple", {"A", "H"}, [&](const AtomTable& t) {
        EventExpr a = EventExpr::atom(0), h = EventExpr::atom(1);
        return std::vector<ConditionalEvent>{{a, h, t}, {h, a, t}, {a & h, tr, t}};
    });

    // Every rational in [0,1] with denominator at most 4.
    const std::vector<Rational> grid{Rational(0),       Rational(1, 4), Rational(1, 3),
                                     Rational(1, 2),    Rational(2, 3), Rational(3, 4),
                                     Rational(1)};
    long points = 0, disagreements = 0;
    for (const auto& f : families) {
        std::vector<Crq> objs;
        for (size_t i = 0; i < f.events.size(); ++i) {
            objs.push_back(indicator(f.events[i], static_cast<int>(i), f.atoms));
        }
        std::vector<size_t> idx(f.events.size(), 0);
        while (true) {
            Assessment a;
            std::vector<Rational> p;
            for (size_t i = 0; i < idx.size(); ++i) {
                a[static_cast<int>(i)] = grid[idx[i]];
                p.push_back(grid[idx[i]]);
            }
            ++points;
            if (check_coherence(objs, a, f.atoms) != oracle::coherent(f.events, p, f.atoms)) {
                ++disagreements;
            }
            size_t j = 0;
            while (j < idx.size() && ++idx[j] == grid.size()) idx[j++] = 0;
            if (j == idx.size()) break;
        }
    }
    return {disagreements == 0,
            fmt("%ld grid points over %zu families, %ld disagreements", points, families.size(),
                disagreements)};
}

// ---- check 10: product identities at every harvested coherent binding

// Every coherent prevision mu for the iterated object over the harvested
// base binding is sampled (endpoints and midpoints of its coherent set);
// each sample must itself be coherent, and the stated conjunction prevision
// must extend to exactly the product.
template <typename Case>
long replay_identities(const Case& c, const std::vector<Crq>& base, const Crq& iterated, int mu,
                       const Crq& conjunction, const Rational& factor, long& bad) {
    const AtomTable& t = c.atoms;
    CoherentSet coherent_mus = coherent_value_set(base, c.binding, iterated, t);
    long tested = 0;
    for (const Rational& mu_hat : sample_set(coherent_mus)) {
        std::vector<Crq> objs = base;
        objs.push_back(iterated);
        Assessment a = c.binding;
        a[mu] = mu_hat;
        Rational want = mu_hat * factor;
        if (!check_coherence(objs, a, t) ||
            !(extension_interval(objs, a, conjunction, t) ==
              RationalInterval{want, want, true, true})) {
            ++bad;
        }
        ++tested;
    }
    return tested;
}

// With the premise assessed x and the iterated conclusion assessed mu, the
// conjunction of premise and conclusion must extend to exactly mu*x.
long pair_identities(const PairCase& pc, long& bad) {
    const int x = 0, y = 1, z = 2, mu = 3;
    const AtomTable& t = pc.atoms;
    std::vector<Crq> base{indicator(pc.premise, x, t)};
    if (pc.binding.count(y)) base.push_back(indicator(pc.conclusion, y, t));
    return replay_identities(pc, base, iterated2(pc.conclusion, pc.premise, x, y, z, mu, t), mu,
                             conjunction2(pc.premise, pc.conclusion, x, y, z, t),
                             pc.binding.at(x), bad);
}

// With the pair conjunction assessed z and the iterated conclusion assessed
// mu, the triple conjunction must extend to exactly mu*z.
long triple_identities(const TripleCase& tc, long& bad) {
    Conj3Symbols cs{0, 1, 2, 3, 4, 5, 6};
    const int mu = 7;
    const AtomTable& t = tc.atoms;
    std::vector<Crq> base{indicator(tc.c1, cs.x1, t), indicator(tc.c2, cs.x2, t)};
    auto settled = [&](int sym, Crq q) {
        if (tc.binding.count(sym)) base.push_back(std::move(q));
    };
    settled(cs.x12, conjunction2(tc.c1, tc.c2, cs.x1, cs.x2, cs.x12, t));
    settled(cs.x3, indicator(tc.c3, cs.x3, t));
    settled(cs.x13, conjunction2(tc.c1, tc.c3, cs.x1, cs.x3, cs.x13, t));
    settled(cs.x23, conjunction2(tc.c2, tc.c3, cs.x2, cs.x3, cs.x23, t));
    return replay_identities(tc, base, iterated_on_conjunction(tc.c3, tc.c1, tc.c2, {cs, mu}, t),
                             mu, conjunction3(tc.c1, tc.c2, tc.c3, cs, t),
                             tc.binding.at(cs.x12), bad);
}

Outcome check_product_identities(const std::vector<PairCase>& pairs,
                                 const std::vector<TripleCase>& triples) {
    long pair_tested = 0, pair_bad = 0;
    for (const auto& pc : pairs) pair_tested += pair_identities(pc, pair_bad);
    long triple_tested = 0, triple_bad = 0;
    for (const auto& tc : triples) triple_tested += triple_identities(tc, triple_bad);
    bool enough = pair_tested - pair_bad >= 100 && triple_tested - triple_bad >= 10;
    return {pair_bad == 0 && triple_bad == 0 && enough,
            fmt("conjunction = mu*x at %ld pair bindings (%ld violations), "
                "triple = mu*z at %ld (%ld violations)",
                pair_tested, pair_bad, triple_tested, triple_bad)};
}

}  // namespace

int main() {
    std::vector<PairCase> pair_harvest;
    std::vector<TripleCase> triple_harvest;

    struct Check {
        const char* name;
        std::function<Outcome()> run;
        double limit_seconds;  // 0 = unlimited
    };
    const std::vector<Check> checks{
        {"conjunction extension reproduces the Frechet-Hoeffding bounds", check_frechet, 30},
        {"modus ponens propagates to the exact product interval", check_modus_ponens_interval,
         10},
        {"pair entailment coincides with a forced iterated prevision",
         [&] { return check_pair_equivalence(pair_harvest); }, 0},
        {"the eight p-valid rules verify with prevision forced to 1", check_valid_rules, 0},
        {"non-p-valid rules leave the full prevision interval", check_invalid_rules, 0},
        {"the negated-default variant forces a sure conclusion", check_negated_default, 0},
        {"quasi conjunction conditioned on its family is constant 1", check_qc_theorem, 60},
        {"triple entailment coincides with a forced iterated prevision",
         [&] { return check_triple_equivalence(triple_harvest); }, 0},
        {"coherence checker agrees with the vertex-enumeration oracle", check_oracle_grid, 0},
        {"product identities hold at every harvested coherent binding",
         [&] { return check_product_identities(pair_harvest, triple_harvest); }, 0},
    };

    int failures = 0;
    for (size_t i = 0; i < checks.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = checks[i].run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                          .count();
        if (checks[i].limit_seconds > 0 && secs > checks[i].limit_seconds) {
            out.pass = false;
            out.detail += fmt(" [over the %.0fs budget]", checks[i].limit_seconds);
        }
        std::printf("[%s] %2zu %s: %s (%.2fs)\n", out.pass ? "PASS" : "FAIL", i + 1,
                    checks[i].name, out.detail.c_str(), secs);
        failures += out.pass ? 0 : 1;
    }
    return failures;
}
