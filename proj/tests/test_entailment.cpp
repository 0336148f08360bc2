#include "concord/entailment.hpp"

#include "catalog.hpp"

#include <doctest.h>

using namespace concord;

namespace {

struct AC {
    AtomTable atoms;
    EventExpr a, c, tr;
    AC() : a((atoms.add("A"), EventExpr::atom(0))),
           c((atoms.add("C"), EventExpr::atom(1))),
           tr(EventExpr::truth()) {}
};

bool has_note(const std::vector<std::string>& notes, const std::string& needle) {
    for (const auto& n : notes)
        if (n.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("p-consistency is coherence of the all-ones assessment") {
    AC u;
    ConditionalEvent a(u.a, u.tr, u.atoms), na(!u.a, u.tr, u.atoms);
    ConditionalEvent ca(u.c, u.a, u.atoms), nca(!u.c, u.tr, u.atoms);
    CHECK(p_consistent({a}, u.atoms));
    CHECK(!p_consistent({a, na}, u.atoms));
    // Deniable pairs can still be p-consistent: C|A and ~C hold together
    // when A fails.
    CHECK(p_consistent({ca, nca}, u.atoms));
    CHECK(!p_consistent({ConditionalEvent(EventExpr::falsity(), u.a, u.atoms)}, u.atoms));
}

TEST_CASE("direct entailment: premises at one force the conclusion") {
    AC u;
    ConditionalEvent a(u.a, u.tr, u.atoms), ca(u.c, u.a, u.atoms), c(u.c, u.tr, u.atoms);
    CHECK(p_entails_direct({a, ca}, c, u.atoms));
    CHECK(!p_entails_direct({ca}, c, u.atoms));
    CHECK(p_entails_direct({ca}, ca, u.atoms));

    ConditionalEvent na(!u.a, u.tr, u.atoms);
    CHECK_THROWS_AS(p_entails_direct({a, na}, c, u.atoms), NotPConsistent);
}

TEST_CASE("inclusion makes single-premise entailment; the sweep confirms both directions") {
    AtomTable t;
    t.add("A");
    t.add("B");
    auto premises = catalog::truable_conditionals(t);
    auto conclusions = catalog::all_conditionals(t);
    CHECK(premises.size() == 65);
    CHECK(conclusions.size() == 80);

    int entailments = 0;
    for (const auto& p : premises)
        for (const auto& c : conclusions) {
            bool closed_form = p_entails_pair(p, c, t);
            CHECK(closed_form == p_entails_direct({p}, c, t));
            entailments += closed_form ? 1 : 0;
        }
    // Inclusion is sparse but not degenerate.
    CHECK(entailments > 100);
    CHECK(entailments < 3000);
}

TEST_CASE("single-premise entailment rejects a premise that can never be true") {
    AC u;
    ConditionalEvent dud(EventExpr::falsity(), u.a, u.atoms);
    ConditionalEvent c(u.c, u.tr, u.atoms);
    CHECK_THROWS_AS(p_entails_pair(dud, c, u.atoms), TrivialPremise);
}

TEST_CASE("quasi-conjunction witnesses are minimal and deterministic") {
    AtomTable t;
    for (const char* n : {"A", "B", "C"}) t.add(n);
    EventExpr a = EventExpr::atom(0), b = EventExpr::atom(1), c = EventExpr::atom(2);
    ConditionalEvent ca(c, a, t), cb(c, b, t), cab(c, a | b, t);

    // Neither premise alone implies the disjunctive conclusion; the pair does.
    EntailmentVerdict v = p_entails_qc_witness({ca, cb}, cab, t);
    CHECK(v.holds);
    CHECK(v.method == EntailmentMethod::QcWitness);
    CHECK(v.witness == std::vector<int>{0, 1});
    CHECK(!v.tautological_conclusion);

    // A second premise that is the conclusion itself wins as a singleton,
    // and is found before the pair.
    EntailmentVerdict s = p_entails_qc_witness({ca, cab}, cab, t);
    CHECK(s.holds);
    CHECK(s.witness == std::vector<int>{1});

    // Constant-one conclusions need no witness at all.
    EntailmentVerdict taut = p_entails_qc_witness({ca}, ConditionalEvent(a, a, t), t);
    CHECK(taut.holds);
    CHECK(taut.tautological_conclusion);
    CHECK(taut.witness.empty());

    // And a failure: the quasi conjunction of {C|A, C|B} does not reach C.
    EntailmentVerdict f = p_entails_qc_witness({ca, cb}, ConditionalEvent(c, EventExpr::truth(), t), t);
    CHECK(!f.holds);
}

TEST_CASE("iterated analysis, one premise: a generic pair fails with a free prevision") {
    AtomTable t;
    for (const char* n : {"A", "H", "B", "K"}) t.add(n);
    auto ev = [](int i) { return EventExpr::atom(i); };
    ConditionalEvent premise(ev(2), ev(3), t), conclusion(ev(0), ev(1), t);

    IteratedAnalysis an = analyze_iterated({premise}, conclusion, t);
    CHECK(!an.holds);
    CHECK(an.mu_set.to_string() == "[0,1]");
    CHECK(has_note(an.notes, "blocking row"));

    // The canonical binding pins the premise to 1 and the conclusion to the
    // low end of its coherent range.
    int x = *an.symbols.index("x");
    int y = *an.symbols.index("y");
    CHECK(an.canonical_binding.at(x) == 1);
    CHECK(an.canonical_binding.at(y) == 0);
}

TEST_CASE("iterated analysis, one premise: inclusion forces the prevision to one") {
    AtomTable t;
    for (const char* n : {"A", "H", "B", "K"}) t.add(n);
    auto ev = [](int i) { return EventExpr::atom(i); };
    ConditionalEvent fine(ev(0) & ev(2), ev(1), t);   // A&B | H
    ConditionalEvent coarse(ev(0), ev(1), t);         // A | H
    REQUIRE(gn_implies(fine, coarse, t));

    IteratedAnalysis an = analyze_iterated({fine}, coarse, t);
    CHECK(an.holds);
    CHECK(an.mu_set.is_point(1));
}

TEST_CASE("iterated analysis, one premise: tautological conclusions are forced substitutions") {
    AtomTable t;
    for (const char* n : {"A", "B", "K"}) t.add(n);
    auto ev = [](int i) { return EventExpr::atom(i); };
    ConditionalEvent premise(ev(1), ev(2), t);
    ConditionalEvent taut(ev(0), ev(0), t);

    IteratedAnalysis an = analyze_iterated({premise}, taut, t);
    CHECK(an.holds);
    CHECK(an.mu_set.is_point(1));
    CHECK(has_note(an.notes, "forced to 1: antecedent implies consequent"));
}

TEST_CASE("iterated analysis, two premises: the catalogued argument forms") {
    AC u;
    ConditionalEvent a(u.a, u.tr, u.atoms), na(!u.a, u.tr, u.atoms);
    ConditionalEvent c(u.c, u.tr, u.atoms), nc(!u.c, u.tr, u.atoms);
    ConditionalEvent ca(u.c, u.a, u.atoms);

    IteratedAnalysis mp = analyze_iterated({a, ca}, c, u.atoms);
    CHECK(mp.holds);
    CHECK(mp.mu_set.is_point(1));

    IteratedAnalysis mt = analyze_iterated({ca, nc}, na, u.atoms);
    CHECK(mt.holds);
    CHECK(mt.mu_set.is_point(1));

    IteratedAnalysis da = analyze_iterated({na, ca}, nc, u.atoms);
    CHECK(!da.holds);
    CHECK(da.mu_set.to_string() == "[0,1]");
    CHECK(has_note(da.notes, "blocking row"));

    IteratedAnalysis ac = analyze_iterated({c, ca}, a, u.atoms);
    CHECK(!ac.holds);
    CHECK(ac.mu_set.to_string() == "[0,1]");
}

TEST_CASE("iterated analysis, two premises: pair previsions collapse when forced") {
    AtomTable t;
    for (const char* n : {"A", "B", "C", "D", "E"}) t.add(n);
    auto ev = [](int i) { return EventExpr::atom(i); };
    ConditionalEvent p1(ev(1), ev(0), t);          // B | A
    ConditionalEvent p2(ev(3), ev(2), t);          // D | C
    ConditionalEvent concl(ev(1) | ev(4), ev(0), t);  // B or E | A
    REQUIRE(gn_implies(p1, concl, t));

    IteratedAnalysis an = analyze_iterated({p1, p2}, concl, t);
    CHECK(an.holds);
    CHECK(an.mu_set.is_point(1));
    CHECK(has_note(an.notes, "x13 collapses to x1"));
}

TEST_CASE("iterated analysis, two premises: a tautological premise squeezes its pair") {
    AtomTable t;
    for (const char* n : {"A", "B", "C"}) t.add(n);
    auto ev = [](int i) { return EventExpr::atom(i); };
    ConditionalEvent taut(ev(0), ev(0), t);               // A | A
    ConditionalEvent p2(ev(1), EventExpr::truth(), t);    // B
    ConditionalEvent concl(ev(2), !ev(1), t);             // C | ~B

    IteratedAnalysis an = analyze_iterated({taut, p2}, concl, t);
    CHECK(has_note(an.notes, "x1 forced to 1"));
    CHECK(has_note(an.notes, "x13 squeezed to x3 by the conjunction bounds at x1 = 1"));
    CHECK(!an.holds);
    CHECK(!an.mu_set.is_point(1));
}

TEST_CASE("iterated analysis, two premises: an impossible conclusion is forced to zero") {
    AtomTable t;
    for (const char* n : {"A", "B", "C", "D"}) t.add(n);
    auto ev = [](int i) { return EventExpr::atom(i); };
    ConditionalEvent p1(ev(1), ev(0), t), p2(ev(3), ev(2), t);
    ConditionalEvent impossible(EventExpr::falsity(), EventExpr::truth(), t);

    IteratedAnalysis an = analyze_iterated({p1, p2}, impossible, t);
    CHECK(!an.holds);
    CHECK(has_note(an.notes, "forced to 0"));
    CHECK(an.mu_set.is_point(0));
}

TEST_CASE("iterated analysis rejects unsupported premise counts") {
    AC u;
    ConditionalEvent a(u.a, u.tr, u.atoms), c(u.c, u.tr, u.atoms);
    ConditionalEvent ca(u.c, u.a, u.atoms);
    CHECK_THROWS_AS(analyze_iterated({}, c, u.atoms), UnsupportedArity);
    CHECK_THROWS_AS(analyze_iterated({a, ca, ca}, c, u.atoms), UnsupportedArity);
}

TEST_CASE("the three entailment routes agree on the catalogued forms") {
    AC u;
    ConditionalEvent a(u.a, u.tr, u.atoms), ca(u.c, u.a, u.atoms), c(u.c, u.tr, u.atoms);
    EntailmentVerdict it = p_entails_iterated({a, ca}, c, u.atoms);
    CHECK(it.holds);
    CHECK(it.method == EntailmentMethod::Iterated);
    REQUIRE(it.mu_set.has_value());
    CHECK(it.mu_set->is_point(1));
    CHECK(to_string(EntailmentMethod::Iterated) == "iterated");
}

TEST_CASE("disjunctive characterization names the decisive route") {
    AtomTable t;
    for (const char* n : {"A", "B", "C", "D", "E"}) t.add(n);
    auto ev = [](int i) { return EventExpr::atom(i); };
    ConditionalEvent p1(ev(1), ev(0), t);  // B | A
    ConditionalEvent p2(ev(3), ev(2), t);  // D | C

    CHECK(disjunctive_characterization({p1, p2}, ConditionalEvent(ev(0), ev(0), t), t) ==
          DisjunctiveCase::ConclusionConstantOne);
    CHECK(disjunctive_characterization({p1, p2}, ConditionalEvent(ev(1) | ev(4), ev(0), t), t) ==
          DisjunctiveCase::IteratedSingleton1);
    CHECK(disjunctive_characterization({p1, p2}, ConditionalEvent(ev(3) | ev(4), ev(2), t), t) ==
          DisjunctiveCase::IteratedSingleton2);

    ConditionalEvent c_or_a(ev(2), ev(0), t), c_or_b(ev(2), ev(1), t);
    CHECK(disjunctive_characterization({c_or_a, c_or_b},
                                       ConditionalEvent(ev(2), ev(0) | ev(1), t), t) ==
          DisjunctiveCase::IteratedPairQc);

    ConditionalEvent cb(ev(2), ev(1), t), ba(ev(1), ev(0), t);
    CHECK(disjunctive_characterization({cb, ba}, ConditionalEvent(ev(2), ev(0), t), t) ==
          DisjunctiveCase::None);

    CHECK(to_string(DisjunctiveCase::IteratedPairQc) == "iterated-pair-QC");

    CHECK_THROWS_AS(disjunctive_characterization({p1}, ConditionalEvent(ev(1), ev(0), t), t),
                    UnsupportedArity);
    AC u;
    CHECK_THROWS_AS(
        disjunctive_characterization(
            {ConditionalEvent(u.a, u.tr, u.atoms), ConditionalEvent(!u.a, u.tr, u.atoms)},
            ConditionalEvent(u.c, u.tr, u.atoms), u.atoms),
        NotPConsistent);
}

TEST_CASE("an inclusion-ordered third conditional is entailed through the quasi conjunction") {
    // Rebuild of the twenty-constituent triple: QC(c1, c2) included in c3.
    AtomTable t;
    for (const char* n : {"A", "B", "C", "D", "F", "G"}) t.add(n);
    auto ev = [](int i) { return EventExpr::atom(i); };
    ConditionalEvent c1(ev(0), ev(1), t), c2(ev(2), ev(3), t);
    ConditionalEvent qc = quasi_conjunction({c1, c2}, t);

    WorldSet e3h3(t.size()), ne3h3(t.size());
    for (World w = 0; w < t.world_count(); ++w) {
        bool f = ev(4).evaluate(w), g = ev(5).evaluate(w);
        switch (qc.evaluate(w)) {
            case TruthValue::True: e3h3.set(w); break;
            case TruthValue::False:
                if (f && g) e3h3.set(w);
                if (f && !g) ne3h3.set(w);
                break;
            case TruthValue::Void:
                if (f && g) e3h3.set(w);
                break;
        }
    }
    ConditionalEvent c3(event_from_worlds(e3h3, t), event_from_worlds(e3h3 | ne3h3, t), t);
    REQUIRE(gn_implies(qc, c3, t));

    CHECK(p_entails_direct({c1, c2}, c3, t));
    IteratedAnalysis an = analyze_iterated({c1, c2}, c3, t);
    CHECK(an.holds);
    CHECK(an.mu_set.is_point(1));
    CHECK(disjunctive_characterization({c1, c2}, c3, t) == DisjunctiveCase::IteratedPairQc);
}
