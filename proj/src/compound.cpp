#include "concord/compound.hpp"

#include <algorithm>

namespace concord {

Crq Crq::build(std::vector<ConditionalEvent> family, EventExpr conditioning, int prevision,
               const std::function<AffineValue(World)>& value_fn, const AtomTable& atoms) {
    Crq q;
    q.conditioning_ = conditioning;
    q.prevision_ = prevision;
    q.n_atoms_ = atoms.size();
    q.family_ = std::move(family);

    uint32_t n = atoms.world_count();
    std::vector<AffineValue> values(n);
    std::vector<AffineValue> distinct;
    std::vector<uint64_t> cls(n);
    for (World w = 0; w < n; ++w) {
        values[w] = value_fn(w);
        size_t k = 0;
        while (k < distinct.size() && !(distinct[k] == values[w])) ++k;
        if (k == distinct.size()) distinct.push_back(values[w]);
        cls[w] = k;
    }

    AffineValue own = AffineValue::symbol(prevision);
    for (World w = 0; w < n; ++w) {
        if (!conditioning.evaluate(w) && !(values[w] == own)) {
            throw InternalError("called-off world does not return the prevision");
        }
    }

    auto groups = constituents(q.family_, atoms, [&cls](World w) { return cls[w]; });
    for (auto& g : groups) {
        CrqRow row;
        row.value = values[g.representative];
        row.constituent = std::move(g);
        q.rows_.push_back(std::move(row));
    }
    return q;
}

const AffineValue& Crq::value_at(World w) const {
    for (const auto& row : rows_) {
        if (row.constituent.worlds.test(w)) return row.value;
    }
    throw InternalError("world outside every table row");
}

std::set<int> Crq::symbols() const {
    std::set<int> out;
    for (const auto& row : rows_) {
        auto s = row.value.symbols();
        out.insert(s.begin(), s.end());
    }
    return out;
}

Crq Crq::substituted(int sym, const AffineValue& v, const AtomTable& atoms) const {
    return build(
        family_, conditioning_, prevision_,
        [&](World w) { return value_at(w).substituted(sym, v); }, atoms);
}

std::string world_to_string(World w, const AtomTable& atoms) {
    if (atoms.size() == 0) return "TRUE";
    std::string out;
    for (int a = 0; a < atoms.size(); ++a) {
        if (!out.empty()) out += " & ";
        if (!((w >> a) & 1)) out += "~";
        out += atoms.name(a);
    }
    return out;
}

Crq indicator(const ConditionalEvent& c, int x, const AtomTable& atoms) {
    AffineValue sym = AffineValue::symbol(x);
    return Crq::build(
        {c}, c.antecedent(), x,
        [&](World w) -> AffineValue {
            switch (c.evaluate(w)) {
                case TruthValue::True: return AffineValue(1);
                case TruthValue::False: return AffineValue(0);
                default: return sym;
            }
        },
        atoms);
}

namespace {

/// Two-conditional conjunction value at one world, in the given symbols.
AffineValue conj2_value(const ConditionalEvent& c1, const ConditionalEvent& c2, int x, int y,
                        int z, World w) {
    TruthValue t1 = c1.evaluate(w);
    TruthValue t2 = c2.evaluate(w);
    if (t1 == TruthValue::False || t2 == TruthValue::False) return AffineValue(0);
    if (t1 == TruthValue::True && t2 == TruthValue::True) return AffineValue(1);
    if (t1 == TruthValue::Void && t2 == TruthValue::True) return AffineValue::symbol(x);
    if (t1 == TruthValue::True && t2 == TruthValue::Void) return AffineValue::symbol(y);
    return AffineValue::symbol(z);  // both void
}

AffineValue conj3_value(const ConditionalEvent& c1, const ConditionalEvent& c2,
                        const ConditionalEvent& c3, const Conj3Symbols& s, World w) {
    TruthValue t1 = c1.evaluate(w);
    TruthValue t2 = c2.evaluate(w);
    TruthValue t3 = c3.evaluate(w);
    if (t1 == TruthValue::False || t2 == TruthValue::False || t3 == TruthValue::False) {
        return AffineValue(0);
    }
    int voids = (t1 == TruthValue::Void) + (t2 == TruthValue::Void) + (t3 == TruthValue::Void);
    if (voids == 0) return AffineValue(1);
    if (voids == 3) return AffineValue::symbol(s.x123);
    if (voids == 1) {
        if (t1 == TruthValue::Void) return AffineValue::symbol(s.x1);
        if (t2 == TruthValue::Void) return AffineValue::symbol(s.x2);
        return AffineValue::symbol(s.x3);
    }
    if (t3 == TruthValue::True) return AffineValue::symbol(s.x12);
    if (t2 == TruthValue::True) return AffineValue::symbol(s.x13);
    return AffineValue::symbol(s.x23);
}

}  // namespace

Crq conjunction2(const ConditionalEvent& c1, const ConditionalEvent& c2, int x, int y, int z,
                 const AtomTable& atoms) {
    return Crq::build(
        {c1, c2}, c1.antecedent() | c2.antecedent(), z,
        [&](World w) { return conj2_value(c1, c2, x, y, z, w); }, atoms);
}

Crq conjunction3(const ConditionalEvent& c1, const ConditionalEvent& c2,
                 const ConditionalEvent& c3, const Conj3Symbols& s, const AtomTable& atoms) {
    return Crq::build(
        {c1, c2, c3}, c1.antecedent() | c2.antecedent() | c3.antecedent(), s.x123,
        [&](World w) { return conj3_value(c1, c2, c3, s, w); }, atoms);
}

ConditionalEvent quasi_conjunction(const std::vector<ConditionalEvent>& family,
                                   const AtomTable& atoms) {
    if (family.empty()) throw Error("quasi conjunction of an empty family");
    std::optional<EventExpr> consequent;
    std::optional<EventExpr> antecedent;
    for (const auto& c : family) {
        EventExpr surrogate = (!c.antecedent()) | (c.consequent() & c.antecedent());
        consequent = consequent ? (*consequent & surrogate) : surrogate;
        antecedent = antecedent ? (*antecedent | c.antecedent()) : c.antecedent();
    }
    return ConditionalEvent(*consequent, *antecedent, atoms);
}

Crq iterated2(const ConditionalEvent& consequent, const ConditionalEvent& antecedent, int x,
              int y, int z, int mu, const AtomTable& atoms) {
    if (!satisfiable(antecedent.consequent() & antecedent.antecedent(), atoms)) {
        throw TrivialIterated("antecedent conditional can never be true");
    }
    AffineValue mu_v = AffineValue::symbol(mu);
    AffineValue one_minus_x = AffineValue(1) - AffineValue::symbol(x);
    return Crq::build(
        {antecedent, consequent}, antecedent.antecedent() | consequent.antecedent(), mu,
        [&](World w) {
            AffineValue conj = conj2_value(antecedent, consequent, x, y, z, w)
                                   .substituted(z, mu_v * AffineValue::symbol(x));
            // The antecedent-false indicator: 1 when the antecedent
            // conditional is false, 1-x when it is void.
            AffineValue penalty;
            switch (antecedent.evaluate(w)) {
                case TruthValue::False: penalty = AffineValue(1); break;
                case TruthValue::Void: penalty = one_minus_x; break;
                default: penalty = AffineValue(0); break;
            }
            return conj + mu_v * penalty;
        },
        atoms);
}

Crq iterated_on_conjunction(const ConditionalEvent& consequent, const ConditionalEvent& c1,
                            const ConditionalEvent& c2, const IteratedConjSymbols& s,
                            const AtomTable& atoms) {
    int n = atoms.size();
    WorldSet e1h1 = c1.consequent().worlds(n) & c1.antecedent().worlds(n);
    WorldSet e2h2 = c2.consequent().worlds(n) & c2.antecedent().worlds(n);
    WorldSet h1 = c1.antecedent().worlds(n);
    WorldSet h2 = c2.antecedent().worlds(n);
    bool one_row = !(e1h1 & e2h2).empty();
    bool x_row = !((~h1) & e2h2).empty();
    bool y_row = !(e1h1 & (~h2)).empty();
    if (!one_row && !x_row && !y_row) {
        throw TrivialIterated("antecedent conjunction is the zero quantity");
    }
    const Conj3Symbols& c = s.conj;
    AffineValue mu_v = AffineValue::symbol(s.mu);
    AffineValue t_sub = mu_v * AffineValue::symbol(c.x12);
    return Crq::build(
        {c1, c2, consequent},
        c1.antecedent() | c2.antecedent() | consequent.antecedent(), s.mu,
        [&](World w) {
            AffineValue triple =
                conj3_value(c1, c2, consequent, c, w).substituted(c.x123, t_sub);
            AffineValue pair = conj2_value(c1, c2, c.x1, c.x2, c.x12, w);
            return triple + mu_v * (AffineValue(1) - pair);
        },
        atoms);
}

ReduceResult reduce_equal_crq(const Crq& q1, const Crq& q2, const AtomTable& atoms) {
    ReduceResult r;
    r.from_sym = q1.prevision();
    r.to_sym = q2.prevision();
    AffineValue unified = AffineValue::symbol(q2.prevision());
    WorldSet scope = q1.conditioning().worlds(atoms.size()) |
                     q2.conditioning().worlds(atoms.size());
    uint32_t n = atoms.world_count();
    for (World w = 0; w < n; ++w) {
        if (!scope.test(w)) continue;
        AffineValue v1 = q1.value_at(w).substituted(q1.prevision(), unified);
        if (!(v1 == q2.value_at(w))) {
            r.equal = false;
            r.witness = w;
            return r;
        }
    }
    r.equal = true;
    return r;
}

Crq conjunction_with_gn(const ConditionalEvent& c1, const ConditionalEvent& c2, int x1,
                        const AtomTable& atoms) {
    if (!gn_implies(c1, c2, atoms)) {
        throw NotGnImplied("pair is not inclusion-ordered; conjunction does not collapse");
    }
    return indicator(c1, x1, atoms);
}

}  // namespace concord
