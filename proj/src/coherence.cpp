#include "concord/coherence.hpp"

#include <algorithm>

namespace concord {

std::string RationalInterval::to_string() const {
    std::string s;
    s += lo_closed ? "[" : "(";
    s += concord::to_string(lo);
    s += ",";
    s += concord::to_string(hi);
    s += hi_closed ? "]" : ")";
    return s;
}

CoherentSet CoherentSet::point(const Rational& r) {
    CoherentSet s;
    s.add(Piece{r, r, true, true});
    return s;
}

CoherentSet CoherentSet::closed(const Rational& lo, const Rational& hi) {
    CoherentSet s;
    s.add(Piece{lo, hi, true, true});
    return s;
}

void CoherentSet::add(Piece p) {
    pieces_.push_back(std::move(p));
    normalize();
}

CoherentSet CoherentSet::union_with(const CoherentSet& o) const {
    CoherentSet s = *this;
    for (const auto& p : o.pieces_) s.pieces_.push_back(p);
    s.normalize();
    return s;
}

void CoherentSet::normalize() {
    std::vector<Piece> ps;
    for (const auto& p : pieces_) {
        if (p.lo > p.hi) continue;
        if (p.lo == p.hi && !(p.lo_closed && p.hi_closed)) continue;
        ps.push_back(p);
    }
    std::sort(ps.begin(), ps.end(), [](const Piece& a, const Piece& b) {
        if (a.lo != b.lo) return a.lo < b.lo;
        return a.lo_closed && !b.lo_closed;
    });
    std::vector<Piece> out;
    for (const auto& p : ps) {
        if (!out.empty()) {
            Piece& q = out.back();
            bool joins = p.lo < q.hi || (p.lo == q.hi && (p.lo_closed || q.hi_closed));
            if (joins) {
                if (p.hi > q.hi) {
                    q.hi = p.hi;
                    q.hi_closed = p.hi_closed;
                } else if (p.hi == q.hi && p.hi_closed) {
                    q.hi_closed = true;
                }
                continue;
            }
        }
        out.push_back(p);
    }
    pieces_ = std::move(out);
}

bool CoherentSet::is_point(const Rational& r) const {
    return pieces_.size() == 1 && pieces_[0].lo == r && pieces_[0].hi == r;
}

RationalInterval CoherentSet::as_interval() const {
    if (pieces_.size() != 1) {
        throw InternalError("coherent set is not a single interval: " + to_string());
    }
    const Piece& p = pieces_[0];
    return RationalInterval{p.lo, p.hi, p.lo_closed, p.hi_closed};
}

bool CoherentSet::contains(const Rational& r) const {
    for (const auto& p : pieces_) {
        bool above_lo = r > p.lo || (r == p.lo && p.lo_closed);
        bool below_hi = r < p.hi || (r == p.hi && p.hi_closed);
        if (above_lo && below_hi) return true;
    }
    return false;
}

std::string CoherentSet::to_string() const {
    if (pieces_.empty()) return "{}";
    std::string s;
    for (const auto& p : pieces_) {
        if (!s.empty()) s += " U ";
        if (p.lo == p.hi) {
            s += "{" + concord::to_string(p.lo) + "}";
        } else {
            s += p.lo_closed ? "[" : "(";
            s += concord::to_string(p.lo);
            s += ",";
            s += concord::to_string(p.hi);
            s += p.hi_closed ? "]" : ")";
        }
    }
    return s;
}

WorldSet active_event(const Crq& q, const Assessment& a, const AtomTable& atoms) {
    Binding others = a;
    others.erase(q.prevision());
    AffineValue own = AffineValue::symbol(q.prevision());
    WorldSet act(atoms.size());
    for (const auto& row : q.rows()) {
        if (row.value.substituted(others) == own) continue;
        act = act | row.constituent.worlds;
    }
    return act;
}

namespace {

std::vector<World> to_worlds(const WorldSet& ws) {
    std::vector<World> out;
    uint32_t n = ws.world_count();
    for (World w = 0; w < n; ++w) {
        if (ws.test(w)) out.push_back(w);
    }
    return out;
}

/// A quantity whose prevision is bound: binding value, settlement event, and
/// exact numeric table values.
struct BoundObject {
    const Crq* q = nullptr;
    Rational p;
    WorldSet active;

    Rational value(World w, const Assessment& a) const { return q->value_at(w).evaluate(a); }
};

std::vector<BoundObject> prepare_bound(const std::vector<Crq>& objects, const Assessment& a,
                                       const AtomTable& atoms) {
    std::vector<BoundObject> out;
    for (const auto& q : objects) {
        auto it = a.find(q.prevision());
        if (it == a.end()) {
            throw UnboundSymbol("assessed quantity's own prevision is unbound");
        }
        out.push_back(BoundObject{&q, it->second, active_event(q, a, atoms)});
    }
    return out;
}

/// A quantity whose prevision is the query unknown: settlement event plus
/// numeric values there (the rest of the assessment substituted in).
struct TargetObject {
    const Crq* q = nullptr;
    WorldSet active;
    std::vector<Rational> value;  // indexed by world
};

TargetObject prepare_target(const Crq& q, const Assessment& a, const AtomTable& atoms) {
    Binding others = a;
    others.erase(q.prevision());
    AffineValue own = AffineValue::symbol(q.prevision());
    TargetObject t;
    t.q = &q;
    t.active = WorldSet(atoms.size());
    t.value.assign(atoms.world_count(), Rational(0));
    for (const auto& row : q.rows()) {
        AffineValue v = row.value.substituted(others);
        if (v == own) continue;
        if (!v.is_constant()) {
            if (v.mentions(q.prevision())) {
                throw InternalError(
                    "target settles on values involving its own prevision; "
                    "use the fixed-point query instead");
            }
            throw UnboundSymbol("target table mentions an unbound symbol");
        }
        Rational c = v.constant_part();
        uint32_t n = row.constituent.worlds.world_count();
        for (World w = 0; w < n; ++w) {
            if (!row.constituent.worlds.test(w)) continue;
            t.active.set(w);
            t.value[w] = c;
        }
    }
    return t;
}

/// Shared level system: the constituents of one recursion level and the
/// homogeneous balance constraints of the listed objects.
struct LevelSystem {
    std::vector<World> worlds;

    LinearProgram base_lp(const std::vector<BoundObject>& bound, const std::vector<int>& live,
                          const Assessment& a, bool with_total) const {
        LinearProgram lp(static_cast<int>(worlds.size()));
        if (with_total) {
            lp.add_eq(std::vector<Rational>(worlds.size(), Rational(1)), Rational(1));
        }
        for (int i : live) {
            std::vector<Rational> row(worlds.size());
            for (size_t k = 0; k < worlds.size(); ++k) {
                row[k] = bound[i].value(worlds[k], a) - bound[i].p;
            }
            lp.add_eq(std::move(row), Rational(0));
        }
        return lp;
    }

    std::vector<Rational> mass_coeffs(const WorldSet& event) const {
        std::vector<Rational> c(worlds.size(), Rational(0));
        for (size_t k = 0; k < worlds.size(); ++k) {
            if (event.test(worlds[k])) c[k] = 1;
        }
        return c;
    }
};

LevelSystem make_level(const std::vector<BoundObject>& bound, const std::vector<int>& live,
                       const WorldSet* extra, const AtomTable& atoms) {
    WorldSet u(atoms.size());
    for (int i : live) u = u | bound[i].active;
    if (extra) u = u | *extra;
    return LevelSystem{to_worlds(u)};
}

/// Objects among `live` whose settlement event carries zero mass in every
/// solution of the given system (decided by one max-mass LP per object).
std::vector<int> zero_layer(const LevelSystem& level, const LinearProgram& lp,
                            const std::vector<BoundObject>& bound,
                            const std::vector<int>& live) {
    std::vector<int> layer;
    for (int i : live) {
        LpResult r = lp.maximize(level.mass_coeffs(bound[i].active));
        if (r.status != LpStatus::Optimal) {
            throw InternalError("zero-layer mass LP not optimal");
        }
        if (r.objective == 0) layer.push_back(i);
    }
    return layer;
}

}  // namespace

bool check_coherence(const std::vector<Crq>& objects, const Assessment& a,
                     const AtomTable& atoms, CoherenceReport* report) {
    std::vector<BoundObject> bound = prepare_bound(objects, a, atoms);
    if (report) *report = CoherenceReport{};

    std::vector<int> idx(objects.size());
    for (size_t i = 0; i < objects.size(); ++i) idx[i] = static_cast<int>(i);

    while (true) {
        std::vector<int> live;
        for (int i : idx) {
            if (!bound[i].active.empty()) live.push_back(i);
        }
        if (live.empty()) {
            if (report) report->coherent = true;
            return true;
        }
        LevelSystem level = make_level(bound, live, nullptr, atoms);
        LinearProgram lp = level.base_lp(bound, live, a, /*with_total=*/true);
        LpResult feas = lp.minimize(std::vector<Rational>(level.worlds.size(), Rational(0)));
        if (feas.status != LpStatus::Optimal) {
            if (report) report->coherent = false;
            return false;
        }
        std::vector<int> layer = zero_layer(level, lp, bound, live);
        if (report) {
            CoherenceLevel lv;
            lv.worlds = level.worlds;
            lv.lambda = feas.x;
            for (int i : live) {
                if (std::find(layer.begin(), layer.end(), i) == layer.end()) {
                    lv.settled.push_back(i);
                }
            }
            report->levels.push_back(std::move(lv));
            report->recursion_depth = static_cast<int>(report->levels.size());
        }
        if (layer.empty()) {
            if (report) report->coherent = true;
            return true;
        }
        idx = std::move(layer);
    }
}

namespace {

CoherentSet value_set_rec(const std::vector<BoundObject>& bound, std::vector<int> live,
                          const TargetObject& target, const Assessment& a,
                          const AtomTable& atoms) {
    live.erase(std::remove_if(live.begin(), live.end(),
                              [&](int i) { return bound[i].active.empty(); }),
               live.end());
    if (target.active.empty()) return CoherentSet::full();

    LevelSystem level = make_level(bound, live, &target.active, atoms);
    std::vector<Rational> t_mass = level.mass_coeffs(target.active);
    std::vector<Rational> t_value(level.worlds.size(), Rational(0));
    for (size_t k = 0; k < level.worlds.size(); ++k) {
        if (target.active.test(level.worlds[k])) t_value[k] = target.value[level.worlds[k]];
    }

    CoherentSet out;

    // Settling branch: condition on positive settlement mass. The balance
    // constraints are homogeneous, so total mass may be renormalized onto
    // the settlement event itself.
    {
        LinearProgram lp = level.base_lp(bound, live, a, /*with_total=*/false);
        lp.add_eq(t_mass, Rational(1));
        LpResult lo = lp.minimize(t_value);
        if (lo.status == LpStatus::Optimal) {
            LpResult hi = lp.maximize(t_value);
            if (hi.status != LpStatus::Optimal) {
                throw InternalError("bounded extension objective not optimal");
            }
            out.add(CoherentSet::Piece{lo.objective, hi.objective, true, true});
        }
    }

    // Deferral branch: the target's settlement event can carry zero mass;
    // its value is then pinned one level deeper, on the zero layer.
    {
        LinearProgram lp = level.base_lp(bound, live, a, /*with_total=*/true);
        lp.add_eq(t_mass, Rational(0));
        if (lp.feasible()) {
            std::vector<int> layer = zero_layer(level, lp, bound, live);
            if (layer.size() == live.size() && !live.empty()) {
                throw InternalError("zero layer failed to shrink");
            }
            out = out.union_with(value_set_rec(bound, layer, target, a, atoms));
        }
    }
    return out;
}

std::optional<Rational> pick_below_one(const CoherentSet& s) {
    for (const auto& p : s.pieces()) {
        if (p.lo >= 1) continue;
        if (p.lo_closed) return p.lo;
        Rational top = p.hi < 1 ? p.hi : Rational(1);
        return (p.lo + top) / 2;
    }
    return std::nullopt;
}

}  // namespace

CoherentSet coherent_value_set(const std::vector<Crq>& objects, const Assessment& a,
                               const Crq& target, const AtomTable& atoms) {
    if (!check_coherence(objects, a, atoms)) {
        throw IncoherentBase("base assessment is incoherent");
    }
    std::vector<BoundObject> bound = prepare_bound(objects, a, atoms);
    TargetObject t = prepare_target(target, a, atoms);
    std::vector<int> live(objects.size());
    for (size_t i = 0; i < objects.size(); ++i) live[i] = static_cast<int>(i);
    CoherentSet raw = value_set_rec(bound, live, t, a, atoms);

    // Closed endpoints must themselves extend coherently; demote any that
    // fail to open bounds.
    CoherentSet verified;
    for (auto piece : raw.pieces()) {
        auto coherent_at = [&](const Rational& v) {
            std::vector<Crq> all = objects;
            all.push_back(target);
            Assessment ext = a;
            ext[target.prevision()] = v;
            return check_coherence(all, ext, atoms);
        };
        if (piece.lo == piece.hi) {
            if (coherent_at(piece.lo)) verified.add(piece);
            continue;
        }
        if (piece.lo_closed && !coherent_at(piece.lo)) piece.lo_closed = false;
        if (piece.hi_closed && !coherent_at(piece.hi)) piece.hi_closed = false;
        verified.add(piece);
    }
    return verified;
}

RationalInterval extension_interval(const std::vector<Crq>& objects, const Assessment& a,
                                    const Crq& target, const AtomTable& atoms) {
    return coherent_value_set(objects, a, target, atoms).as_interval();
}

CoherentSet coherent_mu_set(const Crq& q, const Assessment& partial, const AtomTable& atoms) {
    if (q.conditioning().worlds(atoms.size()).empty()) {
        throw TrivialIterated("quantity conditions on an impossible event");
    }
    Binding others = partial;
    others.erase(q.prevision());
    int mu = q.prevision();
    AffineValue own = AffineValue::symbol(mu);

    struct AffRow {
        Rational a, b;  // value = a + b*mu on this row
    };
    std::vector<AffRow> rows;
    for (const auto& row : q.rows()) {
        AffineValue v = row.value.substituted(others);
        if (v == own) continue;  // stake returned; settles nothing
        auto [alpha, beta] = v.split_on(mu);
        if (!alpha.is_constant() || !beta.is_constant()) {
            throw UnboundSymbol("fixed-point query requires every other symbol bound");
        }
        rows.push_back(AffRow{alpha.constant_part(), beta.constant_part()});
    }
    if (rows.empty()) return CoherentSet::full();

    // mu is coherent iff min_h v_h(mu) <= mu <= max_h v_h(mu). Each
    // comparison flips sign only at that row's fixed point, so testing one
    // candidate per cell of the fixed-point subdivision is exact.
    std::vector<Rational> cand = {Rational(0), Rational(1)};
    for (const auto& r : rows) {
        if (r.b == 1) continue;
        Rational rho = r.a / (1 - r.b);
        if (rho > 0 && rho < 1) cand.push_back(rho);
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    auto member = [&rows](const Rational& m) {
        bool some_at_or_above = false, some_at_or_below = false;
        for (const auto& r : rows) {
            Rational v = r.a + r.b * m;
            if (v >= m) some_at_or_above = true;
            if (v <= m) some_at_or_below = true;
        }
        return some_at_or_above && some_at_or_below;
    };

    CoherentSet out;
    for (size_t i = 0; i < cand.size(); ++i) {
        if (member(cand[i])) {
            out.add(CoherentSet::Piece{cand[i], cand[i], true, true});
        }
        if (i + 1 < cand.size() && member((cand[i] + cand[i + 1]) / 2)) {
            out.add(CoherentSet::Piece{cand[i], cand[i + 1], false, false});
        }
    }
    return out;
}

namespace {

struct ClaimContext {
    const std::vector<Crq>* premises;
    const Crq* side;
    const Crq* conclusion;
    const AtomTable* atoms;
    Assessment ones;
    std::vector<BoundObject> bound;
    TargetObject s, z;
};

/// Exact verification of one candidate refutation.
bool candidate_refutes(const ClaimContext& ctx, const Rational& t, const Rational& zv) {
    std::vector<Crq> all = *ctx.premises;
    all.push_back(*ctx.side);
    all.push_back(*ctx.conclusion);
    Assessment ext = ctx.ones;
    ext[ctx.side->prevision()] = t;
    ext[ctx.conclusion->prevision()] = zv;
    return check_coherence(all, ext, *ctx.atoms);
}

/// Mass-weighted average value of a target under a level solution.
Rational settled_value(const TargetObject& t, const LevelSystem& level,
                       const std::vector<Rational>& lambda) {
    Rational mass = 0, acc = 0;
    for (size_t k = 0; k < level.worlds.size(); ++k) {
        if (!t.active.test(level.worlds[k])) continue;
        mass += lambda[k];
        acc += lambda[k] * t.value[level.worlds[k]];
    }
    if (mass == 0) throw InternalError("settled value requested with zero mass");
    return acc / mass;
}

SideClaimResult claim_rec(const ClaimContext& ctx, std::vector<int> live) {
    live.erase(std::remove_if(live.begin(), live.end(),
                              [&](int i) { return ctx.bound[i].active.empty(); }),
               live.end());
    WorldSet extra = ctx.s.active | ctx.z.active;
    LevelSystem level = make_level(ctx.bound, live, &extra, *ctx.atoms);
    size_t n = level.worlds.size();

    // Shortfall coefficients: sum lambda * (1 - value) over the settlement
    // event measures how far below 1 the settled prevision sits.
    auto shortfall = [&](const TargetObject& t) {
        std::vector<Rational> c(n, Rational(0));
        for (size_t k = 0; k < n; ++k) {
            if (t.active.test(level.worlds[k])) c[k] = Rational(1) - t.value[level.worlds[k]];
        }
        return c;
    };
    std::vector<Rational> short_s = shortfall(ctx.s);
    std::vector<Rational> short_z = shortfall(ctx.z);
    std::vector<Rational> mass_s = level.mass_coeffs(ctx.s.active);
    std::vector<Rational> mass_z = level.mass_coeffs(ctx.z.active);

    auto widen = [n](std::vector<Rational> v, const Rational& delta_coeff) {
        v.push_back(delta_coeff);
        return v;
    };

    // Both settle below 1 at this level.
    {
        LinearProgram lp(static_cast<int>(n) + 1);  // lambda plus delta
        lp.add_eq(widen(std::vector<Rational>(n, Rational(1)), Rational(0)), Rational(1));
        for (int i : live) {
            std::vector<Rational> row(n);
            for (size_t k = 0; k < n; ++k) {
                row[k] = ctx.bound[i].value(level.worlds[k], ctx.ones) - ctx.bound[i].p;
            }
            lp.add_eq(widen(std::move(row), Rational(0)), Rational(0));
        }
        lp.add_ge(widen(short_s, Rational(-1)), Rational(0));
        lp.add_ge(widen(short_z, Rational(-1)), Rational(0));
        std::vector<Rational> obj(n + 1, Rational(0));
        obj[n] = 1;
        LpResult r = lp.maximize(obj);
        if (r.status == LpStatus::Optimal && r.objective > 0) {
            std::vector<Rational> lambda(r.x.begin(), r.x.begin() + n);
            Rational t = settled_value(ctx.s, level, lambda);
            Rational zv = settled_value(ctx.z, level, lambda);
            if (candidate_refutes(ctx, t, zv)) {
                return SideClaimResult{false, true, std::make_pair(t, zv)};
            }
            return SideClaimResult{false, false, std::nullopt};
        }
    }

    // One defers while the other settles below 1.
    auto one_defers = [&](const TargetObject& deferred, const TargetObject& settled,
                          const std::vector<Rational>& defer_mass,
                          const std::vector<Rational>& settle_short,
                          bool deferred_is_side) -> std::optional<SideClaimResult> {
        LinearProgram lp = level.base_lp(ctx.bound, live, ctx.ones, /*with_total=*/true);
        lp.add_eq(defer_mass, Rational(0));
        LpResult r = lp.maximize(settle_short);
        if (r.status != LpStatus::Optimal || r.objective == 0) return std::nullopt;
        Rational settled_v = settled_value(settled, level, r.x);
        std::vector<int> layer = zero_layer(level, lp, ctx.bound, live);
        std::vector<Crq> layer_objects;
        for (int i : layer) layer_objects.push_back(*ctx.bound[i].q);
        CoherentSet deep =
            coherent_value_set(layer_objects, ctx.ones, *deferred.q, *ctx.atoms);
        std::optional<Rational> deferred_v = pick_below_one(deep);
        if (!deferred_v) return std::nullopt;
        Rational t = deferred_is_side ? *deferred_v : settled_v;
        Rational zv = deferred_is_side ? settled_v : *deferred_v;
        if (candidate_refutes(ctx, t, zv)) {
            return SideClaimResult{false, true, std::make_pair(t, zv)};
        }
        return SideClaimResult{false, false, std::nullopt};
    };
    if (auto r = one_defers(ctx.s, ctx.z, mass_s, short_z, true)) return *r;
    if (auto r = one_defers(ctx.z, ctx.s, mass_z, short_s, false)) return *r;

    // Both defer: the claim must hold one level deeper as well.
    {
        LinearProgram lp = level.base_lp(ctx.bound, live, ctx.ones, /*with_total=*/true);
        lp.add_eq(mass_s, Rational(0));
        lp.add_eq(mass_z, Rational(0));
        if (lp.feasible()) {
            std::vector<int> layer = zero_layer(level, lp, ctx.bound, live);
            if (layer.size() >= live.size() && !live.empty()) {
                throw InternalError("deferred claim layer failed to shrink");
            }
            return claim_rec(ctx, layer);
        }
    }
    return SideClaimResult{true, true, std::nullopt};
}

}  // namespace

SideClaimResult side_claim_holds(const std::vector<Crq>& premises, const Crq& side,
                                 const Crq& conclusion, const AtomTable& atoms) {
    ClaimContext ctx;
    ctx.premises = &premises;
    ctx.side = &side;
    ctx.conclusion = &conclusion;
    ctx.atoms = &atoms;
    for (const auto& p : premises) ctx.ones[p.prevision()] = 1;
    ctx.bound = prepare_bound(premises, ctx.ones, atoms);
    ctx.s = prepare_target(side, ctx.ones, atoms);
    ctx.z = prepare_target(conclusion, ctx.ones, atoms);

    std::vector<int> live(premises.size());
    for (size_t i = 0; i < premises.size(); ++i) live[i] = static_cast<int>(i);
    return claim_rec(ctx, live);
}

}  // namespace concord
