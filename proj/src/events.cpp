#include "concord/events.hpp"

#include <algorithm>
#include <map>

namespace concord {

int AtomTable::add(const std::string& name) {
    if (auto existing = index(name)) return *existing;
    if (size() >= 20) throw Error("atom limit exceeded (20)");
    names_.push_back(name);
    return size() - 1;
}

std::optional<int> AtomTable::index(const std::string& name) const {
    for (size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return static_cast<int>(i);
    }
    return std::nullopt;
}

WorldSet::WorldSet(int n_atoms, bool filled) : n_atoms_(n_atoms) {
    uint32_t n = world_count();
    bits_.assign((n + 63) / 64, 0);
    if (filled) {
        for (uint32_t w = 0; w < n; ++w) set(w);
    }
}

void WorldSet::set(World w) { bits_[w / 64] |= (uint64_t{1} << (w % 64)); }
void WorldSet::reset(World w) { bits_[w / 64] &= ~(uint64_t{1} << (w % 64)); }
bool WorldSet::test(World w) const { return (bits_[w / 64] >> (w % 64)) & 1; }

bool WorldSet::empty() const {
    for (uint64_t b : bits_) {
        if (b != 0) return false;
    }
    return true;
}

uint32_t WorldSet::count() const {
    uint32_t n = 0;
    for (uint64_t b : bits_) n += static_cast<uint32_t>(__builtin_popcountll(b));
    return n;
}

WorldSet WorldSet::operator&(const WorldSet& o) const {
    WorldSet r(n_atoms_);
    for (size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] & o.bits_[i];
    return r;
}

WorldSet WorldSet::operator|(const WorldSet& o) const {
    WorldSet r(n_atoms_);
    for (size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] | o.bits_[i];
    return r;
}

WorldSet WorldSet::operator~() const {
    WorldSet r(n_atoms_);
    uint32_t n = world_count();
    for (uint32_t w = 0; w < n; ++w) {
        if (!test(w)) r.set(w);
    }
    return r;
}

bool WorldSet::subset_of(const WorldSet& o) const {
    for (size_t i = 0; i < bits_.size(); ++i) {
        if (bits_[i] & ~o.bits_[i]) return false;
    }
    return true;
}

EventExpr EventExpr::truth() {
    return EventExpr(std::make_shared<Node>(Node{Kind::True, -1, nullptr, nullptr}));
}

EventExpr EventExpr::falsity() {
    return EventExpr(std::make_shared<Node>(Node{Kind::False, -1, nullptr, nullptr}));
}

EventExpr EventExpr::atom(int index) {
    return EventExpr(std::make_shared<Node>(Node{Kind::Atom, index, nullptr, nullptr}));
}

EventExpr EventExpr::negation(const EventExpr& e) {
    return EventExpr(std::make_shared<Node>(Node{Kind::Not, -1, e.node_, nullptr}));
}

EventExpr EventExpr::conjunction(const EventExpr& a, const EventExpr& b) {
    return EventExpr(std::make_shared<Node>(Node{Kind::And, -1, a.node_, b.node_}));
}

EventExpr EventExpr::disjunction(const EventExpr& a, const EventExpr& b) {
    return EventExpr(std::make_shared<Node>(Node{Kind::Or, -1, a.node_, b.node_}));
}

EventExpr EventExpr::child(int i) const {
    return EventExpr(i == 0 ? node_->lhs : node_->rhs);
}

bool EventExpr::evaluate(World w) const {
    switch (node_->kind) {
        case Kind::True: return true;
        case Kind::False: return false;
        case Kind::Atom: return (w >> node_->atom) & 1;
        case Kind::Not: return !EventExpr(node_->lhs).evaluate(w);
        case Kind::And:
            return EventExpr(node_->lhs).evaluate(w) && EventExpr(node_->rhs).evaluate(w);
        case Kind::Or:
            return EventExpr(node_->lhs).evaluate(w) || EventExpr(node_->rhs).evaluate(w);
    }
    throw InternalError("corrupt event expression");
}

bool EventExpr::evaluate(const PartialWorld& w) const {
    switch (node_->kind) {
        case Kind::True: return true;
        case Kind::False: return false;
        case Kind::Atom:
            if (!((w.defined >> node_->atom) & 1)) {
                throw MissingAtom("world leaves atom #" + std::to_string(node_->atom) +
                                  " unassigned");
            }
            return (w.values >> node_->atom) & 1;
        case Kind::Not: return !EventExpr(node_->lhs).evaluate(w);
        case Kind::And:
            return EventExpr(node_->lhs).evaluate(w) && EventExpr(node_->rhs).evaluate(w);
        case Kind::Or:
            return EventExpr(node_->lhs).evaluate(w) || EventExpr(node_->rhs).evaluate(w);
    }
    throw InternalError("corrupt event expression");
}

WorldSet EventExpr::worlds(int n_atoms) const {
    WorldSet ws(n_atoms);
    uint32_t n = ws.world_count();
    for (World w = 0; w < n; ++w) {
        if (evaluate(w)) ws.set(w);
    }
    return ws;
}

namespace {

int precedence(EventExpr::Kind k) {
    switch (k) {
        case EventExpr::Kind::Or: return 1;
        case EventExpr::Kind::And: return 2;
        default: return 3;
    }
}

void render(const EventExpr& e, const AtomTable& atoms, int parent_prec, std::string& out) {
    int prec = precedence(e.kind());
    bool parens = prec < parent_prec;
    if (parens) out += "(";
    switch (e.kind()) {
        case EventExpr::Kind::True: out += "TRUE"; break;
        case EventExpr::Kind::False: out += "FALSE"; break;
        case EventExpr::Kind::Atom: out += atoms.name(e.atom_index()); break;
        case EventExpr::Kind::Not:
            out += "~";
            render(e.child(0), atoms, 3, out);
            break;
        case EventExpr::Kind::And:
            render(e.child(0), atoms, 2, out);
            out += " & ";
            render(e.child(1), atoms, 2, out);
            break;
        case EventExpr::Kind::Or:
            render(e.child(0), atoms, 1, out);
            out += " | ";
            render(e.child(1), atoms, 1, out);
            break;
    }
    if (parens) out += ")";
}

}  // namespace

std::string EventExpr::to_string(const AtomTable& atoms) const {
    std::string out;
    render(*this, atoms, 0, out);
    return out;
}

bool satisfiable(const EventExpr& e, const AtomTable& atoms) {
    return !e.worlds(atoms.size()).empty();
}

bool implies(const EventExpr& a, const EventExpr& b, const AtomTable& atoms) {
    return a.worlds(atoms.size()).subset_of(b.worlds(atoms.size()));
}

bool equivalent(const EventExpr& a, const EventExpr& b, const AtomTable& atoms) {
    return a.worlds(atoms.size()) == b.worlds(atoms.size());
}

EventExpr event_from_worlds(const WorldSet& ws, const AtomTable& atoms) {
    std::optional<EventExpr> acc;
    uint32_t n = ws.world_count();
    for (World w = 0; w < n; ++w) {
        if (!ws.test(w)) continue;
        std::optional<EventExpr> minterm;
        for (int a = 0; a < atoms.size(); ++a) {
            EventExpr lit = EventExpr::atom(a);
            if (!((w >> a) & 1)) lit = !lit;
            minterm = minterm ? (*minterm & lit) : lit;
        }
        if (!minterm) minterm = EventExpr::truth();  // zero-atom universe
        acc = acc ? (*acc | *minterm) : *minterm;
    }
    return acc ? *acc : EventExpr::falsity();
}

namespace {

// Partial assignment: the atoms in `care` are pinned to the bits of `value`.
struct Cube {
    uint32_t care = 0;
    uint32_t value = 0;
    bool operator==(const Cube&) const = default;
    bool operator<(const Cube& o) const {
        return care != o.care ? care < o.care : value < o.value;
    }
    uint32_t covered(uint32_t world_count) const {
        uint32_t n = 0;
        for (World w = 0; w < world_count; ++w) n += (w & care) == value;
        return n;
    }
};

void sort_unique(std::vector<Cube>& cs) {
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
}

}  // namespace

std::string compact_dnf(const WorldSet& ws, const AtomTable& atoms) {
    if (ws.empty()) return "FALSE";
    uint32_t n = ws.world_count();
    if (ws.count() == n) return "TRUE";
    uint32_t all = n - 1;

    // Grow minterms into prime cubes: merge pairs that differ in exactly one
    // pinned atom. Every cube always covers only worlds of the set.
    std::vector<Cube> frontier;
    for (World w = 0; w < n; ++w) {
        if (ws.test(w)) frontier.push_back({all, w});
    }
    std::vector<Cube> primes;
    while (!frontier.empty()) {
        std::vector<Cube> next;
        std::vector<bool> grew(frontier.size(), false);
        for (size_t i = 0; i < frontier.size(); ++i) {
            for (size_t j = i + 1; j < frontier.size(); ++j) {
                if (frontier[i].care != frontier[j].care) continue;
                uint32_t diff = frontier[i].value ^ frontier[j].value;
                if (diff == 0 || (diff & (diff - 1)) != 0) continue;
                next.push_back({frontier[i].care & ~diff, frontier[i].value & ~diff});
                grew[i] = grew[j] = true;
            }
        }
        for (size_t i = 0; i < frontier.size(); ++i) {
            if (!grew[i]) primes.push_back(frontier[i]);
        }
        sort_unique(next);
        frontier = std::move(next);
    }
    sort_unique(primes);

    // Greedy cover, preferring cubes that take more uncovered worlds, then
    // broader cubes; the prime order breaks remaining ties deterministically.
    WorldSet uncovered = ws;
    std::vector<Cube> chosen;
    while (!uncovered.empty()) {
        size_t best = primes.size();
        uint32_t best_gain = 0, best_size = 0;
        for (size_t i = 0; i < primes.size(); ++i) {
            uint32_t gain = 0;
            for (World w = 0; w < n; ++w) {
                gain += uncovered.test(w) && (w & primes[i].care) == primes[i].value;
            }
            uint32_t size = primes[i].covered(n);
            if (gain > best_gain || (gain == best_gain && gain > 0 && size > best_size)) {
                best = i, best_gain = gain, best_size = size;
            }
        }
        if (best == primes.size()) throw InternalError("prime cubes fail to cover their set");
        chosen.push_back(primes[best]);
        for (World w = 0; w < n; ++w) {
            if ((w & primes[best].care) == primes[best].value) uncovered.reset(w);
        }
    }

    // Present narrow-to-broad reading left to right by first covered world.
    std::sort(chosen.begin(), chosen.end(),
              [](const Cube& a, const Cube& b) { return a.value != b.value ? a.value < b.value
                                                                           : a.care < b.care; });
    std::string out;
    for (const Cube& c : chosen) {
        if (!out.empty()) out += " | ";
        std::string term;
        for (int a = 0; a < atoms.size(); ++a) {
            if (!(c.care & (uint32_t{1} << a))) continue;
            if (!term.empty()) term += " & ";
            if (!((c.value >> a) & 1)) term += "~";
            term += atoms.name(a);
        }
        out += term;
    }
    return out;
}

ConditionalEvent::ConditionalEvent(EventExpr consequent, EventExpr antecedent,
                                   const AtomTable& atoms)
    : consequent_(std::move(consequent)), antecedent_(std::move(antecedent)) {
    if (!satisfiable(antecedent_, atoms)) {
        throw UnsatisfiableAntecedent("conditional event on an unsatisfiable antecedent: " +
                                      antecedent_.to_string(atoms));
    }
}

TruthValue ConditionalEvent::evaluate(World w) const {
    if (!antecedent_.evaluate(w)) return TruthValue::Void;
    return consequent_.evaluate(w) ? TruthValue::True : TruthValue::False;
}

TruthValue ConditionalEvent::evaluate(const PartialWorld& w) const {
    if (!antecedent_.evaluate(w)) return TruthValue::Void;
    return consequent_.evaluate(w) ? TruthValue::True : TruthValue::False;
}

std::string ConditionalEvent::to_string(const AtomTable& atoms) const {
    // Parenthesize disjunctive sides so the conditioning bar stays unambiguous.
    auto side = [&](const EventExpr& e) {
        std::string s = e.to_string(atoms);
        return e.kind() == EventExpr::Kind::Or ? "(" + s + ")" : s;
    };
    return side(consequent_) + " | " + side(antecedent_);
}

bool gn_implies(const ConditionalEvent& c1, const ConditionalEvent& c2, const AtomTable& atoms) {
    int n = atoms.size();
    WorldSet a1 = c1.consequent().worlds(n) & c1.antecedent().worlds(n);
    WorldSet f1 = (~c1.consequent().worlds(n)) & c1.antecedent().worlds(n);
    WorldSet a2 = c2.consequent().worlds(n) & c2.antecedent().worlds(n);
    WorldSet f2 = (~c2.consequent().worlds(n)) & c2.antecedent().worlds(n);
    return a1.subset_of(a2) && f2.subset_of(f1);
}

std::vector<Constituent> constituents(const std::vector<ConditionalEvent>& family,
                                      const AtomTable& atoms,
                                      const std::function<uint64_t(World)>& value_class) {
    // Key: (three-valued profile, value signature) -> class of worlds.
    std::map<std::pair<std::vector<TruthValue>, uint64_t>, Constituent> groups;
    uint32_t n = atoms.world_count();
    for (World w = 0; w < n; ++w) {
        std::vector<TruthValue> profile;
        profile.reserve(family.size());
        for (const auto& ce : family) profile.push_back(ce.evaluate(w));
        uint64_t sig = value_class ? value_class(w) : 0;
        auto key = std::make_pair(profile, sig);
        auto it = groups.find(key);
        if (it == groups.end()) {
            Constituent c;
            c.representative = w;
            c.worlds = WorldSet(atoms.size());
            c.worlds.set(w);
            c.truth = profile;
            c.all_void = std::all_of(profile.begin(), profile.end(),
                                     [](TruthValue t) { return t == TruthValue::Void; });
            groups.emplace(std::move(key), std::move(c));
        } else {
            it->second.worlds.set(w);
        }
    }
    std::vector<Constituent> out;
    out.reserve(groups.size());
    for (auto& [key, c] : groups) out.push_back(std::move(c));
    std::sort(out.begin(), out.end(),
              [](const Constituent& a, const Constituent& b) {
                  return a.representative < b.representative;
              });
    return out;
}

}  // namespace concord
