#pragma once

#include "concord/errors.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace concord {

/// Ordered registry of atom names. Atom index = registration order.
class AtomTable {
public:
    int add(const std::string& name);
    std::optional<int> index(const std::string& name) const;
    const std::string& name(int i) const { return names_.at(static_cast<size_t>(i)); }
    int size() const { return static_cast<int>(names_.size()); }
    /// Number of worlds over this universe (2^size).
    uint32_t world_count() const { return uint32_t{1} << size(); }

private:
    std::vector<std::string> names_;
};

/// A world is a total truth assignment to the atoms of a universe, encoded as
/// a bitmask: bit i = truth of atom i.
using World = uint32_t;

/// Partial truth assignment, used by the public evaluate entry point.
struct PartialWorld {
    World values = 0;
    uint32_t defined = 0;  // bit i set = atom i has a value

    void assign(int atom, bool value) {
        defined |= (uint32_t{1} << atom);
        if (value)
            values |= (uint32_t{1} << atom);
        else
            values &= ~(uint32_t{1} << atom);
    }
};

/// Set of worlds over a fixed universe; the semantic footprint of an event.
class WorldSet {
public:
    WorldSet() = default;
    explicit WorldSet(int n_atoms, bool filled = false);

    int n_atoms() const { return n_atoms_; }
    uint32_t world_count() const { return uint32_t{1} << n_atoms_; }

    void set(World w);
    void reset(World w);
    bool test(World w) const;
    bool empty() const;
    uint32_t count() const;

    WorldSet operator&(const WorldSet& o) const;
    WorldSet operator|(const WorldSet& o) const;
    WorldSet operator~() const;
    bool operator==(const WorldSet& o) const = default;
    bool subset_of(const WorldSet& o) const;

private:
    int n_atoms_ = 0;
    std::vector<uint64_t> bits_;
};

/// Immutable boolean expression over atoms.
class EventExpr {
public:
    enum class Kind { True, False, Atom, Not, And, Or };

    static EventExpr truth();
    static EventExpr falsity();
    static EventExpr atom(int index);
    static EventExpr negation(const EventExpr& e);
    static EventExpr conjunction(const EventExpr& a, const EventExpr& b);
    static EventExpr disjunction(const EventExpr& a, const EventExpr& b);

    Kind kind() const { return node_->kind; }
    int atom_index() const { return node_->atom; }
    EventExpr child(int i) const;

    /// Truth under a total assignment.
    bool evaluate(World w) const;
    /// Truth under a partial assignment; throws MissingAtom if an atom the
    /// expression actually depends on is unassigned.
    bool evaluate(const PartialWorld& w) const;

    /// Worlds where the expression is true, over a universe of n atoms.
    WorldSet worlds(int n_atoms) const;

    /// Rendering with ~, &, | and minimal parentheses.
    std::string to_string(const AtomTable& atoms) const;

private:
    struct Node {
        Kind kind;
        int atom = -1;
        std::shared_ptr<const Node> lhs, rhs;
    };
    explicit EventExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

inline EventExpr operator!(const EventExpr& e) { return EventExpr::negation(e); }
inline EventExpr operator&(const EventExpr& a, const EventExpr& b) {
    return EventExpr::conjunction(a, b);
}
inline EventExpr operator|(const EventExpr& a, const EventExpr& b) {
    return EventExpr::disjunction(a, b);
}

bool satisfiable(const EventExpr& e, const AtomTable& atoms);
/// Logical consequence over the whole universe.
bool implies(const EventExpr& a, const EventExpr& b, const AtomTable& atoms);
bool equivalent(const EventExpr& a, const EventExpr& b, const AtomTable& atoms);

/// Disjunction of the minterms of a world set (canonical DNF); falsity for
/// the empty set. Inverse of EventExpr::worlds up to logical equivalence.
EventExpr event_from_worlds(const WorldSet& ws, const AtomTable& atoms);

/// Human-oriented rendering of a world set as a short disjunction of literal
/// conjunctions: minterms are merged into prime cubes, then a greedy cover is
/// printed ("~H", "A & ~B | ~A & B"). "TRUE"/"FALSE" for the extremes.
/// Deterministic; not guaranteed minimal.
std::string compact_dnf(const WorldSet& ws, const AtomTable& atoms);

/// Three-valued status of a conditional event at a world.
enum class TruthValue { False = 0, True = 1, Void = 2 };

/// Conditional event "consequent | antecedent". The antecedent must be
/// satisfiable; conditioning on a contradiction is rejected at construction.
class ConditionalEvent {
public:
    ConditionalEvent(EventExpr consequent, EventExpr antecedent, const AtomTable& atoms);

    const EventExpr& consequent() const { return consequent_; }
    const EventExpr& antecedent() const { return antecedent_; }

    TruthValue evaluate(World w) const;
    TruthValue evaluate(const PartialWorld& w) const;

    std::string to_string(const AtomTable& atoms) const;

private:
    EventExpr consequent_;
    EventExpr antecedent_;
};

/// Goodman-Nguyen inclusion: c1's true part implies c2's true part and c2's
/// false part implies c1's false part.
bool gn_implies(const ConditionalEvent& c1, const ConditionalEvent& c2, const AtomTable& atoms);

/// One constituent: a maximal class of worlds indistinguishable by the family
/// (same three-valued profile) and by the optional value signature.
struct Constituent {
    World representative = 0;  // least world in the class
    WorldSet worlds;
    std::vector<TruthValue> truth;  // one entry per family member
    bool all_void = false;          // every family member void here
};

/// Constituents of a family of conditional events over the full universe,
/// optionally refined by an extra per-world classifier (used to key compound
/// quantities by their table values). Sorted by representative world.
std::vector<Constituent> constituents(
    const std::vector<ConditionalEvent>& family, const AtomTable& atoms,
    const std::function<uint64_t(World)>& value_class = nullptr);

}  // namespace concord
