#pragma once

#include "concord/compound.hpp"
#include "concord/simplex.hpp"

#include <optional>
#include <string>
#include <vector>

namespace concord {

/// Bindings of prevision symbols to exact rationals.
using Assessment = Binding;

struct RationalInterval {
    Rational lo, hi;
    bool lo_closed = true;
    bool hi_closed = true;

    bool operator==(const RationalInterval&) const = default;
    std::string to_string() const;
};

/// Subset of [0,1]: finite union of points and intervals, kept sorted,
/// disjoint, and merged.
class CoherentSet {
public:
    struct Piece {
        Rational lo, hi;
        bool lo_closed = true;
        bool hi_closed = true;
        bool operator==(const Piece&) const = default;
    };

    static CoherentSet none() { return CoherentSet(); }
    static CoherentSet point(const Rational& r);
    static CoherentSet closed(const Rational& lo, const Rational& hi);
    static CoherentSet full() { return closed(0, 1); }

    void add(Piece p);
    CoherentSet union_with(const CoherentSet& o) const;

    bool is_empty() const { return pieces_.empty(); }
    bool is_point(const Rational& r) const;
    bool is_single_interval() const { return pieces_.size() == 1; }
    RationalInterval as_interval() const;
    const std::vector<Piece>& pieces() const { return pieces_; }
    bool contains(const Rational& r) const;

    std::string to_string() const;
    bool operator==(const CoherentSet&) const = default;

private:
    std::vector<Piece> pieces_;
    void normalize();
};

/// One recursion level of a coherence check: its constituents, a feasible
/// weight vector, and which objects settled here.
struct CoherenceLevel {
    std::vector<World> worlds;
    std::vector<Rational> lambda;
    std::vector<int> settled;  // indices into the object list
};

struct CoherenceReport {
    bool coherent = false;
    int recursion_depth = 0;
    std::vector<CoherenceLevel> levels;
};

/// The event on which an assessed quantity genuinely settles: the union of
/// table rows whose value, with every other symbol bound, is not identically
/// the quantity's own prevision symbol. Rows that merely return the paid
/// amount are excluded (a returned stake settles nothing).
WorldSet active_event(const Crq& q, const Assessment& a, const AtomTable& atoms);

/// Betting-scheme coherence of a fully bound assessment, decided by exact LP
/// feasibility with recursion on the zero-mass layer.
bool check_coherence(const std::vector<Crq>& objects, const Assessment& a,
                     const AtomTable& atoms, CoherenceReport* report = nullptr);

/// Exact set of values v for which binding target's prevision to v extends
/// the (coherent) base assessment coherently. The target's settled-row
/// values must be numeric once the base assessment is substituted.
CoherentSet coherent_value_set(const std::vector<Crq>& objects, const Assessment& a,
                               const Crq& target, const AtomTable& atoms);

/// coherent_value_set when the answer is a single interval (it always is for
/// the quantities this library builds); throws InternalError otherwise.
RationalInterval extension_interval(const std::vector<Crq>& objects, const Assessment& a,
                                    const Crq& target, const AtomTable& atoms);

/// Exact coherent set of a quantity's own prevision when every other symbol
/// in its table is bound: mu is coherent iff it lies in the convex hull of
/// the settled-row values (each affine in mu), solved by breakpoint
/// analysis. An empty settled set leaves mu wholly unconstrained.
CoherentSet coherent_mu_set(const Crq& q, const Assessment& partial, const AtomTable& atoms);

/// Decision for a negated-default claim: with every premise assessed 1,
/// P(side) < 1 forces P(conclusion) = 1.
struct SideClaimResult {
    bool holds = false;
    /// False when the search found a candidate refutation it could not
    /// certify either way; never the case for the built-in rules.
    bool decided = true;
    /// On refutation: a coherent (side, conclusion) pair with both below 1.
    std::optional<std::pair<Rational, Rational>> witness;
};

SideClaimResult side_claim_holds(const std::vector<Crq>& premises, const Crq& side,
                                 const Crq& conclusion, const AtomTable& atoms);

}  // namespace concord
