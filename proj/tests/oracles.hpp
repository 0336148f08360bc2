#pragma once

#include "concord/events.hpp"
#include "concord/rational.hpp"

#include <vector>

// Independent reference implementations used only by tests. They share no
// algorithmic code with the library: inclusion is checked pointwise per
// world, and coherence by exhaustive vertex enumeration of the constituent
// hull with exact Gaussian solves.
namespace oracle {

bool gn_implies(const concord::ConditionalEvent& c1, const concord::ConditionalEvent& c2,
                const concord::AtomTable& atoms);

/// Coherence of a probability assessment on plain conditional events, by the
/// layered convex-hull definition.
bool coherent(const std::vector<concord::ConditionalEvent>& events,
              const std::vector<concord::Rational>& p, const concord::AtomTable& atoms);

}  // namespace oracle
