#pragma once

#include <string>

#include "crnv/crn.hpp"
#include "crnv/pathway.hpp"

namespace crnv {

/// "{2A, B}"; the empty state prints as "{}".
std::string format_multiset(const SpeciesUniverse& uni, const Multiset& m);

/// Reaction-side syntax: "2A + B"; the empty side prints as "0".
std::string format_side(const SpeciesUniverse& uni, const Multiset& m);

/// "2A + B -> C"; reparses to the same reaction.
std::string format_reaction(const SpeciesUniverse& uni, const Reaction& r);

/// "A -> i ; i -> B".
std::string format_pathway(const Crn& crn, const Pathway& p);
std::string format_reactions(const SpeciesUniverse& uni, const std::vector<Reaction>& rs);

}  // namespace crnv
