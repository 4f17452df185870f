#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "crnv/crn.hpp"
#include "crnv/multiset.hpp"

namespace crnv {

/// A finite sequence of reaction occurrences, stored as indices into the
/// owning CRN's reaction list.
struct Pathway {
  std::vector<std::uint32_t> steps;

  bool empty() const { return steps.empty(); }
  std::size_t size() const { return steps.size(); }

  bool operator==(const Pathway&) const = default;
  auto operator<=>(const Pathway&) const = default;
};

/// Thrown when a reaction is applied in a state missing some reactants.
class OccurrenceError : public CrnError {
public:
  OccurrenceError(std::string what, Multiset missing)
      : CrnError(std::move(what)), missing(std::move(missing)) {}
  Multiset missing;
};

/// True iff r's reactants are contained in `state`.
bool can_occur(const Multiset& state, const Reaction& r);

/// state - reactants + products; errors if the reaction cannot occur.
Multiset apply(const Multiset& state, const Reaction& r);

/// True iff the whole pathway can occur starting from `state`.
bool pathway_can_occur(const Crn& crn, const Pathway& p, const Multiset& state);

/// The pointwise-least state from which the pathway can occur.
Multiset minimal_initial_state(const Crn& crn, const Pathway& p);

/// States S_0..S_k of the pathway run from its minimal initial state.
std::vector<Multiset> states_along(const Crn& crn, const Pathway& p);

/// Final state reached from the minimal initial state.
Multiset final_state(const Crn& crn, const Pathway& p);

/// max_i |S_i| over the states from the minimal initial state.
std::uint32_t width(const Crn& crn, const Pathway& p);

struct PathwayClass {
  bool semiformal = false;  // minimal initial state is formal
  bool formal = false;      // semiformal and final state is formal
  bool trivial = false;     // initial state equals final state
};

PathwayClass classify(const Crn& crn, const Pathway& p);
bool is_semiformal(const Crn& crn, const Pathway& p);

/// The net reaction (minimal initial state, final state) of a pathway.
Reaction net_reaction(const Crn& crn, const Pathway& p);

/// The concrete reactions of a pathway, in order.
std::vector<Reaction> pathway_reactions(const Crn& crn, const Pathway& p);

}  // namespace crnv
