#include "crnv/pathway.hpp"

#include <algorithm>

namespace crnv {

namespace {

const Reaction& step_reaction(const Crn& crn, std::uint32_t idx) {
  if (idx >= crn.size()) throw CrnError("pathway step is not a reaction of the CRN");
  return crn.reactions()[idx];
}

}  // namespace

bool can_occur(const Multiset& state, const Reaction& r) {
  return r.reactants.subset_of(state);
}

Multiset apply(const Multiset& state, const Reaction& r) {
  if (!can_occur(state, r)) {
    Multiset missing = r.reactants.minus_clamped(state);
    throw OccurrenceError("reaction cannot occur: reactants are missing from the state",
                          std::move(missing));
  }
  return state.minus_exact(r.reactants) + r.products;
}

bool pathway_can_occur(const Crn& crn, const Pathway& p, const Multiset& state) {
  Multiset cur = state;
  for (auto idx : p.steps) {
    const Reaction& r = step_reaction(crn, idx);
    if (!can_occur(cur, r)) return false;
    cur = apply(cur, r);
  }
  return true;
}

Multiset minimal_initial_state(const Crn& crn, const Pathway& p) {
  Multiset initial;
  Multiset cur;
  for (auto idx : p.steps) {
    const Reaction& r = step_reaction(crn, idx);
    Multiset deficit = r.reactants.minus_clamped(cur);
    if (!deficit.empty()) {
      initial += deficit;
      cur += deficit;
    }
    cur = cur.minus_exact(r.reactants) + r.products;
  }
  return initial;
}

std::vector<Multiset> states_along(const Crn& crn, const Pathway& p) {
  std::vector<Multiset> states;
  states.reserve(p.size() + 1);
  states.push_back(minimal_initial_state(crn, p));
  for (auto idx : p.steps) states.push_back(apply(states.back(), step_reaction(crn, idx)));
  return states;
}

Multiset final_state(const Crn& crn, const Pathway& p) {
  Multiset cur = minimal_initial_state(crn, p);
  for (auto idx : p.steps) cur = apply(cur, step_reaction(crn, idx));
  return cur;
}

std::uint32_t width(const Crn& crn, const Pathway& p) {
  std::uint64_t w = 0;
  for (const auto& s : states_along(crn, p)) w = std::max(w, s.total());
  return static_cast<std::uint32_t>(w);
}

PathwayClass classify(const Crn& crn, const Pathway& p) {
  PathwayClass c;
  Multiset initial = minimal_initial_state(crn, p);
  Multiset fin = final_state(crn, p);
  c.semiformal = crn.is_formal_state(initial);
  c.formal = c.semiformal && crn.is_formal_state(fin);
  c.trivial = initial == fin;
  return c;
}

bool is_semiformal(const Crn& crn, const Pathway& p) {
  return crn.is_formal_state(minimal_initial_state(crn, p));
}

Reaction net_reaction(const Crn& crn, const Pathway& p) {
  return Reaction{minimal_initial_state(crn, p), final_state(crn, p)};
}

std::vector<Reaction> pathway_reactions(const Crn& crn, const Pathway& p) {
  std::vector<Reaction> out;
  out.reserve(p.size());
  for (auto idx : p.steps) out.push_back(step_reaction(crn, idx));
  return out;
}

}  // namespace crnv
