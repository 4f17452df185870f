#include "crnv/crn.hpp"

#include <algorithm>
#include <unordered_set>

namespace crnv {

SpeciesId SpeciesUniverse::intern(std::string_view name) {
  auto it = ids_.find(std::string(name));
  if (it != ids_.end()) return it->second;
  SpeciesId id = static_cast<SpeciesId>(names_.size());
  names_.emplace_back(name);
  ids_.emplace(names_.back(), id);
  return id;
}

std::optional<SpeciesId> SpeciesUniverse::find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

const std::string& SpeciesUniverse::name(SpeciesId id) const {
  if (id >= names_.size()) throw CrnError("species id out of range");
  return names_[id];
}

Crn::Crn(UniversePtr universe, std::vector<bool> formal, std::vector<Reaction> reactions,
         const std::vector<SpeciesId>& extra_members)
    : universe_(std::move(universe)), formal_(std::move(formal)) {
  if (!universe_) throw CrnError("CRN requires a species universe");
  member_.assign(universe_->size(), false);
  auto note_member = [&](const Multiset& side) {
    for (const auto& [id, n] : side.entries()) {
      if (id >= universe_->size()) throw CrnError("reaction mentions a species outside the universe");
      member_[id] = true;
    }
  };
  std::unordered_set<Reaction, ReactionHash> seen;
  reactions_.reserve(reactions.size());
  for (auto& r : reactions) {
    if (r.trivial()) throw CrnError("CRN may not contain a trivial reaction");
    note_member(r.reactants);
    note_member(r.products);
    if (seen.insert(r).second) reactions_.push_back(std::move(r));
  }
  for (SpeciesId id : extra_members) {
    if (id >= universe_->size()) throw CrnError("member species outside the universe");
    member_[id] = true;
  }
}

std::vector<SpeciesId> Crn::members() const {
  std::vector<SpeciesId> out;
  for (SpeciesId id = 0; id < member_.size(); ++id)
    if (member_[id]) out.push_back(id);
  return out;
}

std::vector<SpeciesId> Crn::formal_members() const {
  std::vector<SpeciesId> out;
  for (SpeciesId id = 0; id < member_.size(); ++id)
    if (member_[id] && is_formal(id)) out.push_back(id);
  return out;
}

Multiset Crn::formal_part(const Multiset& s) const {
  return s.filtered([this](SpeciesId id) { return is_formal(id); });
}

bool Crn::is_formal_state(const Multiset& s) const {
  return s.all_of([this](SpeciesId id) { return is_formal(id); });
}

bool Crn::is_formal_reaction(const Reaction& r) const {
  return is_formal_state(r.reactants) && is_formal_state(r.products);
}

Crn Crn::with_formal(std::vector<bool> formal) const {
  return Crn(universe_, std::move(formal), reactions_, members());
}

std::uint32_t branching_factor(const Crn& crn) {
  if (crn.empty()) throw CrnError("branching factor of an empty CRN is undefined");
  std::uint64_t b = 0;
  for (const auto& r : crn.reactions())
    b = std::max({b, r.reactants.total(), r.products.total()});
  return static_cast<std::uint32_t>(b);
}

}  // namespace crnv
