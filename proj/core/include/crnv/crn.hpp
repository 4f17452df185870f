#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "crnv/multiset.hpp"

namespace crnv {

class CrnError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Interning pool of species names. Ids are dense, stable, and assigned in
/// order of first appearance, which fixes every canonical ordering downstream.
class SpeciesUniverse {
public:
  SpeciesId intern(std::string_view name);
  std::optional<SpeciesId> find(std::string_view name) const;
  const std::string& name(SpeciesId id) const;
  std::size_t size() const { return names_.size(); }

private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, SpeciesId> ids_;
};

using UniversePtr = std::shared_ptr<const SpeciesUniverse>;

/// A reaction is an ordered pair of reactant/product multisets. Reaction
/// values may be trivial; CRNs reject trivial reactions at construction.
struct Reaction {
  Multiset reactants;
  Multiset products;

  bool trivial() const { return reactants == products; }

  bool operator==(const Reaction&) const = default;
  auto operator<=>(const Reaction&) const = default;
};

struct ReactionHash {
  std::size_t operator()(const Reaction& r) const {
    return static_cast<std::size_t>(hash_mix(r.reactants.hash(), r.products.hash()));
  }
};

/// A chemical reaction network: a set of nontrivial reactions over a species
/// universe together with a formal/intermediate tag per species. Reactions
/// keep their first-appearance order (duplicates collapse); that order is the
/// canonical reaction ordering used by the enumeration.
class Crn {
public:
  Crn(UniversePtr universe, std::vector<bool> formal, std::vector<Reaction> reactions,
      const std::vector<SpeciesId>& extra_members = {});

  const std::vector<Reaction>& reactions() const { return reactions_; }
  std::size_t size() const { return reactions_.size(); }
  bool empty() const { return reactions_.empty(); }

  const UniversePtr& universe() const { return universe_; }
  const std::vector<bool>& formal_mask() const { return formal_; }

  bool is_formal(SpeciesId id) const { return id < formal_.size() && formal_[id]; }

  /// True iff the species occurs in some reaction or was declared a member.
  bool is_member(SpeciesId id) const { return id < member_.size() && member_[id]; }
  std::vector<SpeciesId> members() const;
  std::vector<SpeciesId> formal_members() const;

  /// Formal(S): the restriction of a state to formal species.
  Multiset formal_part(const Multiset& s) const;
  bool is_formal_state(const Multiset& s) const;
  bool is_formal_reaction(const Reaction& r) const;

  /// Same universe and reactions under a different formal tagging.
  Crn with_formal(std::vector<bool> formal) const;

private:
  UniversePtr universe_;
  std::vector<bool> formal_;
  std::vector<Reaction> reactions_;
  std::vector<bool> member_;
};

/// max over reactions of max(|reactants|, |products|); errors on an empty CRN.
std::uint32_t branching_factor(const Crn& crn);

}  // namespace crnv
