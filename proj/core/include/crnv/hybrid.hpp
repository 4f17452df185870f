#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crnv/analysis.hpp"
#include "crnv/crn.hpp"
#include "crnv/enumerate.hpp"

namespace crnv {

/// How implementation species relate to the target CRN: fuels are presumed
/// always present and removed up front; every other tagged species is
/// assigned a target species or tagged waste (nullopt). Untagged species
/// default to the intermediate role.
struct Labeling {
  std::vector<SpeciesId> fuels;
  std::map<SpeciesId, std::optional<SpeciesId>> assignment;

  std::vector<SpeciesId> tagged() const;  // domain of assignment, sorted
};

/// A map from implementation species to target states; extends additively to
/// states (sum of images) and pointwise to reactions.
struct Interpretation {
  std::map<SpeciesId, Multiset> images;

  /// nullopt when the state mentions a species outside the domain.
  std::optional<Multiset> state_image(const Multiset& s) const;
  std::optional<Reaction> reaction_image(const Reaction& r) const;
};

/// Delete fuel species from both sides of every reaction; reactions that
/// become trivial are dropped with a warning.
struct FuelRemoval {
  Crn crn;
  std::vector<std::string> warnings;
};
FuelRemoval remove_fuels(const Crn& crn, const std::vector<SpeciesId>& fuels);

/// Tagged target species map to a single copy of their target; wastes map
/// to the empty state.
Interpretation natural_interpretation(const Labeling& labeling);

/// Weak-bisimulation comparison of a (basis) CRN against a target CRN under
/// an interpretation: every basis reaction must interpret to a trivial or a
/// target reaction; every target species must be some species' exact image;
/// and from every minimal state covering a target reaction's reactants, a
/// bounded sequence of interpreted-trivial reactions must enable a reaction
/// interpreting to it. Saturation without a witness fails; hitting depth_cap
/// with states left to explore is inconclusive.
Verdict weak_bisim_equivalent(const Crn& basis, const Crn& target, const Interpretation& m,
                              std::uint32_t depth_cap = 32);

struct HybridCaps {
  EnumerationCaps enumeration;
  std::uint32_t depth_cap = 32;
  std::size_t max_v_candidates = 256;
};

/// Verdict plus everything the pipeline produced on the way: the stage that
/// decided ("basis", "tidiness", "regularity", "bisimulation"), the
/// intermediate basis, fuel-removal warnings, and the V actually used.
struct HybridResult {
  Verdict verdict;
  std::string stage;
  std::optional<BasisResult> basis;
  std::vector<std::string> warnings;
  std::vector<SpeciesId> v_used;
};

/// The hybrid pipeline: remove fuels, retag so V (default: the tagged
/// species) plays the formal role, compute the formal basis with respect to
/// V, require strong tidiness and regularity, then compare the basis against
/// the target by weak bisimulation under the natural interpretation.
/// V must contain every tagged species.
HybridResult hybrid_verify(const Crn& target, const Crn& impl, const Labeling& labeling,
                           const std::optional<std::vector<SpeciesId>>& v = std::nullopt,
                           const HybridCaps& caps = {});

/// Try V = tagged species first, then supersets within the implementation's
/// species in order of increasing size, up to caps.max_v_candidates.
/// Returns the first passing result, else the V-default result.
HybridResult hybrid_verify_search(const Crn& target, const Crn& impl, const Labeling& labeling,
                                  const HybridCaps& caps = {});

/// Minimal states S' with state_image(S') containing `required`; helper for
/// the permissive condition, exposed for testing.
std::vector<Multiset> minimal_covering_states(const Interpretation& m, const Multiset& required);

}  // namespace crnv
