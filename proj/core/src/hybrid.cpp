#include "crnv/hybrid.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <unordered_set>

#include "crnv/format.hpp"

namespace crnv {

std::vector<SpeciesId> Labeling::tagged() const {
  std::vector<SpeciesId> out;
  out.reserve(assignment.size());
  for (const auto& [id, img] : assignment) out.push_back(id);
  return out;
}

std::optional<Multiset> Interpretation::state_image(const Multiset& s) const {
  Multiset out;
  for (const auto& [id, n] : s.entries()) {
    auto it = images.find(id);
    if (it == images.end()) return std::nullopt;
    for (const auto& [x, c] : it->second.entries()) out.add(x, c * n);
  }
  return out;
}

std::optional<Reaction> Interpretation::reaction_image(const Reaction& r) const {
  auto ri = state_image(r.reactants);
  if (!ri) return std::nullopt;
  auto pi = state_image(r.products);
  if (!pi) return std::nullopt;
  return Reaction{std::move(*ri), std::move(*pi)};
}

FuelRemoval remove_fuels(const Crn& crn, const std::vector<SpeciesId>& fuels) {
  std::vector<bool> is_fuel(crn.universe()->size(), false);
  for (auto id : fuels) {
    if (id >= is_fuel.size()) throw CrnError("fuel species outside the universe");
    is_fuel[id] = true;
  }
  auto strip = [&](const Multiset& m) {
    return m.filtered([&](SpeciesId id) { return !is_fuel[id]; });
  };
  std::vector<Reaction> kept;
  std::vector<std::string> warnings;
  for (const auto& r : crn.reactions()) {
    Reaction nr{strip(r.reactants), strip(r.products)};
    if (nr.trivial()) {
      std::string what = nr.reactants.empty() ? "mentions only fuel species"
                                              : "becomes trivial once fuels are removed";
      warnings.push_back("dropping reaction " + format_reaction(*crn.universe(), r) + ": " + what);
      continue;
    }
    kept.push_back(std::move(nr));
  }
  return FuelRemoval{Crn(crn.universe(), crn.formal_mask(), std::move(kept), crn.members()),
                     std::move(warnings)};
}

Interpretation natural_interpretation(const Labeling& labeling) {
  Interpretation m;
  for (const auto& [id, target] : labeling.assignment)
    m.images.emplace(id, target ? Multiset::single(*target) : Multiset{});
  return m;
}

std::vector<Multiset> minimal_covering_states(const Interpretation& m, const Multiset& required) {
  if (required.empty()) return {Multiset{}};
  std::map<SpeciesId, std::vector<SpeciesId>> suppliers;
  for (const auto& [s, img] : m.images)
    for (const auto& [x, c] : img.entries()) suppliers[x].push_back(s);
  std::vector<SpeciesId> units;
  for (const auto& [x, c] : required.entries()) {
    if (!suppliers.count(x)) return {};
    for (Count i = 0; i < c; ++i) units.push_back(x);
  }

  auto covers = [&](const Multiset& s) {
    auto img = m.state_image(s);
    return img && required.subset_of(*img);
  };
  std::set<Multiset> minimal;
  std::unordered_set<Multiset, MultisetHash> explored;
  std::function<void(const Multiset&)> reduce = [&](const Multiset& s) {
    if (!explored.insert(s).second) return;
    bool shrunk = false;
    for (const auto& [id, n] : s.entries()) {
      Multiset t = s.minus_exact(Multiset::single(id));
      if (covers(t)) {
        shrunk = true;
        reduce(t);
      }
    }
    if (!shrunk) minimal.insert(s);
  };
  std::function<void(std::size_t, const Multiset&)> choose = [&](std::size_t i,
                                                                 const Multiset& acc) {
    if (i == units.size()) {
      reduce(acc);
      return;
    }
    for (SpeciesId s : suppliers[units[i]]) {
      Multiset next = acc;
      next.add(s);
      choose(i + 1, next);
    }
  };
  choose(0, Multiset{});
  return {minimal.begin(), minimal.end()};
}

Verdict weak_bisim_equivalent(const Crn& basis, const Crn& target, const Interpretation& m,
                              std::uint32_t depth_cap) {
  const SpeciesUniverse& uni = *basis.universe();

  // Every basis species must have an interpretation.
  for (const auto& r : basis.reactions()) {
    for (const Multiset* side : {&r.reactants, &r.products}) {
      for (const auto& [id, n] : side->entries()) {
        if (m.images.count(id)) continue;
        Verdict v = Verdict::failed("species '" + uni.name(id) +
                                    "' appears in the basis but has no interpretation");
        v.detail = VerdictDetail{"interpretation-domain", {r}, "uninterpretable basis reaction"};
        return v;
      }
    }
  }

  // Reaction condition: each basis reaction is interpreted-trivial or maps to
  // a target reaction.
  std::unordered_set<Reaction, ReactionHash> target_set(target.reactions().begin(),
                                                        target.reactions().end());
  std::vector<const Reaction*> trivial_image;
  for (const auto& r : basis.reactions()) {
    Reaction img = *m.reaction_image(r);
    if (img.trivial()) {
      trivial_image.push_back(&r);
      continue;
    }
    if (!target_set.count(img)) {
      Verdict v = Verdict::failed("basis reaction " + format_reaction(uni, r) +
                                  " interprets to " + format_reaction(uni, img) +
                                  ", which is not a target reaction");
      v.detail = VerdictDetail{"reaction-condition", {r}, format_reaction(uni, img)};
      return v;
    }
  }

  // Atomic condition: every target species is the exact image of some species.
  for (SpeciesId x : target.members()) {
    Multiset want = Multiset::single(x);
    bool found = false;
    for (const auto& [s, img] : m.images)
      if (img == want) {
        found = true;
        break;
      }
    if (!found) {
      Verdict v = Verdict::failed("no implementation species is interpreted as exactly {" +
                                  uni.name(x) + "}");
      v.detail = VerdictDetail{"atomic-condition", {}, uni.name(x)};
      return v;
    }
  }

  // Permissive condition: from every minimal state covering a target
  // reaction's reactants, bounded trivial steps must enable a matching
  // reaction.
  bool hit_cap = false;
  std::string cap_note;
  for (const auto& tr : target.reactions()) {
    std::vector<const Reaction*> matching;
    for (const auto& r : basis.reactions())
      if (*m.reaction_image(r) == tr) matching.push_back(&r);

    for (const Multiset& start : minimal_covering_states(m, tr.reactants)) {
      std::deque<std::pair<Multiset, std::uint32_t>> queue{{start, 0}};
      std::unordered_set<Multiset, MultisetHash> visited{start};
      bool matched = false;
      bool truncated = false;
      while (!queue.empty() && !matched) {
        auto [s, d] = std::move(queue.front());
        queue.pop_front();
        for (const Reaction* r : matching)
          if (can_occur(s, *r)) {
            matched = true;
            break;
          }
        if (matched) break;
        if (d >= depth_cap) {
          truncated = true;
          continue;
        }
        for (const Reaction* r : trivial_image) {
          if (!can_occur(s, *r)) continue;
          Multiset ns = apply(s, *r);
          if (visited.insert(ns).second) queue.emplace_back(std::move(ns), d + 1);
        }
      }
      if (matched) continue;
      if (truncated) {
        hit_cap = true;
        cap_note = "depth cap " + std::to_string(depth_cap) +
                   " reached while checking target reaction " + format_reaction(uni, tr) +
                   " from state " + format_multiset(uni, start);
        continue;
      }
      Verdict v = Verdict::failed(
          "permissive condition fails: from state " + format_multiset(uni, start) +
          " no sequence of interpreted-trivial reactions enables a reaction interpreting to " +
          format_reaction(uni, tr));
      v.detail = VerdictDetail{"permissive-condition", {tr}, format_multiset(uni, start)};
      return v;
    }
  }
  if (hit_cap) return Verdict::undecided(cap_note);
  return Verdict::passed();
}

namespace {

std::vector<bool> formal_mask_for(const UniversePtr& uni, const std::vector<SpeciesId>& v) {
  std::vector<bool> mask(uni->size(), false);
  for (auto id : v) {
    if (id >= mask.size()) throw CrnError("species in V outside the universe");
    mask[id] = true;
  }
  return mask;
}

}  // namespace

HybridResult hybrid_verify(const Crn& target, const Crn& impl, const Labeling& labeling,
                           const std::optional<std::vector<SpeciesId>>& v,
                           const HybridCaps& caps) {
  HybridResult hr;
  FuelRemoval fr = remove_fuels(impl, labeling.fuels);
  hr.warnings = std::move(fr.warnings);

  std::vector<SpeciesId> x = labeling.tagged();
  std::vector<SpeciesId> vv = v ? *v : x;
  std::sort(vv.begin(), vv.end());
  vv.erase(std::unique(vv.begin(), vv.end()), vv.end());
  for (auto id : x)
    if (!std::binary_search(vv.begin(), vv.end(), id))
      throw CrnError("V must contain every tagged species");
  hr.v_used = vv;

  Crn tagged = fr.crn.with_formal(formal_mask_for(impl.universe(), vv));
  BasisResult fb = find_basis(tagged, caps.enumeration);
  bool complete = fb.complete;
  std::string reason = fb.reason;
  hr.basis = std::move(fb);
  if (!complete) {
    hr.stage = "basis";
    hr.verdict = Verdict::undecided("formal basis is incomplete: " + reason);
    return hr;
  }

  Verdict tidy = check_strong_tidiness(tagged, *hr.basis);
  if (!tidy.pass()) {
    hr.stage = "tidiness";
    hr.verdict = std::move(tidy);
    return hr;
  }
  Verdict regular = check_regularity(tagged, *hr.basis);
  if (!regular.pass()) {
    hr.stage = "regularity";
    hr.verdict = std::move(regular);
    return hr;
  }

  Crn basis_crn(impl.universe(), tagged.formal_mask(), hr.basis->nontrivial_basis());
  hr.stage = "bisimulation";
  hr.verdict =
      weak_bisim_equivalent(basis_crn, target, natural_interpretation(labeling), caps.depth_cap);
  return hr;
}

HybridResult hybrid_verify_search(const Crn& target, const Crn& impl, const Labeling& labeling,
                                  const HybridCaps& caps) {
  HybridResult base = hybrid_verify(target, impl, labeling, std::nullopt, caps);
  if (base.verdict.pass()) return base;

  std::vector<SpeciesId> x = labeling.tagged();
  std::sort(x.begin(), x.end());
  std::vector<bool> fuel(impl.universe()->size(), false);
  for (auto id : labeling.fuels) fuel[id] = true;
  std::vector<SpeciesId> pool;
  for (SpeciesId id : impl.members())
    if (!fuel[id] && !std::binary_search(x.begin(), x.end(), id)) pool.push_back(id);

  std::size_t tried = 1;
  for (std::size_t k = 1; k <= pool.size(); ++k) {
    std::vector<bool> select(pool.size(), false);
    std::fill(select.begin(), select.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      if (tried >= caps.max_v_candidates) return base;
      std::vector<SpeciesId> v = x;
      for (std::size_t i = 0; i < pool.size(); ++i)
        if (select[i]) v.push_back(pool[i]);
      ++tried;
      HybridResult hr = hybrid_verify(target, impl, labeling, v, caps);
      if (hr.verdict.pass()) return hr;
    } while (std::prev_permutation(select.begin(), select.end()));
  }
  return base;
}

}  // namespace crnv
