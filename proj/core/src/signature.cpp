#include "crnv/signature.hpp"

#include <algorithm>

namespace crnv {

namespace {

void require_semiformal(const Crn& crn, const Pathway& p, const char* op) {
  if (!is_semiformal(crn, p))
    throw CrnError(std::string(op) + " requires a semiformal pathway");
}

/// Final state of a step subsequence if it is semiformal, nullopt otherwise.
std::optional<Multiset> semiformal_final(const Crn& crn, const std::vector<std::uint32_t>& steps) {
  Multiset cur;
  for (auto idx : steps) {
    const Reaction& r = crn.reactions()[idx];
    Multiset deficit = r.reactants.minus_clamped(cur);
    if (!crn.is_formal_state(deficit)) return std::nullopt;
    cur = (cur + deficit).minus_exact(r.reactants) + r.products;
  }
  return cur;
}

template <typename T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

Multiset intermediate_part(const Crn& crn, const Multiset& m) {
  return m.filtered([&](SpeciesId id) { return !crn.is_formal(id); });
}

}  // namespace

std::uint64_t Signature::hash() const {
  std::uint64_t h = initial.hash();
  h = hash_mix(h, final.hash());
  h = hash_mix(h, width);
  h = hash_mix(h, closure.hash());
  for (const auto& pr : dfs) {
    h = hash_mix(h, pr.first.hash());
    h = hash_mix(h, pr.second.hash());
  }
  h = hash_mix(h, 0x5bd1e995);
  for (const auto& t : rfs) h = hash_mix(h, t.hash());
  return h;
}

Multiset formal_closure(const Crn& crn, const Pathway& p) {
  require_semiformal(crn, p, "formal closure");
  Multiset closure;
  for (const auto& s : states_along(crn, p))
    closure = Multiset::cwise_max(closure, crn.formal_part(s));
  return closure;
}

std::vector<StatePair> decomposed_final_states(const Crn& crn, const Pathway& p,
                                               std::size_t max_len) {
  require_semiformal(crn, p, "decomposed final states");
  if (p.size() > max_len)
    throw CrnError("pathway length " + std::to_string(p.size()) +
                   " exceeds the decomposition oracle cap " + std::to_string(max_len));
  std::vector<StatePair> out;
  const std::size_t k = p.size();
  if (k < 2) return out;
  std::vector<std::uint32_t> part1, part2;
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t(1) << k); ++mask) {
    part1.clear();
    part2.clear();
    for (std::size_t i = 0; i < k; ++i)
      ((mask >> i) & 1 ? part1 : part2).push_back(p.steps[i]);
    auto f1 = semiformal_final(crn, part1);
    if (!f1) continue;
    auto f2 = semiformal_final(crn, part2);
    if (!f2) continue;
    out.push_back(
        StatePair::make(intermediate_part(crn, *f1), intermediate_part(crn, *f2)));
  }
  sort_unique(out);
  return out;
}

std::vector<Multiset> regular_final_states(const Crn& crn, const Pathway& p) {
  require_semiformal(crn, p, "regular final states");
  std::vector<Multiset> out;
  if (p.empty()) return out;
  auto states = states_along(crn, p);
  const std::size_t k = p.size();
  // suffix_formal[j] = pointwise max of Formal(S_i) for i >= j
  std::vector<Multiset> suffix_formal(k + 1);
  suffix_formal[k] = crn.formal_part(states[k]);
  for (std::size_t i = k; i-- > 0;)
    suffix_formal[i] = Multiset::cwise_max(crn.formal_part(states[i]), suffix_formal[i + 1]);

  const Multiset& initial = states[0];
  for (std::size_t j = 1; j <= k; ++j) {
    // prefix condition: Formal(S_i) within the initial state for all i < j
    if (!crn.formal_part(states[j - 1]).subset_of(initial)) break;
    const Reaction& rj = crn.reactions()[p.steps[j - 1]];
    // the state consumed by r_j must hold no formal species beyond its reactants
    if (crn.formal_part(states[j - 1].minus_exact(rj.reactants)).empty())
      out.push_back(suffix_formal[j]);
  }
  sort_unique(out);
  return out;
}

Signature signature_of(const Crn& crn, const Pathway& p, std::size_t dfs_oracle_max_len) {
  require_semiformal(crn, p, "signature");
  Signature sig;
  auto states = states_along(crn, p);
  sig.initial = states.front();
  sig.final = states.back();
  std::uint64_t w = 0;
  Multiset closure;
  for (const auto& s : states) {
    w = std::max(w, s.total());
    closure = Multiset::cwise_max(closure, crn.formal_part(s));
  }
  sig.width = static_cast<std::uint32_t>(w);
  sig.closure = std::move(closure);
  sig.dfs = decomposed_final_states(crn, p, dfs_oracle_max_len);
  sig.rfs = regular_final_states(crn, p);
  return sig;
}

Signature empty_signature() { return Signature{}; }

std::optional<Signature> extend_signature(const Crn& crn, const Signature& sig,
                                          const Reaction& r) {
  // Deficit the appended reaction adds to the minimal initial state. The
  // extension is semiformal iff the deficit is formal.
  Multiset deficit = r.reactants.minus_clamped(sig.final);
  if (!crn.is_formal_state(deficit)) return std::nullopt;

  Signature out;
  out.initial = sig.initial + deficit;
  out.final = (sig.final + deficit).minus_exact(r.reactants) + r.products;
  out.width = static_cast<std::uint32_t>(
      std::max<std::uint64_t>(sig.width + deficit.total(), out.final.total()));
  Multiset final_formal = crn.formal_part(out.final);
  out.closure = Multiset::cwise_max(sig.closure + deficit, final_formal);

  // Decompositions of p+r: either r alone forms the second part (needs p
  // nonempty and r's reactants formal; width 0 identifies the empty pathway,
  // since nontrivial reactions force width >= 1 on anything else), or r
  // extends one side of a decomposition of p. Pair states carry only their
  // intermediate species; a side can absorb r exactly when it covers r's
  // intermediate reactants, which is the same test as "the deficit against
  // the full final state is formal".
  std::vector<StatePair> dfs;
  if (sig.width > 0 && crn.is_formal_state(r.reactants))
    dfs.push_back(StatePair::make(intermediate_part(crn, sig.final),
                                  intermediate_part(crn, r.products)));
  auto side_extend = [&](const Multiset& fin) -> std::optional<Multiset> {
    Multiset d = r.reactants.minus_clamped(fin);
    if (!crn.is_formal_state(d)) return std::nullopt;
    return intermediate_part(crn, (fin + d).minus_exact(r.reactants) + r.products);
  };
  for (const auto& pr : sig.dfs) {
    if (auto f = side_extend(pr.first)) dfs.push_back(StatePair::make(std::move(*f), pr.second));
    if (auto f = side_extend(pr.second)) dfs.push_back(StatePair::make(pr.first, std::move(*f)));
  }
  std::sort(dfs.begin(), dfs.end());
  dfs.erase(std::unique(dfs.begin(), dfs.end()), dfs.end());
  out.dfs = std::move(dfs);

  // Turning points of p+r: the appended reaction is a new turning point when
  // every prior formal part already sits inside the initial state
  // (closure == initial) and r consumes all formal species of the old final.
  // Turning points inherited from p survive only when the deficit is empty;
  // a nonempty deficit breaks their no-formal-species-left condition because
  // r's occurrence in p already had those reactants available.
  std::vector<Multiset> rfs;
  if (sig.closure == sig.initial && crn.formal_part(sig.final).subset_of(r.reactants))
    rfs.push_back(final_formal);
  if (deficit.empty())
    for (const auto& t : sig.rfs) rfs.push_back(Multiset::cwise_max(t, final_formal));
  std::sort(rfs.begin(), rfs.end());
  rfs.erase(std::unique(rfs.begin(), rfs.end()), rfs.end());
  out.rfs = std::move(rfs);
  return out;
}

bool is_prime_formal(const Crn& crn, const Signature& sig) {
  return sig.width > 0 && sig.dfs.empty() && crn.is_formal_state(sig.final) &&
         crn.is_formal_state(sig.initial);
}

bool is_regular_prime(const Crn& crn, const Signature& sig) {
  if (!is_prime_formal(crn, sig))
    throw CrnError("regularity is defined for prime formal signatures only");
  return std::binary_search(sig.rfs.begin(), sig.rfs.end(), sig.final);
}

}  // namespace crnv
