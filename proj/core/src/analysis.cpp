#include "crnv/analysis.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "crnv/format.hpp"
#include "crnv/signature.hpp"

namespace crnv {

const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

/// Can `from` reach a formal state? strong mode forbids reactions that
/// consume formal species; weak mode allows every reaction. States larger
/// than width_cap are pruned.
bool closable(const Crn& crn, const Multiset& from, std::uint32_t width_cap, bool strong) {
  if (crn.is_formal_state(from)) return true;
  std::vector<const Reaction*> closers;
  for (const auto& r : crn.reactions())
    if (!strong || crn.formal_part(r.reactants).empty()) closers.push_back(&r);
  std::deque<Multiset> queue{from};
  std::unordered_set<Multiset, MultisetHash> visited{from};
  while (!queue.empty()) {
    Multiset s = std::move(queue.front());
    queue.pop_front();
    for (const Reaction* r : closers) {
      if (!can_occur(s, *r)) continue;
      Multiset ns = apply(s, *r);
      if (crn.is_formal_state(ns)) return true;
      if (ns.total() > width_cap) continue;
      if (visited.insert(ns).second) queue.push_back(ns);
    }
  }
  return false;
}

/// Greedily drop steps while `violated` still holds for the shrunk pathway.
Pathway minimize_witness(const Crn& crn, Pathway p,
                         const std::function<bool(const Pathway&)>& violated) {
  bool shrunk = true;
  while (shrunk && p.size() > 1) {
    shrunk = false;
    for (std::size_t i = 0; i < p.size(); ++i) {
      Pathway q;
      q.steps.reserve(p.size() - 1);
      for (std::size_t j = 0; j < p.size(); ++j)
        if (j != i) q.steps.push_back(p.steps[j]);
      if (violated(q)) {
        p = std::move(q);
        shrunk = true;
        break;
      }
    }
  }
  return p;
}

Verdict basis_incomplete(const BasisResult& basis) {
  return Verdict::undecided("formal basis is incomplete: " + basis.reason);
}

}  // namespace

Verdict check_regularity(const Crn& crn, const BasisResult& basis) {
  if (!basis.complete) return basis_incomplete(basis);
  const auto& sigs = basis.enumeration.signatures;
  for (std::size_t i = 0; i < sigs.size(); ++i) {
    const Signature& sig = sigs[i];
    if (!is_prime_formal(crn, sig)) continue;
    if (is_regular_prime(crn, sig)) continue;
    auto irregular = [&](const Pathway& q) {
      if (!is_semiformal(crn, q)) return false;
      Signature s;
      try {
        s = signature_of(crn, q);
      } catch (const CrnError&) {
        return false;
      }
      return is_prime_formal(crn, s) && !is_regular_prime(crn, s);
    };
    Pathway witness = minimize_witness(crn, *basis.enumeration.witnesses[i], irregular);
    Verdict v = Verdict::failed(
        "prime formal pathway implements no formal reaction (no turning point covers its final "
        "state)");
    v.counterexample = pathway_reactions(crn, witness);
    v.detail = VerdictDetail{"regularity", {net_reaction(crn, witness)},
                             "net reaction of the irregular prime pathway"};
    return v;
  }
  return Verdict::passed();
}

Verdict check_strong_tidiness(const Crn& crn, const BasisResult& basis) {
  if (!basis.complete) return basis_incomplete(basis);
  const auto& sigs = basis.enumeration.signatures;
  std::unordered_map<Multiset, bool, MultisetHash> cache;
  for (std::size_t i = 0; i < sigs.size(); ++i) {
    const Signature& sig = sigs[i];
    if (!sig.undecomposable() || sig.width == 0) continue;
    if (crn.is_formal_state(sig.final)) continue;
    auto [it, fresh] = cache.emplace(sig.final, false);
    if (fresh) it->second = closable(crn, sig.final, basis.w_max, /*strong=*/true);
    if (it->second) continue;

    auto stuck = [&](const Pathway& q) {
      if (!is_semiformal(crn, q)) return false;
      Multiset fin = final_state(crn, q);
      if (crn.is_formal_state(fin)) return false;
      return !closable(crn, fin, basis.w_max, /*strong=*/true);
    };
    Pathway witness = minimize_witness(crn, *basis.enumeration.witnesses[i], stuck);
    Multiset fin = final_state(crn, witness);
    Verdict v = Verdict::failed(
        "semiformal pathway reaches " + format_multiset(*crn.universe(), fin) +
        ", which no pathway closes to a formal state without consuming formal species");
    v.counterexample = pathway_reactions(crn, witness);
    VerdictDetail d{"tidiness", {}, ""};
    if (closable(crn, fin, basis.w_max, /*strong=*/false))
      d.note = "weakly tidy: a closing pathway exists if formal species may be consumed";
    v.detail = std::move(d);
    return v;
  }
  return Verdict::passed();
}

bool bases_equal(const std::vector<Reaction>& a, const std::vector<Reaction>& b) {
  auto nontrivial_sorted = [](const std::vector<Reaction>& v) {
    std::vector<Reaction> out;
    for (const auto& r : v)
      if (!r.trivial()) out.push_back(r);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  return nontrivial_sorted(a) == nontrivial_sorted(b);
}

PdOutcome pd_compare(const Crn& a, const Crn& b, const EnumerationCaps& caps, unsigned jobs) {
  PdOutcome out;

  auto incomplete = [&](const BasisResult& basis, const char* which) -> bool {
    if (basis.complete) return false;
    out.verdict = Verdict::undecided(std::string("formal basis of the ") + which +
                                     " CRN is incomplete: " + basis.reason);
    return true;
  };
  auto precondition = [&](const Verdict& v, const char* which, const char* what) -> bool {
    if (v.pass()) return false;
    out.verdict = v;
    out.verdict.reason =
        std::string("precondition failed: the ") + which + " CRN is not " + what +
        (v.reason.empty() ? "" : " (" + v.reason + ")");
    if (out.verdict.detail)
      out.verdict.detail->kind = "precondition:" + out.verdict.detail->kind;
    return true;
  };

  out.basis_a = find_basis(a, caps, jobs);
  if (incomplete(out.basis_a, "first")) return out;
  out.tidy_a = check_strong_tidiness(a, out.basis_a);
  out.regular_a = check_regularity(a, out.basis_a);
  if (precondition(out.tidy_a, "first", "strongly tidy")) return out;
  if (precondition(out.regular_a, "first", "regular")) return out;

  // Hand the first CRN's (complete) basis to the second enumeration so it can
  // stop as soon as a basis reaction outside it turns up: that single reaction
  // already decides the comparison, even when the second CRN's full basis is
  // out of reach of the caps.
  auto reference = out.basis_a.nontrivial_basis();
  out.basis_b = find_basis(b, caps, jobs, &reference);
  if (!out.basis_b.foreign.empty()) {
    const char* skipped = "not evaluated: the basis mismatch already decides the comparison";
    out.tidy_b = Verdict::undecided(skipped);
    out.regular_b = Verdict::undecided(skipped);
    out.verdict = Verdict::failed("formal bases differ");
    VerdictDetail d{"basis-mismatch", out.basis_b.foreign,
                    std::to_string(out.basis_b.foreign.size()) +
                        " basis reaction(s) of the second CRN are outside the first CRN's "
                        "basis (enumeration of the second CRN stopped early)"};
    out.verdict.detail = std::move(d);
    return out;
  }
  if (incomplete(out.basis_b, "second")) return out;

  out.tidy_b = check_strong_tidiness(b, out.basis_b);
  out.regular_b = check_regularity(b, out.basis_b);
  if (precondition(out.tidy_b, "second", "strongly tidy")) return out;
  if (precondition(out.regular_b, "second", "regular")) return out;

  auto na = out.basis_a.nontrivial_basis();
  auto nb = out.basis_b.nontrivial_basis();
  if (bases_equal(na, nb)) {
    out.verdict = Verdict::passed();
    return out;
  }
  std::vector<Reaction> only_a, only_b;
  for (const auto& r : na)
    if (std::find(nb.begin(), nb.end(), r) == nb.end()) only_a.push_back(r);
  for (const auto& r : nb)
    if (std::find(na.begin(), na.end(), r) == na.end()) only_b.push_back(r);
  out.verdict = Verdict::failed("formal bases differ");
  VerdictDetail d{"basis-mismatch", {}, ""};
  d.reactions = only_a;
  d.reactions.insert(d.reactions.end(), only_b.begin(), only_b.end());
  d.note = std::to_string(only_a.size()) + " basis reaction(s) only in the first CRN, " +
           std::to_string(only_b.size()) + " only in the second";
  out.verdict.detail = std::move(d);
  return out;
}

Verdict pd_equivalent(const Crn& a, const Crn& b, const EnumerationCaps& caps) {
  return pd_compare(a, b, caps).verdict;
}

ReachResult bounded_reachability(const Crn& crn, const Multiset& initial,
                                 std::uint64_t max_state_size, std::size_t max_states) {
  ReachResult out;
  std::deque<Multiset> queue{initial};
  std::unordered_set<Multiset, MultisetHash> visited{initial};
  while (!queue.empty()) {
    if (visited.size() >= max_states) {
      out.truncated = true;
      break;
    }
    Multiset s = std::move(queue.front());
    queue.pop_front();
    for (const auto& r : crn.reactions()) {
      if (!can_occur(s, r)) continue;
      Multiset ns = apply(s, r);
      if (ns.total() > max_state_size) continue;
      if (visited.insert(ns).second) queue.push_back(ns);
    }
  }
  out.states.assign(visited.begin(), visited.end());
  std::sort(out.states.begin(), out.states.end());
  return out;
}

}  // namespace crnv
