#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crnv/crn.hpp"
#include "crnv/pathway.hpp"
#include "crnv/signature.hpp"

namespace crnv {

/// Resource guards for the enumeration. The widening loop gives up (verdict
/// "inconclusive", never a wrong answer) when the next width bound would
/// exceed max_width_bound, when it has widened max_iterations times, or when
/// a single enumeration memoizes more than max_memo signatures.
struct EnumerationCaps {
  std::uint32_t max_width_bound = 12;
  std::uint32_t max_iterations = 20;
  std::size_t max_memo = 1'000'000;
};

/// Thrown by enumerate_signatures when a resource cap trips.
class CapExceeded : public CrnError {
public:
  CapExceeded(std::string cap, const std::string& what) : CrnError(what), cap(std::move(cap)) {}
  std::string cap;
};

/// Signatures of semiformal pathways of width <= w, in first-discovery
/// order. Pathways are not grown past a nonempty prefix whose final state is
/// formal — everything beyond such a prefix is decomposable — so the list
/// omits some decomposable signatures but provably contains every
/// undecomposable one, which is all the basis construction and the
/// tidiness/regularity checks consume. witnesses[i] holds a concrete pathway
/// for signatures[i] when the signature is undecomposable (those witnesses
/// back every counterexample and basis report); decomposable signatures
/// carry no witness.
struct EnumerationResult {
  std::vector<Signature> signatures;
  std::vector<std::optional<Pathway>> witnesses;
};

/// Memoized depth-first enumeration: grow pathways one reaction at a time,
/// pruning any branch that is not semiformal, exceeds width w, or lands on an
/// already-seen signature (extensions of a pathway depend only on its
/// signature, so one representative per signature suffices). jobs > 1 runs a
/// shared-memo worker pool: same signature set, possibly different witnesses.
EnumerationResult enumerate_signatures(const Crn& crn, std::uint32_t w,
                                       const EnumerationCaps& caps = {}, unsigned jobs = 1);

/// Result of the widening loop. When complete, formal_basis is exactly the
/// formal basis of the CRN: the net reactions of its prime formal pathways,
/// trivial elements retained (callers ignore them for equivalence).
struct BasisResult {
  bool complete = false;
  std::string reason;  // names the offending cap when not complete

  std::vector<Reaction> formal_basis;   // canonical order, parallel to witnesses
  std::vector<Pathway> basis_witnesses;
  EnumerationResult enumeration;        // last completed enumeration round
  std::uint32_t w_max = 0;              // final width bound used
  std::uint32_t w = 0;                  // max width of an undecomposable signature

  // Nontrivial basis reactions that fall outside the reference basis handed
  // to find_basis. Populated only when the widening loop ended without a
  // complete basis; every element is nevertheless definitely in this CRN's
  // basis, so a caller may fail a comparison on them.
  std::vector<Reaction> foreign;

  std::vector<Reaction> nontrivial_basis() const;
  std::vector<Reaction> trivial_basis() const;
  const Pathway* witness_for(const Reaction& r) const;
};

/// Widening loop: enumerate at w_max, read off the largest undecomposable
/// width w, stop once (w+1)*b <= w_max (b = branching factor), else widen
/// w_max to (w+1)*b and repeat, starting from w_max = 0.
///
/// A prime pathway found at any round is in the basis no matter how the loop
/// ends, so a caller comparing against a known-complete `reference` basis can
/// act on one that lands outside it without waiting for the full basis. When
/// `reference` is non-null, each non-final round records such reactions in
/// `foreign`, and the loop returns early on them instead of starting a wider
/// round that would strain the memo cap — which is what keeps verdicts on
/// basis-divergent CRNs affordable even when their complete enumeration is
/// out of reach.
BasisResult find_basis(const Crn& crn, const EnumerationCaps& caps = {}, unsigned jobs = 1,
                       const std::vector<Reaction>* reference = nullptr);

/// Reference implementation for cross-checking: enumerate every pathway up
/// to max_len / max_width explicitly and test primality by brute force.
std::vector<Reaction> naive_basis_oracle(const Crn& crn, std::size_t max_len,
                                         std::uint32_t max_width);

}  // namespace crnv
