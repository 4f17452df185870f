#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "crnv/crn.hpp"
#include "crnv/multiset.hpp"
#include "crnv/pathway.hpp"

namespace crnv {

/// An unordered pair of states, stored with first <= second.
struct StatePair {
  Multiset first;
  Multiset second;

  static StatePair make(Multiset a, Multiset b) {
    if (b < a) std::swap(a, b);
    return StatePair{std::move(a), std::move(b)};
  }

  bool operator==(const StatePair&) const = default;
  auto operator<=>(const StatePair&) const = default;
};

/// The pathway signature: everything the enumeration needs to remember about
/// a semiformal pathway. Two pathways with equal signatures admit exactly the
/// same extensions, decompositions, and turning-point structure, which is what
/// justifies memoizing on signatures.
///
///   initial  minimal initial state
///   final    final state from the minimal initial state
///   width    max state size along the pathway
///   closure  formal closure: pointwise max of Formal(S_i)
///   dfs      decomposed final states: {final(q1), final(q2)} over all
///            2-partitions into semiformal subsequences, with each final
///            projected to its intermediate species; empty iff the pathway
///            is undecomposable. The formal parts of the pair states are
///            dropped because neither the emptiness test nor the extension
///            step reads them (a part can absorb a reaction iff its
///            intermediate content covers the reaction's intermediate
///            reactants), and keeping them multiplies the number of
///            distinct signatures the memoized enumeration must visit.
///   rfs      regular final states: for each potential turning point, the
///            least formal state covering the suffix (deduplicated but not
///            cross-minimized)
struct Signature {
  Multiset initial;
  Multiset final;
  std::uint32_t width = 0;
  Multiset closure;
  std::vector<StatePair> dfs;  // sorted, unique
  std::vector<Multiset> rfs;   // sorted, unique

  bool undecomposable() const { return dfs.empty(); }

  bool operator==(const Signature&) const = default;
  std::uint64_t hash() const;
};

struct SignatureHash {
  std::size_t operator()(const Signature& s) const { return static_cast<std::size_t>(s.hash()); }
};

inline constexpr std::size_t kDfsOracleMaxLen = 12;

/// Pointwise max of Formal(S_i) along the pathway; errors unless semiformal.
Multiset formal_closure(const Crn& crn, const Pathway& p);

/// Brute-force decomposition oracle over all 2^k bipartitions; errors when
/// the pathway is longer than max_len or not semiformal.
std::vector<StatePair> decomposed_final_states(const Crn& crn, const Pathway& p,
                                               std::size_t max_len = kDfsOracleMaxLen);

/// Minimal covering suffix states, one per potential turning point; errors
/// unless semiformal. The empty pathway yields the empty set.
std::vector<Multiset> regular_final_states(const Crn& crn, const Pathway& p);

/// Assemble the signature from scratch (uses the brute-force oracles).
Signature signature_of(const Crn& crn, const Pathway& p,
                       std::size_t dfs_oracle_max_len = kDfsOracleMaxLen);

/// Signature of the empty pathway.
Signature empty_signature();

/// Signature of p + r given the signature of p, without revisiting p.
/// Returns nullopt when the extension is not semiformal.
std::optional<Signature> extend_signature(const Crn& crn, const Signature& sig, const Reaction& r);

/// True iff the signature is of a prime (undecomposable) formal pathway.
bool is_prime_formal(const Crn& crn, const Signature& sig);

/// True iff a prime formal signature has a turning point certifying
/// regularity; errors unless is_prime_formal.
bool is_regular_prime(const Crn& crn, const Signature& sig);

}  // namespace crnv
