#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crnv/crn.hpp"
#include "crnv/enumerate.hpp"

namespace crnv {

enum class Status { pass, fail, inconclusive };

const char* status_name(Status s);

/// Structured payload attached to a verdict: which stage produced it and the
/// concrete reactions involved (mismatching basis elements, an uninterpretable
/// reaction, ...).
struct VerdictDetail {
  std::string kind;
  std::vector<Reaction> reactions;
  std::string note;
};

/// Outcome of a check or a whole verification. A fail always carries either a
/// counterexample pathway (as a concrete reaction list) or a detail payload;
/// an inconclusive reason always names the cap that was hit.
struct Verdict {
  Status status = Status::inconclusive;
  std::string reason;
  std::optional<std::vector<Reaction>> counterexample;
  std::optional<VerdictDetail> detail;

  bool pass() const { return status == Status::pass; }

  static Verdict passed() { return Verdict{Status::pass, "", std::nullopt, std::nullopt}; }
  static Verdict failed(std::string reason) {
    return Verdict{Status::fail, std::move(reason), std::nullopt, std::nullopt};
  }
  static Verdict undecided(std::string reason) {
    return Verdict{Status::inconclusive, std::move(reason), std::nullopt, std::nullopt};
  }
};

/// Every prime formal signature must contain its final state among its
/// regular final states. Fails with a minimized witness pathway.
Verdict check_regularity(const Crn& crn, const BasisResult& basis);

/// Every undecomposable semiformal signature with a non-formal final state
/// must reach some formal state via reactions that consume no formal species
/// (searched breadth-first, states capped at the enumeration width bound).
/// Fails with a minimized stuck-pathway witness; the detail notes when a
/// closing pathway exists once formal species may be consumed (weakly tidy).
Verdict check_strong_tidiness(const Crn& crn, const BasisResult& basis);

/// Set equality ignoring trivial reactions.
bool bases_equal(const std::vector<Reaction>& a, const std::vector<Reaction>& b);

/// Full pathway-decomposition comparison with all intermediate results. The
/// per-CRN checks keep their "not evaluated" default when an earlier stage
/// already settled the verdict (incomplete basis, failed precondition, or an
/// early basis-mismatch exit).
struct PdOutcome {
  Verdict verdict;
  BasisResult basis_a;
  BasisResult basis_b;
  Verdict tidy_a = Verdict::undecided("not evaluated");
  Verdict tidy_b = Verdict::undecided("not evaluated");
  Verdict regular_a = Verdict::undecided("not evaluated");
  Verdict regular_b = Verdict::undecided("not evaluated");
};

PdOutcome pd_compare(const Crn& a, const Crn& b, const EnumerationCaps& caps = {},
                     unsigned jobs = 1);

/// Two CRNs are equivalent when both are strongly tidy and regular and their
/// formal bases agree up to trivial reactions. Precondition failures and
/// basis mismatches yield distinguishable fail verdicts; cap hits yield
/// inconclusive.
Verdict pd_equivalent(const Crn& a, const Crn& b, const EnumerationCaps& caps = {});

struct ReachResult {
  std::vector<Multiset> states;  // sorted
  bool truncated = false;
};

/// Breadth-first state exploration from `initial`, pruning states larger
/// than max_state_size and stopping (truncated) at max_states states.
ReachResult bounded_reachability(const Crn& crn, const Multiset& initial,
                                 std::uint64_t max_state_size, std::size_t max_states = 100000);

}  // namespace crnv
