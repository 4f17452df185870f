#include <algorithm>

#include <doctest.h>
#include "support.hpp"

using namespace crnv;
using namespace crnv::test;

namespace {

std::pair<TestCrn, TestCrn> make_shared_pair(const std::string& a, const std::string& b) {
  CrnDocument da = parse_crn(a);
  CrnDocument db = parse_crn(b, da.universe);
  Crn ca = compile(da), cb = compile(db);
  return {TestCrn{std::move(da), std::move(ca)}, TestCrn{std::move(db), std::move(cb)}};
}

std::vector<Multiset> formal_reach(const Crn& crn, const Multiset& from, std::uint64_t cap) {
  auto res = bounded_reachability(crn, from, cap);
  REQUIRE(!res.truncated);
  std::vector<Multiset> out;
  for (const auto& s : res.states)
    if (crn.is_formal_state(s)) out.push_back(s);
  return out;
}

}  // namespace

TEST_CASE("strong tidiness: tidy, untidy, and weakly tidy") {
  auto tidy = make("A -> i + j\ni + j -> B\n");
  auto rb = find_basis(tidy.crn);
  REQUIRE(rb.complete);
  CHECK(check_strong_tidiness(tidy.crn, rb).pass());

  auto untidy = make("A -> i\ni + B -> C\n");
  auto ub = find_basis(untidy.crn);
  REQUIRE(ub.complete);
  Verdict uv = check_strong_tidiness(untidy.crn, ub);
  CHECK(uv.status == Status::fail);
  REQUIRE(uv.counterexample.has_value());
  CHECK(*uv.counterexample == std::vector{rxn(untidy, "A -> i")});
  REQUIRE(uv.detail.has_value());
  CHECK(uv.detail->note.empty());  // not even weakly tidy

  auto weak = make("A -> i + D\nD -> E\nE + i -> C\n");
  auto wb = find_basis(weak.crn);
  REQUIRE(wb.complete);
  Verdict wv = check_strong_tidiness(weak.crn, wb);
  CHECK(wv.status == Status::fail);
  REQUIRE(wv.detail.has_value());
  CHECK(wv.detail->note.find("weakly tidy") != std::string::npos);
}

TEST_CASE("tidiness counterexample for an irreversible first step") {
  auto tc = make("A -> i\ni + B <=> j\nj -> C + k\nk <=> D\nC + A <=> m + n\nm + n -> C + C\n");
  auto basis = find_basis(tc.crn);
  REQUIRE(basis.complete);
  Verdict v = check_strong_tidiness(tc.crn, basis);
  CHECK(v.status == Status::fail);
  CHECK(v.reason.find("{i}") != std::string::npos);
  REQUIRE(v.counterexample.has_value());
  CHECK(*v.counterexample == std::vector{rxn(tc, "A -> i")});
}

TEST_CASE("regularity: the reversible scheme fails with a trivial-net witness") {
  auto tc = make("A <=> i\ni + B <=> j\nj <=> k + C\nk <=> D\n");
  auto basis = find_basis(tc.crn);
  REQUIRE(basis.complete);
  CHECK(check_strong_tidiness(tc.crn, basis).pass());
  Verdict v = check_regularity(tc.crn, basis);
  CHECK(v.status == Status::fail);
  REQUIRE(v.detail.has_value());
  CHECK(v.detail->kind == "regularity");
  REQUIRE(v.detail->reactions.size() == 1);
  CHECK(v.detail->reactions[0].trivial());
  REQUIRE(v.counterexample.has_value());
  // The witness replays to an irregular prime formal pathway.
  Pathway w;
  for (const auto& r : *v.counterexample) w.steps.push_back(step(tc, format_reaction(*tc.doc.universe, r)));
  Signature sig = signature_of(tc.crn, w);
  CHECK(is_prime_formal(tc.crn, sig));
  CHECK(!is_regular_prime(tc.crn, sig));
}

TEST_CASE("regularity passes on the figure-1 style implementation") {
  auto tc = make("A <=> i\ni + B <=> j\nj -> C + k\nk <=> D\nC + A <=> m + n\nm + n -> C + C\n");
  auto basis = find_basis(tc.crn);
  REQUIRE(basis.complete);
  CHECK(check_regularity(tc.crn, basis).pass());
}

TEST_CASE("bases_equal ignores trivial reactions") {
  auto tc = make("A -> B\nB -> A\n");
  Reaction ab = rxn(tc, "A -> B");
  Reaction ba = rxn(tc, "B -> A");
  Reaction loop{state(tc, "A"), state(tc, "A")};
  CHECK(bases_equal({ab, ba}, {ba, ab}));
  CHECK(bases_equal({ab, loop}, {ab}));
  CHECK(bases_equal({ab, ab}, {ab}));
  CHECK(!bases_equal({ab}, {ba}));
  CHECK(bases_equal({}, {loop}));
}

TEST_CASE("pd_compare: equivalent pair") {
  auto [t, i] = make_shared_pair(
      "A + B -> C + D\nC + A -> C + C\n",
      "A <=> i\ni + B <=> j\nj -> C + k\nk <=> D\nC + A <=> m + n\nm + n -> C + C\n");
  PdOutcome out = pd_compare(t.crn, i.crn);
  CHECK(out.verdict.pass());
  CHECK(bases_equal(out.basis_a.formal_basis, out.basis_b.formal_basis));
  CHECK(pd_equivalent(t.crn, i.crn).pass());
}

TEST_CASE("pd_compare: basis mismatch names the offending reaction") {
  // The bimolecular i + j step sends this implementation's signature space far
  // past the caps, so the comparison has to settle on the foreign prime found
  // at an early widening round instead of completing the basis.
  auto [t, i] = make_shared_pair(
      "A + B -> C + D\nC + A -> C + C\n",
      "A <=> i\ni + B <=> j\ni + j -> C + k\nk <=> D\nC + A <=> m + n\nm + n -> C + C\n");
  PdOutcome out = pd_compare(t.crn, i.crn);
  CHECK(out.verdict.status == Status::fail);
  CHECK(out.tidy_b.status == Status::inconclusive);
  CHECK(out.regular_b.status == Status::inconclusive);
  REQUIRE(out.verdict.detail.has_value());
  CHECK(out.verdict.detail->kind == "basis-mismatch");
  const auto& diff = out.verdict.detail->reactions;
  Reaction offending = rxn(i, "2A + B -> C + D");
  CHECK(std::find(diff.begin(), diff.end(), offending) != diff.end());
  CHECK(!out.basis_b.complete);
  CHECK(out.basis_b.foreign == diff);
  REQUIRE(out.basis_b.witness_for(offending) != nullptr);
  CHECK(is_prime_formal(i.crn, signature_of(i.crn, *out.basis_b.witness_for(offending))));
}

TEST_CASE("pd_compare: two-sided diff once both bases complete") {
  auto [t, i] = make_shared_pair("A -> B\n", "A -> C\n");
  PdOutcome out = pd_compare(t.crn, i.crn);
  CHECK(out.verdict.status == Status::fail);
  CHECK(out.basis_a.complete);
  CHECK(out.basis_b.complete);
  CHECK(out.basis_b.foreign.empty());
  REQUIRE(out.verdict.detail.has_value());
  CHECK(out.verdict.detail->kind == "basis-mismatch");
  CHECK(out.verdict.detail->reactions == std::vector{rxn(t, "A -> B"), rxn(i, "A -> C")});
}

TEST_CASE("pd_compare: tidiness precondition reported before the basis comparison") {
  auto [t, i] = make_shared_pair(
      "A + B -> C + D\nC + A -> C + C\n",
      "A -> i\ni + B <=> j\nj -> C + k\nk <=> D\nC + A <=> m + n\nm + n -> C + C\n");
  PdOutcome out = pd_compare(t.crn, i.crn);
  CHECK(out.verdict.status == Status::fail);
  CHECK(out.verdict.reason.find("precondition failed") != std::string::npos);
  CHECK(out.verdict.reason.find("second CRN is not strongly tidy") != std::string::npos);
  REQUIRE(out.verdict.detail.has_value());
  CHECK(out.verdict.detail->kind == "precondition:tidiness");
}

TEST_CASE("pd_compare: regularity precondition distinguishes the failing side") {
  auto [t, i] = make_shared_pair("A + B -> C + D\n",
                                 "A <=> i\ni + B <=> j\nj <=> k + C\nk <=> D\n");
  PdOutcome out = pd_compare(t.crn, i.crn);
  CHECK(out.verdict.status == Status::fail);
  CHECK(out.verdict.reason.find("second CRN is not regular") != std::string::npos);
  CHECK(out.verdict.detail->kind == "precondition:regularity");
}

TEST_CASE("pd_compare: incomplete basis is inconclusive when no divergence is visible") {
  // Every prime of the implementation nets A -> 0, matching the target, so
  // nothing ever lands outside the reference basis and the unbounded widths
  // leave the comparison honestly undecided.
  auto [t, i] = make_shared_pair("A -> 0\n", "A -> i\ni -> i + i\ni -> 0\n");
  PdOutcome out = pd_compare(t.crn, i.crn);
  CHECK(out.verdict.status == Status::inconclusive);
  CHECK(out.verdict.reason.find("second") != std::string::npos);
  CHECK(out.basis_b.foreign.empty());
}

TEST_CASE("pd_compare: divergent primes beat a width cap") {
  // The same unbounded-width shape, but the implementation also nets A -> 2B,
  // A -> 3B, ...: those primes are definite evidence, so the verdict is a
  // fail even though the widening loop never converges.
  auto [t, i] = make_shared_pair("A -> B\n", "A -> i\ni -> i + i\ni -> B\n");
  PdOutcome out = pd_compare(t.crn, i.crn);
  CHECK(out.verdict.status == Status::fail);
  REQUIRE(out.verdict.detail.has_value());
  CHECK(out.verdict.detail->kind == "basis-mismatch");
  CHECK(!out.basis_b.complete);
  REQUIRE(!out.basis_b.foreign.empty());
  CHECK(std::find(out.basis_b.foreign.begin(), out.basis_b.foreign.end(),
                  rxn(i, "A -> 2B")) != out.basis_b.foreign.end());
}

TEST_CASE("pd_equivalent is symmetric on a failing pair") {
  auto [a, b] = make_shared_pair("A -> B\n", "A -> C\n");
  CHECK(pd_equivalent(a.crn, b.crn).status == Status::fail);
  CHECK(pd_equivalent(b.crn, a.crn).status == Status::fail);
  CHECK(pd_equivalent(a.crn, a.crn).pass());
}

TEST_CASE("bounded reachability: pinned sets") {
  auto tc = make("A + B -> C + D\nC + A -> C + C\n");
  auto res = bounded_reachability(tc.crn, state(tc, "2A + B"), 6);
  CHECK(!res.truncated);
  std::vector<Multiset> expect = {state(tc, "2A + B"), state(tc, "A + C + D"),
                                  state(tc, "2C + D")};
  std::sort(expect.begin(), expect.end());
  CHECK(res.states == expect);
}

TEST_CASE("reachability distinguishes CRN3 from CRN1") {
  auto [one, three] = make_shared_pair(
      "A + B -> C + D\nC + A -> C + C\n",
      "A <=> i\ni + B <=> j\nj <=> C + k\nk -> D\nC + A <=> m + n\nm + n -> C + C\n");
  Multiset from = state(one, "2A + B");
  Multiset probe = state(one, "A + B + C");

  auto r1 = formal_reach(one.crn, from, 6);
  auto r3 = formal_reach(three.crn, from, 6);
  CHECK(!std::binary_search(r1.begin(), r1.end(), probe));
  CHECK(std::binary_search(r3.begin(), r3.end(), probe));
}

TEST_CASE("pd-equivalent pairs have identical bounded formal reachability") {
  auto [t, i] = make_shared_pair(
      "A + B -> C + D\nC + A -> C + C\n",
      "A <=> i\ni + B <=> j\nj -> C + k\nk <=> D\nC + A <=> m + n\nm + n -> C + C\n");
  REQUIRE(pd_equivalent(t.crn, i.crn).pass());
  for (const char* init : {"2A + B", "A + B", "2A", "B", "A + 2B"}) {
    Multiset from = state(t, init);
    CHECK(formal_reach(t.crn, from, 6) == formal_reach(i.crn, from, 6));
  }
}

TEST_CASE("reachability truncation reports itself") {
  auto tc = make("A -> 2A\n");
  auto res = bounded_reachability(tc.crn, state(tc, "A"), 64, 5);
  CHECK(res.truncated);
  CHECK(res.states.size() >= 5);
}
