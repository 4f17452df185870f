#include <algorithm>
#include <random>
#include <set>

#include <doctest.h>
#include "support.hpp"

using namespace crnv;
using namespace crnv::test;

namespace {

std::vector<Signature> sorted_by_hashless_fields(std::vector<Signature> v) {
  std::sort(v.begin(), v.end(), [](const Signature& a, const Signature& b) {
    return std::tie(a.initial, a.final, a.width, a.closure, a.dfs, a.rfs) <
           std::tie(b.initial, b.final, b.width, b.closure, b.dfs, b.rfs);
  });
  return v;
}

bool same_signature_set(const EnumerationResult& a, const EnumerationResult& b) {
  return sorted_by_hashless_fields(a.signatures) == sorted_by_hashless_fields(b.signatures);
}

std::vector<Reaction> rxns(TestCrn& tc, const std::vector<std::string>& texts) {
  std::vector<Reaction> out;
  for (const auto& t : texts) out.push_back(rxn(tc, t));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("enumerate at width 0 yields only the empty signature") {
  auto tc = make("A -> i\ni -> B\n");
  auto res = enumerate_signatures(tc.crn, 0);
  REQUIRE(res.signatures.size() == 1);
  CHECK(res.signatures[0] == empty_signature());
  REQUIRE(res.witnesses[0].has_value());
  CHECK(res.witnesses[0]->empty());
}

TEST_CASE("enumerated signatures are semiformal and within the width bound") {
  auto tc = make("A -> i\ni + B -> j\nj -> C + k\nk -> D\n");
  for (std::uint32_t w : {1u, 2u, 3u}) {
    auto res = enumerate_signatures(tc.crn, w);
    for (const auto& sig : res.signatures) {
      CHECK(tc.crn.is_formal_state(sig.initial));
      CHECK(sig.width <= w);
    }
  }
}

TEST_CASE("enumeration is monotone in the width bound") {
  auto tc = make("A -> i\ni + B -> j\nj -> C + k\nk -> D\nC + A -> m\nm -> 2C\n");
  auto small = enumerate_signatures(tc.crn, 2);
  auto big = enumerate_signatures(tc.crn, 4);
  auto b = sorted_by_hashless_fields(big.signatures);
  for (const auto& sig : small.signatures)
    CHECK(std::binary_search(b.begin(), b.end(), sig, [](const Signature& x, const Signature& y) {
      return std::tie(x.initial, x.final, x.width, x.closure, x.dfs, x.rfs) <
             std::tie(y.initial, y.final, y.width, y.closure, y.dfs, y.rfs);
    }));
  CHECK(small.signatures.size() < big.signatures.size());
}

TEST_CASE("brute-force signatures are enumerated up to formal-final pruning") {
  // The enumeration stops growing a pathway once it ends in a formal state:
  // everything past that point is decomposable. So (a) no undecomposable
  // pathway may contain a nonempty proper prefix with a formal final state,
  // and (b) every signature of a pathway free of such prefixes must appear.
  std::mt19937 rng(90011);
  RandomCrnConfig cfg;
  for (int iter = 0; iter < 15; ++iter) {
    TestCrn tc = random_crn(rng, cfg);
    const std::uint32_t w = 4;
    auto res = enumerate_signatures(tc.crn, w);
    auto have = sorted_by_hashless_fields(res.signatures);
    auto contains = [&](const Signature& s) {
      return std::binary_search(have.begin(), have.end(), s,
                                [](const Signature& x, const Signature& y) {
                                  return std::tie(x.initial, x.final, x.width, x.closure, x.dfs,
                                                  x.rfs) < std::tie(y.initial, y.final, y.width,
                                                                    y.closure, y.dfs, y.rfs);
                                });
    };
    for_each_semiformal_pathway(tc.crn, 5, [&](const Pathway& p) {
      if (width(tc.crn, p) > w) return;
      Signature sig = signature_of(tc.crn, p);
      auto states = states_along(tc.crn, p);
      bool formal_cut = false;
      for (std::size_t t = 1; t < p.size() && !formal_cut; ++t)
        formal_cut = tc.crn.is_formal_state(states[t]);
      if (sig.undecomposable()) CHECK(!formal_cut);
      if (!formal_cut) CHECK(contains(sig));
    });
  }
}

TEST_CASE("witnesses reproduce their signatures") {
  auto tc = make("A -> i\ni + B -> j\nj -> C + k\nk -> D\n");
  auto res = enumerate_signatures(tc.crn, 4);
  std::size_t undecomposable = 0;
  for (std::size_t i = 0; i < res.signatures.size(); ++i) {
    if (!res.signatures[i].undecomposable()) {
      CHECK(!res.witnesses[i].has_value());
      continue;
    }
    ++undecomposable;
    REQUIRE(res.witnesses[i].has_value());
    CHECK(signature_of(tc.crn, *res.witnesses[i]) == res.signatures[i]);
  }
  CHECK(undecomposable > 1);
}

TEST_CASE("find_basis: cascade") {
  auto tc = make("A -> i\ni -> B\nB -> j\nj -> C\n");
  auto res = find_basis(tc.crn);
  REQUIRE(res.complete);
  CHECK(res.formal_basis == rxns(tc, {"A -> B", "B -> C"}));
  CHECK(res.w == 1);
}

TEST_CASE("find_basis: delayed choice") {
  auto tc = make("A -> i\ni -> B\ni -> C\nA -> j\nj -> D\n");
  auto res = find_basis(tc.crn);
  REQUIRE(res.complete);
  CHECK(res.formal_basis == rxns(tc, {"A -> B", "A -> C", "A -> D"}));
  for (const auto& r : res.formal_basis) {
    const Pathway* wit = res.witness_for(r);
    REQUIRE(wit != nullptr);
    CHECK(net_reaction(tc.crn, *wit) == r);
  }
}

TEST_CASE("find_basis: formal CRNs are their own basis") {
  auto tc = make("A + B -> C + D\nC + A -> C + C\n");
  auto res = find_basis(tc.crn);
  REQUIRE(res.complete);
  CHECK(res.formal_basis == sorted_nontrivial(tc.crn.reactions()));
  CHECK(res.trivial_basis().empty());
}

TEST_CASE("find_basis: trivial elements are reported but kept out of the nontrivial basis") {
  auto tc = make("A -> i\ni -> A\n");
  auto res = find_basis(tc.crn);
  REQUIRE(res.complete);
  REQUIRE(res.formal_basis.size() == 1);
  CHECK(res.formal_basis[0].trivial());
  CHECK(res.formal_basis[0].reactants == state(tc, "A"));
  CHECK(res.nontrivial_basis().empty());
  CHECK(res.trivial_basis() == res.formal_basis);
}

TEST_CASE("find_basis: empty CRN") {
  auto tc = make("fuel: g h\ng -> h\n");
  auto removal = remove_fuels(tc.crn, {tc.doc.universe->find("g").value(),
                                       tc.doc.universe->find("h").value()});
  REQUIRE(removal.crn.reactions().empty());
  auto res = find_basis(removal.crn);
  CHECK(res.complete);
  CHECK(res.formal_basis.empty());
}

TEST_CASE("find_basis: fuel-driven production keeps the induced reaction") {
  auto tc = make("fuel: g\ng -> A\n");
  auto removal = remove_fuels(tc.crn, {tc.doc.universe->find("g").value()});
  auto res = find_basis(removal.crn);
  REQUIRE(res.complete);
  REQUIRE(res.formal_basis.size() == 1);
  CHECK(res.formal_basis[0].reactants.empty());
  CHECK(res.formal_basis[0].products == state(tc, "A"));
}

TEST_CASE("naive oracle flags the trivial loop basis") {
  auto tc = make("A -> i\ni -> A\n");
  auto oracle = naive_basis_oracle(tc.crn, 6, 6);
  REQUIRE(oracle.size() == 1);
  CHECK(oracle[0].trivial());
  CHECK(oracle[0].reactants == state(tc, "A"));
}

TEST_CASE("find_basis agrees with the naive oracle on random CRNs") {
  std::mt19937 rng(551234);
  RandomCrnConfig cfg;
  for (int iter = 0; iter < 25; ++iter) {
    TestCrn tc = random_crn(rng, cfg);
    auto res = find_basis(tc.crn);
    if (!res.complete) continue;  // width caps may trip on random inputs
    auto oracle = naive_basis_oracle(tc.crn, 6, res.w_max == 0 ? 6 : res.w_max);
    // Every oracle element must appear in the computed basis; every basis
    // element with a short witness must appear in the oracle.
    auto basis = res.formal_basis;
    std::sort(basis.begin(), basis.end());
    for (const auto& r : oracle)
      CHECK(std::binary_search(basis.begin(), basis.end(), r));
    for (std::size_t i = 0; i < res.formal_basis.size(); ++i) {
      if (res.basis_witnesses[i].size() > 6) continue;
      CHECK(std::binary_search(oracle.begin(), oracle.end(), res.formal_basis[i]));
    }
  }
}

TEST_CASE("sequential enumeration is deterministic") {
  auto tc = make("A -> i\ni + B -> j\nj -> C + k\nk -> D\n");
  auto a = enumerate_signatures(tc.crn, 3);
  auto b = enumerate_signatures(tc.crn, 3);
  CHECK(a.signatures == b.signatures);
  REQUIRE(a.witnesses.size() == b.witnesses.size());
  for (std::size_t i = 0; i < a.witnesses.size(); ++i)
    CHECK(a.witnesses[i] == b.witnesses[i]);
}

TEST_CASE("parallel enumeration finds the same signature set and basis") {
  auto tc = make("A <=> i\ni + B <=> j\nj -> C + k\nk <=> D\nC + A <=> m + n\nm + n -> C + C\n");
  auto seq = enumerate_signatures(tc.crn, 4);
  auto par = enumerate_signatures(tc.crn, 4, {}, 4);
  CHECK(same_signature_set(seq, par));

  auto basis_seq = find_basis(tc.crn);
  auto basis_par = find_basis(tc.crn, {}, 4);
  REQUIRE(basis_seq.complete);
  REQUIRE(basis_par.complete);
  CHECK(basis_seq.formal_basis == basis_par.formal_basis);
  // Parallel witnesses may differ from sequential ones but must still be valid.
  for (std::size_t i = 0; i < basis_par.formal_basis.size(); ++i)
    CHECK(net_reaction(tc.crn, basis_par.basis_witnesses[i]) == basis_par.formal_basis[i]);
}

TEST_CASE("memo cap trips as CapExceeded and find_basis reports it") {
  auto tc = make("A -> i\ni -> i + i\ni -> B\n");
  EnumerationCaps caps;
  caps.max_memo = 3;
  CHECK_THROWS_AS((void)enumerate_signatures(tc.crn, 4, caps), CapExceeded);
  try {
    (void)enumerate_signatures(tc.crn, 4, caps);
  } catch (const CapExceeded& e) {
    CHECK(e.cap == "max_memo");
  }

  auto res = find_basis(tc.crn, caps);
  CHECK(!res.complete);
  CHECK(res.reason.find("memo cap") != std::string::npos);
}

TEST_CASE("width cap yields an incomplete result with a partial basis") {
  auto tc = make("A -> i\ni -> i + i\ni -> B\n");
  auto res = find_basis(tc.crn);
  CHECK(!res.complete);
  CHECK(res.reason.find("max_width_bound") != std::string::npos);
  auto basis = res.formal_basis;
  std::sort(basis.begin(), basis.end());
  CHECK(std::binary_search(basis.begin(), basis.end(), rxn(tc, "A -> B")));
}

TEST_CASE("iteration cap yields an incomplete result") {
  auto tc = make("A -> i\ni -> B\n");
  EnumerationCaps caps;
  caps.max_iterations = 1;
  auto res = find_basis(tc.crn, caps);
  CHECK(!res.complete);
  CHECK(res.reason.find("max_iterations") != std::string::npos);
}
