#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "crnv/analysis.hpp"
#include "crnv/enumerate.hpp"
#include "crnv/format.hpp"
#include "crnv/hybrid.hpp"
#include "crnv/parse.hpp"
#include "crnv/pathway.hpp"
#include "crnv/signature.hpp"

namespace crnv::test {

struct TestCrn {
  CrnDocument doc;
  Crn crn;
};

inline TestCrn make(const std::string& text) {
  CrnDocument doc = parse_crn(text);
  Crn crn = compile(doc);
  return TestCrn{std::move(doc), std::move(crn)};
}

inline Multiset state(TestCrn& tc, const std::string& side) {
  return parse_state(side, *tc.doc.universe);
}

inline Reaction rxn(TestCrn& tc, const std::string& text) {
  CrnDocument doc = parse_crn(text, tc.doc.universe);
  if (doc.reactions.size() != 1) throw CrnError("expected a single reaction: " + text);
  return doc.reactions.front().reaction;
}

/// Look a reaction up by its text and return its index in the CRN.
inline std::uint32_t step(TestCrn& tc, const std::string& text) {
  Reaction r = rxn(tc, text);
  for (std::uint32_t i = 0; i < tc.crn.size(); ++i)
    if (tc.crn.reactions()[i] == r) return i;
  throw CrnError("reaction not in CRN: " + text);
}

inline Pathway path(TestCrn& tc, const std::vector<std::string>& reactions) {
  Pathway p;
  for (const auto& r : reactions) p.steps.push_back(step(tc, r));
  return p;
}

/// Call f on every semiformal pathway of length <= max_len (including the
/// empty one), in lexicographic step order.
template <typename F>
void for_each_semiformal_pathway(const Crn& crn, std::size_t max_len, F f) {
  Pathway p;
  auto rec = [&](auto&& self) -> void {
    f(p);
    if (p.size() >= max_len) return;
    for (std::uint32_t r = 0; r < crn.size(); ++r) {
      p.steps.push_back(r);
      if (is_semiformal(crn, p)) self(self);
      p.steps.pop_back();
    }
  };
  rec(rec);
}

/// Direct turning-point scan per the definition; p must be formal.
inline bool has_turning_point(const Crn& crn, const Pathway& p) {
  auto states = states_along(crn, p);
  const Multiset& initial = states.front();
  const Multiset& fin = states.back();
  const std::size_t k = p.size();
  for (std::size_t j = 1; j <= k; ++j) {
    bool ok = true;
    for (std::size_t i = 0; i < j && ok; ++i)
      ok = crn.formal_part(states[i]).subset_of(initial);
    for (std::size_t i = j; i <= k && ok; ++i)
      ok = crn.formal_part(states[i]).subset_of(fin);
    if (!ok) continue;
    const Reaction& rj = crn.reactions()[p.steps[j - 1]];
    if (crn.formal_part(states[j - 1].minus_exact(rj.reactants)).empty()) return true;
  }
  return false;
}

struct RandomCrnConfig {
  unsigned max_formal = 4;
  unsigned max_intermediate = 3;
  unsigned max_reactions = 6;
  unsigned max_side = 2;  // branching factor bound
};

/// Build a random CRN through the parser so species naming stays canonical.
inline TestCrn random_crn(std::mt19937& rng, const RandomCrnConfig& cfg) {
  static const char* formal_names[] = {"A", "B", "C", "D", "E"};
  static const char* inter_names[] = {"i", "j", "k"};
  auto pick = [&](unsigned bound) { return std::uniform_int_distribution<unsigned>(0, bound)(rng); };

  unsigned nf = 1 + pick(cfg.max_formal - 1);
  unsigned ni = cfg.max_intermediate == 0 ? 0 : pick(cfg.max_intermediate);
  std::vector<std::string> pool;
  for (unsigned i = 0; i < nf; ++i) pool.push_back(formal_names[i]);
  for (unsigned i = 0; i < ni; ++i) pool.push_back(inter_names[i]);

  auto side = [&]() {
    unsigned n = pick(cfg.max_side);
    std::vector<std::string> out;
    for (unsigned i = 0; i < n; ++i) pool.size() ? out.push_back(pool[pick(pool.size() - 1)]) : void();
    return out;
  };
  auto side_text = [&](const std::vector<std::string>& s) {
    if (s.empty()) return std::string("0");
    std::string t;
    for (std::size_t i = 0; i < s.size(); ++i) t += (i ? " + " : "") + s[i];
    return t;
  };

  unsigned nr = 1 + pick(cfg.max_reactions - 1);
  std::string text;
  std::vector<std::string> lines;
  for (unsigned tries = 0; tries < 200 && lines.size() < nr; ++tries) {
    auto lhs = side();
    auto rhs = side();
    auto ls = side_text(lhs), rs = side_text(rhs);
    // reject trivial (compare as multisets)
    std::multiset<std::string> lm(lhs.begin(), lhs.end()), rm(rhs.begin(), rhs.end());
    if (lm == rm) continue;
    std::string line = ls + " -> " + rs;
    bool dup = false;
    for (const auto& l : lines) dup = dup || l == line;
    if (!dup) lines.push_back(line);
  }
  if (lines.empty()) lines.push_back("A -> B");
  for (const auto& l : lines) text += l + "\n";
  return make(text);
}

inline std::vector<Reaction> sorted_nontrivial(std::vector<Reaction> v) {
  std::erase_if(v, [](const Reaction& r) { return r.trivial(); });
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace crnv::test
