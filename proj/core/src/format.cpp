#include "crnv/format.hpp"

#include <sstream>

namespace crnv {

std::string format_multiset(const SpeciesUniverse& uni, const Multiset& m) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  for (const auto& [id, n] : m.entries()) {
    if (!first) out << ", ";
    first = false;
    if (n > 1) out << n;
    out << uni.name(id);
  }
  out << '}';
  return out.str();
}

std::string format_side(const SpeciesUniverse& uni, const Multiset& m) {
  if (m.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [id, n] : m.entries()) {
    if (!first) out << " + ";
    first = false;
    if (n > 1) out << n;
    out << uni.name(id);
  }
  return out.str();
}

std::string format_reaction(const SpeciesUniverse& uni, const Reaction& r) {
  return format_side(uni, r.reactants) + " -> " + format_side(uni, r.products);
}

std::string format_pathway(const Crn& crn, const Pathway& p) {
  std::ostringstream out;
  bool first = true;
  for (auto idx : p.steps) {
    if (!first) out << " ; ";
    first = false;
    out << format_reaction(*crn.universe(), crn.reactions()[idx]);
  }
  return out.str();
}

std::string format_reactions(const SpeciesUniverse& uni, const std::vector<Reaction>& rs) {
  std::ostringstream out;
  bool first = true;
  for (const auto& r : rs) {
    if (!first) out << " ; ";
    first = false;
    out << format_reaction(uni, r);
  }
  return out.str();
}

}  // namespace crnv
