#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crnv/crn.hpp"

namespace crnv {

struct SourcePos {
  std::size_t line = 0;    // 1-based
  std::size_t column = 0;  // 1-based
};

class ParseError : public CrnError {
public:
  ParseError(const std::string& what, SourcePos pos)
      : CrnError("line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column) +
                 ": " + what),
        pos(pos) {}
  SourcePos pos;
};

struct ParsedReaction {
  Reaction reaction;
  std::size_t line = 0;
  bool from_reversible = false;

  bool operator==(const ParsedReaction& o) const { return reaction == o.reaction; }
};

/// The parsed content of a .crn file: reactions in statement order
/// (reversible statements expand to two reactions) plus the species
/// declarations. Declarations are kept as id lists; kinds are resolved
/// when the document is compiled to a Crn.
struct CrnDocument {
  std::shared_ptr<SpeciesUniverse> universe;
  std::vector<ParsedReaction> reactions;
  std::vector<SpeciesId> formal_decl;
  std::vector<SpeciesId> fuel_decl;
  std::vector<SpeciesId> waste_decl;
  std::vector<SpeciesId> intermediate_decl;
  std::vector<std::pair<SpeciesId, SpeciesId>> labels;  // implementation -> target

  bool has_hybrid_directives() const {
    return !fuel_decl.empty() || !waste_decl.empty() || !labels.empty();
  }
};

/// Parse .crn text. One statement per line: a reaction ("A + 2B -> C",
/// "X <=> Y", "0" or an empty side denotes the empty state), or a directive
/// ("formal: A B", "fuel: g", "waste: W", "intermediate: i",
/// "label: A1 A2 = A"). '#' starts a comment. Errors carry line/column.
/// Passing a universe lets several documents share one species id space.
CrnDocument parse_crn(std::string_view text, std::shared_ptr<SpeciesUniverse> universe = nullptr);

/// Render a document back to .crn text; the output reparses to an equal
/// document (same reactions and declarations over the same names).
std::string serialize(const CrnDocument& doc);

/// Resolve species kinds and build the CRN. Declarations win; undeclared
/// species default to formal when their name starts with an uppercase
/// letter and to intermediate otherwise. Wastes and labeled species play
/// the formal role until retagged by the hybrid pipeline.
Crn compile(const CrnDocument& doc);

/// Parse a state written in reaction-side syntax, e.g. "2A + B" ("0" = empty).
Multiset parse_state(std::string_view text, SpeciesUniverse& universe);

/// Structural equality over names (ignores universe identity and positions).
bool documents_equal(const CrnDocument& a, const CrnDocument& b);

}  // namespace crnv
