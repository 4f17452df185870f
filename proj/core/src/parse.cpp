#include "crnv/parse.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "crnv/format.hpp"

namespace crnv {

namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

struct LineScanner {
  std::string_view text;
  std::size_t line;
  std::size_t pos = 0;

  SourcePos here() const { return SourcePos{line, pos + 1}; }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() const { return pos < text.size() ? text[pos] : '\0'; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, here()); }

  std::string name() {
    skip_ws();
    if (pos >= text.size() || !is_name_start(text[pos]))
      fail("expected a species name");
    std::size_t start = pos;
    while (pos < text.size() && is_name_char(text[pos])) ++pos;
    return std::string(text.substr(start, pos - start));
  }

  // One reaction-side term: "0", "A", or "2A" / "2 A".
  void term(Multiset& side, SpeciesUniverse& universe, bool sole_term) {
    skip_ws();
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      std::size_t start = pos;
      std::uint64_t coeff = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        coeff = coeff * 10 + static_cast<std::uint64_t>(text[pos] - '0');
        if (coeff > 1'000'000) throw ParseError("coefficient is too large", SourcePos{line, start + 1});
        ++pos;
      }
      skip_ws();
      if (pos >= text.size() || !is_name_start(text[pos])) {
        if (coeff == 0 && sole_term) return;  // bare "0": the empty state
        throw ParseError("expected a species name after the coefficient", here());
      }
      if (coeff == 0) throw ParseError("zero coefficient is not allowed", SourcePos{line, start + 1});
      side.add(universe.intern(name()), static_cast<Count>(coeff));
      return;
    }
    side.add(universe.intern(name()), 1);
  }

  Multiset side(SpeciesUniverse& universe) {
    Multiset out;
    skip_ws();
    if (pos >= text.size()) return out;  // empty side
    bool sole = true;
    {
      // look ahead for '+': a side with '+' cannot use the bare "0" form
      std::size_t p = pos;
      int depth = 0;
      (void)depth;
      while (p < text.size()) {
        if (text[p] == '+') { sole = false; break; }
        ++p;
      }
    }
    term(out, universe, sole);
    while (true) {
      skip_ws();
      if (pos < text.size() && text[pos] == '+') {
        ++pos;
        term(out, universe, false);
        continue;
      }
      break;
    }
    skip_ws();
    if (pos < text.size()) fail("unexpected trailing text");
    return out;
  }
};

std::vector<std::string> directive_names(LineScanner& sc, bool allow_equals) {
  std::vector<std::string> out;
  while (!sc.done()) {
    if (sc.peek() == ',') { ++sc.pos; continue; }
    if (allow_equals && sc.peek() == '=') break;
    out.push_back(sc.name());
  }
  return out;
}

enum class Kind { formal, fuel, waste, intermediate };

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::formal: return "formal";
    case Kind::fuel: return "fuel";
    case Kind::waste: return "waste";
    case Kind::intermediate: return "intermediate";
  }
  return "?";
}

}  // namespace

CrnDocument parse_crn(std::string_view text, std::shared_ptr<SpeciesUniverse> universe) {
  CrnDocument doc;
  doc.universe = universe ? std::move(universe) : std::make_shared<SpeciesUniverse>();
  SpeciesUniverse& uni = *doc.universe;

  std::map<SpeciesId, std::pair<Kind, std::size_t>> declared;  // kind + line
  auto declare = [&](SpeciesId id, Kind k, std::size_t line) {
    auto [it, fresh] = declared.emplace(id, std::make_pair(k, line));
    if (!fresh && it->second.first != k)
      throw ParseError("species '" + uni.name(id) + "' already declared " +
                           kind_name(it->second.first) + " on line " +
                           std::to_string(it->second.second),
                       SourcePos{line, 1});
  };
  std::map<SpeciesId, std::pair<SpeciesId, std::size_t>> labeled;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    std::string_view raw =
        text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    start = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;

    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    LineScanner sc{raw, line_no};
    if (sc.done()) continue;

    // A ':' anywhere marks a directive line (species names cannot contain ':').
    auto colon = raw.find(':');
    if (colon != std::string_view::npos) {
      LineScanner head{raw.substr(0, colon), line_no};
      std::string keyword;
      if (!head.done() && is_name_start(head.peek())) keyword = head.name();
      if (keyword.empty() || !head.done())
        throw ParseError("malformed directive", SourcePos{line_no, 1});
      LineScanner body{raw, line_no};
      body.pos = colon + 1;
      if (keyword == "label") {
        auto impls = directive_names(body, true);
        if (body.done() || body.peek() != '=')
          body.fail("label directive needs '= <target species>'");
        ++body.pos;
        std::string target = body.name();
        if (!body.done()) body.fail("unexpected trailing text");
        if (impls.empty())
          throw ParseError("label directive names no species", SourcePos{line_no, 1});
        SpeciesId tid = uni.intern(target);
        for (const auto& n : impls) {
          SpeciesId id = uni.intern(n);
          auto [it, fresh] = labeled.emplace(id, std::make_pair(tid, line_no));
          if (!fresh && it->second.first != tid)
            throw ParseError("species '" + n + "' already labeled on line " +
                                 std::to_string(it->second.second),
                             SourcePos{line_no, 1});
          doc.labels.emplace_back(id, tid);
        }
      } else {
        Kind kind;
        if (keyword == "formal") kind = Kind::formal;
        else if (keyword == "fuel") kind = Kind::fuel;
        else if (keyword == "waste") kind = Kind::waste;
        else if (keyword == "intermediate") kind = Kind::intermediate;
        else throw ParseError("unknown directive '" + keyword + "'", SourcePos{line_no, 1});
        auto names = directive_names(body, false);
        if (names.empty())
          throw ParseError("directive declares no species", SourcePos{line_no, 1});
        for (const auto& n : names) {
          SpeciesId id = uni.intern(n);
          declare(id, kind, line_no);
          switch (kind) {
            case Kind::formal: doc.formal_decl.push_back(id); break;
            case Kind::fuel: doc.fuel_decl.push_back(id); break;
            case Kind::waste: doc.waste_decl.push_back(id); break;
            case Kind::intermediate: doc.intermediate_decl.push_back(id); break;
          }
        }
      }
      continue;
    }

    // Reaction statement.
    bool reversible = false;
    std::size_t arrow = raw.find("<=>");
    std::size_t arrow_len = 3;
    if (arrow != std::string_view::npos) {
      reversible = true;
    } else {
      arrow = raw.find("->");
      arrow_len = 2;
    }
    if (arrow == std::string_view::npos)
      throw ParseError("expected a reaction arrow '->' or '<=>'", SourcePos{line_no, 1});
    LineScanner lhs{raw.substr(0, arrow), line_no};
    LineScanner rhs{raw, line_no};
    rhs.pos = arrow + arrow_len;
    Multiset reactants = lhs.side(uni);
    Multiset rest = rhs.side(uni);
    if (reactants == rest)
      throw ParseError("trivial reaction: reactants equal products", SourcePos{line_no, 1});
    doc.reactions.push_back({Reaction{reactants, rest}, line_no, reversible});
    if (reversible) doc.reactions.push_back({Reaction{rest, reactants}, line_no, true});
  }

  // Labels imply the species is a tagged formal species; a fuel or
  // intermediate declaration contradicts that.
  for (const auto& [id, tl] : labeled) {
    auto it = declared.find(id);
    if (it != declared.end() &&
        (it->second.first == Kind::fuel || it->second.first == Kind::intermediate ||
         it->second.first == Kind::waste)) {
      // Anchor the error at whichever declaration came later in the file.
      if (it->second.second >= tl.second)
        throw ParseError("species '" + uni.name(id) + "' declared " +
                             kind_name(it->second.first) + " but labeled on line " +
                             std::to_string(tl.second),
                         SourcePos{it->second.second, 1});
      throw ParseError("species '" + uni.name(id) + "' is labeled but declared " +
                           kind_name(it->second.first) + " on line " +
                           std::to_string(it->second.second),
                       SourcePos{tl.second, 1});
    }
  }
  return doc;
}

std::string serialize(const CrnDocument& doc) {
  const SpeciesUniverse& uni = *doc.universe;
  std::ostringstream out;
  auto decl = [&](const char* kw, const std::vector<SpeciesId>& ids) {
    if (ids.empty()) return;
    out << kw << ":";
    for (auto id : ids) out << ' ' << uni.name(id);
    out << '\n';
  };
  decl("formal", doc.formal_decl);
  decl("fuel", doc.fuel_decl);
  decl("waste", doc.waste_decl);
  decl("intermediate", doc.intermediate_decl);
  for (const auto& [impl, target] : doc.labels)
    out << "label: " << uni.name(impl) << " = " << uni.name(target) << '\n';
  for (const auto& pr : doc.reactions)
    out << format_reaction(uni, pr.reaction) << '\n';
  return out.str();
}

Crn compile(const CrnDocument& doc) {
  const auto& uni = *doc.universe;
  std::vector<bool> formal(uni.size(), false);
  std::vector<bool> decided(uni.size(), false);
  auto set_kind = [&](SpeciesId id, bool f) {
    formal[id] = f;
    decided[id] = true;
  };
  for (auto id : doc.formal_decl) set_kind(id, true);
  for (auto id : doc.waste_decl) set_kind(id, true);
  for (const auto& [impl, target] : doc.labels) {
    set_kind(impl, true);
    (void)target;
  }
  for (auto id : doc.fuel_decl) set_kind(id, false);
  for (auto id : doc.intermediate_decl) set_kind(id, false);
  for (SpeciesId id = 0; id < uni.size(); ++id) {
    if (decided[id]) continue;
    formal[id] = std::isupper(static_cast<unsigned char>(uni.name(id)[0])) != 0;
  }

  std::vector<Reaction> reactions;
  reactions.reserve(doc.reactions.size());
  for (const auto& pr : doc.reactions) reactions.push_back(pr.reaction);

  std::vector<SpeciesId> extra;
  auto note = [&](const std::vector<SpeciesId>& ids) {
    extra.insert(extra.end(), ids.begin(), ids.end());
  };
  note(doc.formal_decl);
  note(doc.fuel_decl);
  note(doc.waste_decl);
  note(doc.intermediate_decl);
  for (const auto& [impl, target] : doc.labels) {
    extra.push_back(impl);
    (void)target;
  }
  return Crn(doc.universe, std::move(formal), std::move(reactions), extra);
}

Multiset parse_state(std::string_view text, SpeciesUniverse& universe) {
  LineScanner sc{text, 1};
  return sc.side(universe);
}

bool documents_equal(const CrnDocument& a, const CrnDocument& b) {
  auto names = [](const SpeciesUniverse& u, const std::vector<SpeciesId>& ids) {
    std::multiset<std::string> out;
    for (auto id : ids) out.insert(u.name(id));
    return out;
  };
  auto side_names = [](const SpeciesUniverse& u, const Multiset& m) {
    std::map<std::string, Count> out;
    for (const auto& [id, n] : m.entries()) out[u.name(id)] = n;
    return out;
  };
  if (a.reactions.size() != b.reactions.size()) return false;
  for (std::size_t i = 0; i < a.reactions.size(); ++i) {
    if (side_names(*a.universe, a.reactions[i].reaction.reactants) !=
        side_names(*b.universe, b.reactions[i].reaction.reactants))
      return false;
    if (side_names(*a.universe, a.reactions[i].reaction.products) !=
        side_names(*b.universe, b.reactions[i].reaction.products))
      return false;
  }
  if (names(*a.universe, a.formal_decl) != names(*b.universe, b.formal_decl)) return false;
  if (names(*a.universe, a.fuel_decl) != names(*b.universe, b.fuel_decl)) return false;
  if (names(*a.universe, a.waste_decl) != names(*b.universe, b.waste_decl)) return false;
  if (names(*a.universe, a.intermediate_decl) != names(*b.universe, b.intermediate_decl))
    return false;
  std::multiset<std::pair<std::string, std::string>> la, lb;
  for (const auto& [i, t] : a.labels) la.emplace(a.universe->name(i), a.universe->name(t));
  for (const auto& [i, t] : b.labels) lb.emplace(b.universe->name(i), b.universe->name(t));
  return la == lb;
}

}  // namespace crnv
