#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "crnv/analysis.hpp"
#include "crnv/enumerate.hpp"
#include "crnv/format.hpp"
#include "crnv/hybrid.hpp"
#include "crnv/parse.hpp"

namespace crnv::cli {

namespace {

using nlohmann::json;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInconclusive = 2;
constexpr int kUsage = 3;

struct Options {
  std::uint32_t max_width = 12;
  std::uint32_t max_iter = 20;
  std::size_t max_memo = 1'000'000;
  std::uint32_t depth_cap = 32;
  unsigned jobs = 1;
  bool json_output = false;
  bool witness = false;
  bool hybrid = false;
  bool search_v = false;

  EnumerationCaps enumeration_caps() const {
    return EnumerationCaps{max_width, max_iter, max_memo};
  }
  HybridCaps hybrid_caps() const { return HybridCaps{enumeration_caps(), depth_cap, 256}; }
};

int exit_code(Status s) {
  switch (s) {
    case Status::pass: return kPass;
    case Status::fail: return kFail;
    case Status::inconclusive: return kInconclusive;
  }
  return kUsage;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CrnError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json caps_json(const Options& opt) {
  return json{{"max_width_bound", opt.max_width},
              {"max_iterations", opt.max_iter},
              {"max_memo", opt.max_memo},
              {"depth_cap", opt.depth_cap}};
}

json reactions_json(const SpeciesUniverse& uni, const std::vector<Reaction>& rs) {
  json arr = json::array();
  for (const auto& r : rs) arr.push_back(format_reaction(uni, r));
  return arr;
}

json basis_json(const SpeciesUniverse& uni, const BasisResult& basis) {
  return json{{"nontrivial", reactions_json(uni, basis.nontrivial_basis())},
              {"trivial", reactions_json(uni, basis.trivial_basis())},
              {"complete", basis.complete}};
}

json witnesses_json(const Crn& crn, const BasisResult& basis) {
  json arr = json::array();
  for (std::size_t i = 0; i < basis.formal_basis.size(); ++i) {
    json steps = json::array();
    for (auto idx : basis.basis_witnesses[i].steps)
      steps.push_back(format_reaction(*crn.universe(), crn.reactions()[idx]));
    arr.push_back(json{{"reaction", format_reaction(*crn.universe(), basis.formal_basis[i])},
                       {"pathway", steps}});
  }
  return arr;
}

json verdict_json(const SpeciesUniverse& uni, const Verdict& v) {
  json j{{"status", status_name(v.status)}, {"reason", v.reason}};
  j["counterexample"] =
      v.counterexample ? reactions_json(uni, *v.counterexample) : json::array();
  if (v.detail) {
    j["detail"] = json{{"kind", v.detail->kind},
                       {"reactions", reactions_json(uni, v.detail->reactions)},
                       {"note", v.detail->note}};
  }
  return j;
}

void print_reactions(std::ostream& out, const SpeciesUniverse& uni,
                     const std::vector<Reaction>& rs) {
  for (const auto& r : rs) out << "  " << format_reaction(uni, r) << "\n";
}

void print_verdict_extras(std::ostream& out, const SpeciesUniverse& uni, const Verdict& v) {
  if (v.counterexample && !v.counterexample->empty())
    out << "  counterexample: " << format_reactions(uni, *v.counterexample) << "\n";
  if (v.detail) {
    if (!v.detail->reactions.empty()) {
      out << "  offending reactions:\n";
      print_reactions(out, uni, v.detail->reactions);
    }
    if (!v.detail->note.empty()) out << "  note: " << v.detail->note << "\n";
  }
}

void print_basis_block(std::ostream& out, const Crn& crn, const BasisResult& basis,
                       const Options& opt, const char* heading) {
  const auto& uni = *crn.universe();
  auto nontrivial = basis.nontrivial_basis();
  auto trivial = basis.trivial_basis();
  out << heading << " (" << nontrivial.size() << " nontrivial, " << trivial.size()
      << " trivial" << (basis.complete ? "" : "; incomplete") << "):\n";
  print_reactions(out, uni, nontrivial);
  for (const auto& r : trivial) out << "  " << format_reaction(uni, r) << "  [trivial]\n";
  if (opt.witness) {
    for (std::size_t i = 0; i < basis.formal_basis.size(); ++i) {
      out << "  witness for " << format_reaction(uni, basis.formal_basis[i]) << ": "
          << format_pathway(crn, basis.basis_witnesses[i]) << "\n";
    }
  }
}

struct LoadedCrn {
  CrnDocument doc;
  std::optional<Crn> crn;
};

LoadedCrn load(const std::string& path, std::shared_ptr<SpeciesUniverse> universe) {
  LoadedCrn lc;
  lc.doc = parse_crn(read_file(path), std::move(universe));
  lc.crn = compile(lc.doc);
  return lc;
}

int finish(const Options& opt, std::ostream& out, const json& report, Status status,
           const std::string& text) {
  if (opt.json_output)
    out << report.dump(2) << "\n";
  else
    out << text;
  return exit_code(status);
}

int cmd_basis(const Options& opt, const std::string& file, std::ostream& out) {
  LoadedCrn lc = load(file, nullptr);
  const Crn& crn = *lc.crn;
  const auto& uni = *crn.universe();

  BasisResult basis = find_basis(crn, opt.enumeration_caps(), opt.jobs);
  Verdict tidy = check_strong_tidiness(crn, basis);
  Verdict regular = check_regularity(crn, basis);

  Status status;
  std::string reason;
  if (!basis.complete) {
    status = Status::inconclusive;
    reason = basis.reason;
  } else if (!tidy.pass() || !regular.pass()) {
    Status worst = !tidy.pass() ? tidy.status : regular.status;
    status = worst;
    reason = !tidy.pass() ? "not strongly tidy: " + tidy.reason
                          : "not regular: " + regular.reason;
  } else {
    status = Status::pass;
  }

  const Verdict* deciding = !tidy.pass() ? &tidy : (!regular.pass() ? &regular : nullptr);
  json report{{"command", "basis"},
              {"file", file},
              {"verdict", status_name(status)},
              {"reason", reason},
              {"formal_basis", basis_json(uni, basis)},
              {"w_max", basis.w_max},
              {"w", basis.w},
              {"signature_count", basis.enumeration.signatures.size()},
              {"counterexample", deciding && deciding->counterexample
                                     ? reactions_json(uni, *deciding->counterexample)
                                     : json::array()},
              {"tidiness", verdict_json(uni, tidy)},
              {"regularity", verdict_json(uni, regular)},
              {"caps", caps_json(opt)}};
  if (opt.witness) report["witnesses"] = witnesses_json(crn, basis);

  std::ostringstream text;
  print_basis_block(text, crn, basis, opt, "formal basis");
  text << "strong tidiness: " << status_name(tidy.status) << "\n";
  print_verdict_extras(text, uni, tidy);
  text << "regularity: " << status_name(regular.status) << "\n";
  print_verdict_extras(text, uni, regular);
  text << "w_max = " << basis.w_max << ", w = " << basis.w
       << ", signatures = " << basis.enumeration.signatures.size() << "\n";
  text << "verdict: " << status_name(status);
  if (!reason.empty()) text << " (" << reason << ")";
  text << "\n";
  return finish(opt, out, report, status, text.str());
}

int cmd_verify_pd(const Options& opt, const LoadedCrn& target, const LoadedCrn& impl,
                  std::ostream& out) {
  const Crn& t = *target.crn;
  const Crn& i = *impl.crn;
  const auto& uni = *t.universe();

  PdOutcome pd = pd_compare(t, i, opt.enumeration_caps(), opt.jobs);

  json report{{"command", "verify"},
              {"mode", "pathway-decomposition"},
              {"verdict", status_name(pd.verdict.status)},
              {"reason", pd.verdict.reason},
              {"formal_basis", basis_json(uni, pd.basis_b)},
              {"target_basis", basis_json(uni, pd.basis_a)},
              {"w_max", pd.basis_b.w_max},
              {"signature_count", pd.basis_b.enumeration.signatures.size()},
              {"counterexample", pd.verdict.counterexample
                                     ? reactions_json(uni, *pd.verdict.counterexample)
                                     : json::array()},
              {"tidiness", json{{"target", verdict_json(uni, pd.tidy_a)},
                                {"implementation", verdict_json(uni, pd.tidy_b)}}},
              {"regularity", json{{"target", verdict_json(uni, pd.regular_a)},
                                  {"implementation", verdict_json(uni, pd.regular_b)}}},
              {"caps", caps_json(opt)}};
  if (pd.verdict.detail)
    report["detail"] = json{{"kind", pd.verdict.detail->kind},
                            {"reactions", reactions_json(uni, pd.verdict.detail->reactions)},
                            {"note", pd.verdict.detail->note}};
  if (opt.witness) report["witnesses"] = witnesses_json(i, pd.basis_b);

  std::ostringstream text;
  print_basis_block(text, t, pd.basis_a, opt, "target basis");
  print_basis_block(text, i, pd.basis_b, opt, "implementation basis");
  auto stage = [&](const char* name, const Verdict& v) {
    text << name << ": " << status_name(v.status) << "\n";
    print_verdict_extras(text, uni, v);
  };
  stage("strong tidiness (target)", pd.tidy_a);
  stage("regularity (target)", pd.regular_a);
  stage("strong tidiness (implementation)", pd.tidy_b);
  stage("regularity (implementation)", pd.regular_b);
  if (pd.verdict.detail && pd.verdict.detail->kind == "basis-mismatch") {
    text << "basis mismatch:\n";
    for (const auto& r : pd.verdict.detail->reactions) {
      text << "  " << format_reaction(uni, r);
      if (const Pathway* w = pd.basis_b.witness_for(r))
        text << "  (witness: " << format_pathway(i, *w) << ")";
      else if (const Pathway* w2 = pd.basis_a.witness_for(r))
        text << "  (witness: " << format_pathway(t, *w2) << ")";
      text << "\n";
    }
  }
  text << "verdict: " << status_name(pd.verdict.status);
  if (!pd.verdict.reason.empty()) text << " — " << pd.verdict.reason;
  text << "\n";
  print_verdict_extras(text, uni, pd.verdict);
  return finish(opt, out, report, pd.verdict.status, text.str());
}

int cmd_verify_hybrid(const Options& opt, const LoadedCrn& target, const LoadedCrn& impl,
                      std::ostream& out) {
  const Crn& t = *target.crn;
  const Crn& i = *impl.crn;
  const auto& uni = *t.universe();

  Labeling lab;
  lab.fuels = impl.doc.fuel_decl;
  for (auto id : impl.doc.waste_decl) lab.assignment[id] = std::nullopt;
  for (const auto& [s, tgt] : impl.doc.labels) {
    if (!t.is_member(tgt))
      throw CrnError("label target '" + uni.name(tgt) + "' is not a species of the target CRN");
    lab.assignment[s] = tgt;
  }
  std::vector<SpeciesId> v_extra;
  for (SpeciesId id : i.members()) {
    if (lab.assignment.count(id)) continue;
    bool is_fuel = std::find(lab.fuels.begin(), lab.fuels.end(), id) != lab.fuels.end();
    if (is_fuel || !i.is_formal(id)) continue;
    if (t.is_member(id))
      lab.assignment[id] = id;  // identity labeling by name
    else
      v_extra.push_back(id);
  }

  HybridResult hr;
  if (opt.search_v) {
    hr = hybrid_verify_search(t, i, lab, opt.hybrid_caps());
  } else {
    std::vector<SpeciesId> v = lab.tagged();
    v.insert(v.end(), v_extra.begin(), v_extra.end());
    hr = hybrid_verify(t, i, lab, v, opt.hybrid_caps());
  }

  json vj = json::array();
  for (auto id : hr.v_used) vj.push_back(uni.name(id));
  json report{{"command", "verify"},
              {"mode", "hybrid"},
              {"verdict", status_name(hr.verdict.status)},
              {"reason", hr.verdict.reason},
              {"stage", hr.stage},
              {"v", vj},
              {"warnings", hr.warnings},
              {"counterexample", hr.verdict.counterexample
                                     ? reactions_json(uni, *hr.verdict.counterexample)
                                     : json::array()},
              {"caps", caps_json(opt)}};
  report["formal_basis"] =
      hr.basis ? basis_json(uni, *hr.basis) : json{{"nontrivial", json::array()},
                                                   {"trivial", json::array()}};
  report["w_max"] = hr.basis ? json(hr.basis->w_max) : json(0);
  report["signature_count"] = hr.basis ? json(hr.basis->enumeration.signatures.size()) : json(0);
  if (hr.verdict.detail)
    report["detail"] = json{{"kind", hr.verdict.detail->kind},
                            {"reactions", reactions_json(uni, hr.verdict.detail->reactions)},
                            {"note", hr.verdict.detail->note}};
  if (opt.witness && hr.basis) report["witnesses"] = witnesses_json(i, *hr.basis);

  std::ostringstream text;
  for (const auto& w : hr.warnings) text << "warning: " << w << "\n";
  text << "V = {";
  for (std::size_t k = 0; k < hr.v_used.size(); ++k)
    text << (k ? ", " : "") << uni.name(hr.v_used[k]);
  text << "}\n";
  if (hr.basis) print_basis_block(text, i, *hr.basis, opt, "intermediate basis");
  if (!hr.stage.empty()) text << "deciding stage: " << hr.stage << "\n";
  text << "verdict: " << status_name(hr.verdict.status);
  if (!hr.verdict.reason.empty()) text << " — " << hr.verdict.reason;
  text << "\n";
  print_verdict_extras(text, uni, hr.verdict);
  return finish(opt, out, report, hr.verdict.status, text.str());
}

int cmd_reach(const Options& opt, const std::string& file, const std::string& init,
              std::uint64_t max_size, std::size_t max_states, std::ostream& out) {
  CrnDocument doc = parse_crn(read_file(file));
  Multiset initial = parse_state(init, *doc.universe);
  Crn crn = compile(doc);
  const auto& uni = *crn.universe();

  ReachResult rr = bounded_reachability(crn, initial, max_size, max_states);

  json states = json::array();
  for (const auto& s : rr.states) states.push_back(format_side(uni, s));
  json report{{"command", "reach"},   {"file", file},
              {"init", format_side(uni, initial)}, {"max_state_size", max_size},
              {"max_states", max_states},          {"count", rr.states.size()},
              {"truncated", rr.truncated},         {"states", states}};

  std::ostringstream text;
  text << rr.states.size() << " state(s) reachable from " << format_multiset(uni, initial)
       << " (size cap " << max_size << (rr.truncated ? ", truncated" : "") << "):\n";
  for (const auto& s : rr.states) text << "  " << format_multiset(uni, s) << "\n";
  return finish(opt, out, report, Status::pass, text.str());
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"crnverify: pathway-decomposition verifier for chemical reaction networks"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--max-width", opt.max_width, "width bound cap for the enumeration");
  app.add_option("--max-iter", opt.max_iter, "widening iteration cap");
  app.add_option("--max-memo", opt.max_memo, "memoized signature cap");
  app.add_option("--depth-cap", opt.depth_cap, "trivial-step cap for the bisimulation search");
  app.add_option("--jobs", opt.jobs, "worker threads for the enumeration");
  app.add_flag("--json", opt.json_output, "emit one JSON report on stdout");
  app.add_flag("--witness", opt.witness, "include witness pathways in reports");

  auto* basis_cmd = app.add_subcommand("basis", "compute the formal basis of a CRN file");
  std::string basis_file;
  basis_cmd->add_option("file", basis_file, "input .crn file")->required();

  auto* verify_cmd =
      app.add_subcommand("verify", "verify an implementation CRN against a target CRN");
  std::string target_file, impl_file;
  verify_cmd->add_option("--target", target_file, "target .crn file")->required();
  verify_cmd->add_option("--impl", impl_file, "implementation .crn file")->required();
  verify_cmd->add_flag("--hybrid", opt.hybrid, "use the hybrid bisimulation pipeline");
  verify_cmd->add_flag("--search-v", opt.search_v,
                       "search supersets of the tagged species for a passing V");

  auto* reach_cmd = app.add_subcommand("reach", "bounded reachability from an initial state");
  std::string reach_file, reach_init;
  std::uint64_t reach_max_size = 12;
  std::size_t reach_max_states = 100000;
  reach_cmd->add_option("file", reach_file, "input .crn file")->required();
  reach_cmd->add_option("--init", reach_init, "initial state, e.g. \"2A + B\"")->required();
  reach_cmd->add_option("--max-size", reach_max_size, "largest state explored");
  reach_cmd->add_option("--max-states", reach_max_states, "state-count cap");

  std::vector<char*> argv;
  std::vector<std::string> storage = args;
  std::string prog = "crnverify";
  argv.push_back(prog.data());
  for (auto& a : storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (basis_cmd->parsed()) return cmd_basis(opt, basis_file, out);
    if (verify_cmd->parsed()) {
      auto universe = std::make_shared<SpeciesUniverse>();
      LoadedCrn target = load(target_file, universe);
      LoadedCrn impl = load(impl_file, universe);
      if (!opt.hybrid) {
        if (target.doc.has_hybrid_directives() || impl.doc.has_hybrid_directives()) {
          err << "error: fuel/waste/label directives need the hybrid pipeline; "
                 "rerun with --hybrid\n";
          return kUsage;
        }
        // The two files must agree on the role of shared species.
        for (SpeciesId id = 0; id < universe->size(); ++id) {
          if (target.crn->is_member(id) && impl.crn->is_member(id) &&
              target.crn->is_formal(id) != impl.crn->is_formal(id)) {
            err << "error: species '" << universe->name(id)
                << "' is formal in one file and intermediate in the other\n";
            return kUsage;
          }
        }
        return cmd_verify_pd(opt, target, impl, out);
      }
      return cmd_verify_hybrid(opt, target, impl, out);
    }
    if (reach_cmd->parsed())
      return cmd_reach(opt, reach_file, reach_init, reach_max_size, reach_max_states, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const CrnError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  err << "error: no command\n";
  return kUsage;
}

}  // namespace crnv::cli
