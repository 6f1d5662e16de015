// evtforge: translate Event-B developments into structured EVT specifications,
// enumerate their models, and check refinement declarations.
//
// Exit codes: 0 success, 1 parse or input error, 2 semantic error,
// 3 a refinement fails, 4 state-space ceiling exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "evtforge/workspace.h"

using namespace evtforge;
using json = nlohmann::ordered_json;

namespace {

struct RunConfig {
  std::vector<std::string> inputs;
  std::string format = "text";
  std::int64_t bound = 3;
  std::vector<std::string> carriers;
  std::vector<std::string> pins;
  std::uint64_t ceiling = 1ull << 20;
  bool no_elide = false;
  std::string out;
  std::string event;
  bool list = false;
  bool status_warn = false;
  std::string only;
};

std::pair<std::string, std::string> split_eq(const std::string& s, const char* what) {
  auto i = s.find('=');
  if (i == std::string::npos || i == 0 || i + 1 == s.size())
    throw CLI::ValidationError(what, "expected NAME=VALUE, got '" + s + "'");
  return {s.substr(0, i), s.substr(i + 1)};
}

Bounds bounds_of(const RunConfig& cfg) {
  Bounds b;
  b.bound = cfg.bound;
  b.ceiling = cfg.ceiling;
  for (const auto& c : cfg.carriers) {
    auto [sort, n] = split_eq(c, "--carrier");
    try {
      b.carriers[sort] = std::stoll(n);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--carrier", "carrier size must be an integer: " + c);
    }
    if (b.carriers[sort] < 1) throw CLI::ValidationError("--carrier", "carrier size must be ≥ 1: " + c);
  }
  for (const auto& p : cfg.pins) {
    auto [name, v] = split_eq(p, "--pin");
    b.pins[name] = v;
  }
  return b;
}

std::vector<std::filesystem::path> paths(const RunConfig& cfg) {
  return {cfg.inputs.begin(), cfg.inputs.end()};
}

std::string show_values(const EvtSignature& sig, const State& s) {
  auto names = sig.var_names();
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + show_value(sig.vars.at(names[i]), s[i]);
  return s.size() == 1 ? out : "(" + out + ")";
}

std::string show_pair(const EvtSignature& sig, const Transition& t) {
  return "(" + show_values(sig, t.first) + "," + show_values(sig, t.second) + ")";
}

std::string cmd_translate(const RunConfig& cfg) {
  Workspace w = load_files(paths(cfg));
  for (const auto& d : w.translation.diagnostics) std::cerr << "warning: " << d << "\n";
  PrintOptions po{!cfg.no_elide};
  std::vector<std::string> names = w.eb_specs.empty() ? w.lib.order : w.eb_specs;
  if (!cfg.only.empty()) {
    if (!w.lib.has(cfg.only)) throw SemanticError("unknown spec " + cfg.only);
    names = {cfg.only};
  }
  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& n : names) {
      const SpecDef& d = w.lib.get(n);
      ModelClassRep rep = mod_of(d.spec, w.lib);
      json sens = json::array();
      for (const auto& s : rep.sentences) sens.push_back(to_string(s));
      arr.push_back({{"name", n}, {"text", pretty_print(d, po)}, {"signature", describe(rep.sig)}, {"sentences", sens}});
    }
    return arr.dump(2) + "\n";
  }
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) out += (i ? "\n" : "") + pretty_print(w.lib.get(names[i]), po);
  return out;
}

std::string cmd_models(const RunConfig& cfg) {
  Workspace w = load_files(paths(cfg));
  if (w.lib.order.empty()) throw SemanticError("no specifications to enumerate");
  std::string name = cfg.only.empty() ? w.lib.order.back() : cfg.only;
  ModelClassRep rep = mod_of(w.lib.get(name).spec, w.lib);
  Bounds b = bounds_of(cfg);
  EnumOptions opts;
  opts.ceiling = b.ceiling;
  if (!cfg.event.empty()) {
    if (!rep.sig.events.count(cfg.event)) throw SemanticError(name + " has no event " + cfg.event);
    opts.events = std::set<std::string>{};
    if (cfg.event != kInit) opts.events->insert(cfg.event);
    opts.with_init = cfg.event == kInit;
  }
  auto algebras = rep.admissible_algebras(b);
  std::ostringstream os;
  json arr = json::array();
  auto vars = rep.sig.var_names();
  std::string var_list;
  for (std::size_t i = 0; i < vars.size(); ++i) var_list += (i ? "," : "") + vars[i];
  if (cfg.format != "json")
    os << name << ": " << algebras.size() << " admissible algebras, states (" << var_list << ")\n";
  for (const auto& a : algebras) {
    MaximalModel m = rep.maxima(a, opts);
    std::string at = a.describe();
    json ja{{"algebra", at}};
    if (cfg.format != "json") os << "algebra " << (at.empty() ? "(no symbols)" : at) << "\n";
    if (opts.with_init) {
      if (cfg.format == "json") {
        ja["init"] = m.init.size();
        if (cfg.list) {
          json ls = json::array();
          for (const auto& s : m.init) ls.push_back(show_values(rep.sig, s));
          ja["init_states"] = ls;
        }
      } else {
        os << "  " << kInit << ": " << m.init.size() << " states\n";
        if (cfg.list)
          for (const auto& s : m.init) os << "    " << show_values(rep.sig, s) << "\n";
      }
    }
    for (const auto& [e, rel] : m.rel) {
      if (cfg.format == "json") {
        ja["events"][e] = rel.size();
        if (cfg.list) {
          json ls = json::array();
          for (const auto& t : rel) ls.push_back(show_pair(rep.sig, t));
          ja["pairs"][e] = ls;
        }
      } else {
        os << "  " << e << ": " << rel.size() << " pairs\n";
        if (cfg.list)
          for (const auto& t : rel) os << "    " << show_pair(rep.sig, t) << "\n";
      }
    }
    arr.push_back(ja);
  }
  if (cfg.format == "json") return json{{"spec", name}, {"vars", vars}, {"algebras", arr}}.dump(2) + "\n";
  return os.str();
}

std::string cmd_refine(const RunConfig& cfg, bool& all_hold) {
  Workspace w = load_files(paths(cfg));
  Bounds b = bounds_of(cfg);
  StatusRule rule = cfg.status_warn ? StatusRule::Warn : StatusRule::Enforce;
  std::vector<RefinementDecl> decls;
  for (const auto& d : w.decls)
    if (cfg.only.empty() || d.name == cfg.only) decls.push_back(d);
  if (decls.empty()) throw SemanticError(cfg.only.empty() ? "no refinement declarations" : "unknown refinement " + cfg.only);
  std::ostringstream os;
  json arr = json::array();
  all_hold = true;
  for (const auto& d : decls) {
    RefinementVerdict v = check_refinement(d, w.lib, b, rule);
    all_hold = all_hold && v.holds;
    if (cfg.format == "json") {
      json j = json::parse(v.to_json());
      j["name"] = d.name;
      arr.push_back(j);
    } else {
      os << d.name << " (" << d.abstract << " ⊑ " << d.concrete << "): " << v.to_text();
    }
  }
  return cfg.format == "json" ? arr.dump(2) + "\n" : os.str();
}

std::string cmd_pushout(const RunConfig& cfg) {
  Workspace w = load_files(paths(cfg));
  if (w.morphisms.size() != 2)
    throw SemanticError("pushout needs exactly two morphism declarations, found " + std::to_string(w.morphisms.size()));
  const auto& d1 = w.morphisms[0];
  const auto& d2 = w.morphisms[1];
  if (d1.abstract != d2.abstract) throw SemanticError("morphisms " + d1.name + " and " + d2.name + " have different sources");
  StatusRule rule = cfg.status_warn ? StatusRule::Warn : StatusRule::Enforce;
  EvtSignature base = sig_of(w.lib.get(d1.abstract).spec, w.lib);
  EvtSignature s1 = sig_of(w.lib.get(d1.concrete).spec, w.lib);
  EvtSignature s2 = sig_of(w.lib.get(d2.concrete).spec, w.lib);
  EvtMorphism m1 = decl_morphism(d1, base, s1);
  EvtMorphism m2 = decl_morphism(d2, base, s2);
  for (const auto& [d, m, t] : {std::tuple{&d1, &m1, &s1}, std::tuple{&d2, &m2, &s2}})
    for (const auto& warn : validate(*m, base, *t, rule)) std::cerr << "warning: " << d->name << ": " << warn << "\n";
  EvtPushout po = evt_pushout(base, s1, s2, m1, m2);
  if (cfg.format == "json")
    return json{{"signature", describe(po.sig)}, {"inj1", describe(po.inj1)}, {"inj2", describe(po.inj2)}}.dump(2) +
           "\n";
  std::ostringstream os;
  os << "pushout " << describe(po.sig) << "\n";
  os << "inj1 " << d1.concrete << ": " << describe(po.inj1) << "\n";
  os << "inj2 " << d2.concrete << ": " << describe(po.inj2) << "\n";
  return os.str();
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("inputs", cfg.inputs, "Input files (.eb, .buc, .bum, .spec, .ref)")->required()->check(CLI::ExistingFile);
  sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  sub->add_option("--out", cfg.out, "Write output to this file");
  sub->add_flag("--status-warn", cfg.status_warn, "Report status-rule violations as warnings");
}

void add_bounds(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--bound", cfg.bound, "Integer bound B (Int is -B..B)")->check(CLI::PositiveNumber);
  sub->add_option("--carrier", cfg.carriers, "Carrier size for a user sort, SORT=N");
  sub->add_option("--pin", cfg.pins, "Fix a constant, NAME=VALUE");
  sub->add_option("--ceiling", cfg.ceiling, "Maximum materialised states or pairs per event")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  if (const char* e = std::getenv("EVTFORGE_BOUND")) {
    try {
      cfg.bound = std::stoll(e);
    } catch (const std::exception&) {
      std::cerr << "error: EVTFORGE_BOUND is not an integer\n";
      return 1;
    }
  }
  CLI::App app{"Event-B to EVT specification toolchain"};
  app.require_subcommand(1);

  auto* tr = app.add_subcommand("translate", "Print the structured specification of every unit");
  add_common(tr, cfg);
  tr->add_flag("--no-elide", cfg.no_elide, "Show identity imports");
  tr->add_option("--only", cfg.only, "Print one spec");

  auto* md = app.add_subcommand("models", "Enumerate admissible algebras and maximal relations");
  add_common(md, cfg);
  add_bounds(md, cfg);
  md->add_option("--spec,--only", cfg.only, "Spec to enumerate (default: the last one loaded)");
  md->add_option("--event", cfg.event, "Only this event");
  md->add_flag("--list", cfg.list, "List states and pairs");

  auto* rf = app.add_subcommand("refine", "Check refinement declarations");
  add_common(rf, cfg);
  add_bounds(rf, cfg);
  rf->add_option("--only", cfg.only, "Check one declaration");

  auto* po = app.add_subcommand("pushout", "Pushout of two morphisms with a common source");
  add_common(po, cfg);

  CLI11_PARSE(app, argc, argv);
  if (cfg.bound < 1) {
    std::cerr << "error: bound must be ≥ 1\n";
    return 1;
  }

  int code = 0;
  std::string out;
  try {
    if (tr->parsed()) {
      out = cmd_translate(cfg);
    } else if (md->parsed()) {
      out = cmd_models(cfg);
    } else if (rf->parsed()) {
      bool holds = true;
      out = cmd_refine(cfg, holds);
      code = holds ? 0 : 3;
    } else {
      out = cmd_pushout(cfg);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const CeilingError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const SemanticError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const StructuralError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  if (cfg.out.empty()) {
    std::cout << out;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << cfg.out << "\n";
      return 1;
    }
    f << out;
  }
  return code;
}
