#include <algorithm>
#include <filesystem>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "evtforge/eventb.h"
#include "evtforge/syntax.h"

namespace evtforge {

namespace {

namespace pt = boost::property_tree;

// "org.eventb.core.label", "rodin:label" and "label" all become "label".
std::string local(const std::string& name) {
  std::string n = name;
  if (auto colon = n.rfind(':'); colon != std::string::npos) n = n.substr(colon + 1);
  static const std::string prefix = "org.eventb.core.";
  if (n.rfind(prefix, 0) == 0) n = n.substr(prefix.size());
  return n;
}

std::map<std::string, std::string> attrs(const pt::ptree& node) {
  std::map<std::string, std::string> out;
  if (auto a = node.get_child_optional("<xmlattr>"))
    for (const auto& [k, v] : *a) out[local(k)] = v.data();
  return out;
}

std::string attr(const std::map<std::string, std::string>& a, const std::string& key, const std::string& where) {
  auto it = a.find(key);
  if (it == a.end()) throw ParseError(where + ": missing attribute " + key, 0, 0);
  return it->second;
}

template <class F>
auto wrap(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what(), e.line(), e.col());
  }
}

Labelled labelled(const pt::ptree& node, const std::string& where) {
  auto a = attrs(node);
  Labelled l;
  l.label = a.count("label") ? a["label"] : "";
  l.pred = wrap(where + "/" + l.label, [&] { return parse_formula(attr(a, "predicate", where)); });
  l.theorem = a.count("theorem") && a["theorem"] == "true";
  return l;
}

Action action(const pt::ptree& node, const std::string& where) {
  auto a = attrs(node);
  std::string label = a.count("label") ? a["label"] : "";
  Action act = wrap(where + "/" + label, [&] { return parse_action(attr(a, "assignment", where)); });
  act.label = label;
  return act;
}

struct Unit {
  std::string name;
  EbUnit unit;
  std::vector<std::string> deps;
};

Unit machine(const std::string& name, const pt::ptree& root) {
  MachineDef m;
  m.name = name;
  m.init.name = kInit;
  bool have_init = false;
  std::vector<std::string> deps;
  for (const auto& [tag, node] : root) {
    std::string t = local(tag);
    auto a = attrs(node);
    std::string where = name + "/" + t;
    if (t == "variable") {
      m.variables.push_back(attr(a, "identifier", where));
    } else if (t == "invariant") {
      m.invariants.push_back(labelled(node, where));
    } else if (t == "variant") {
      if (m.variant) throw SemanticError(name + ": more than one variant");
      m.variant = wrap(where, [&] { return parse_term(attr(a, "expression", where)); });
    } else if (t == "refinesMachine") {
      m.refines = attr(a, "target", where);
      deps.push_back(*m.refines);
    } else if (t == "seesContext") {
      m.sees.push_back(attr(a, "target", where));
      deps.push_back(m.sees.back());
    } else if (t == "event") {
      EventDef e;
      e.name = attr(a, "label", where);
      std::string code = a.count("convergence") ? a["convergence"] : "0";
      if (code == "0") e.status = Status::Ordinary;
      else if (code == "1") e.status = Status::Convergent;
      else if (code == "2") e.status = Status::Anticipated;
      else throw SemanticError(where + " " + e.name + ": unknown convergence code " + code);
      e.extended = a.count("extended") && a["extended"] == "true";
      std::string ew = where + "/" + e.name;
      for (const auto& [ctag, child] : node) {
        std::string ct = local(ctag);
        auto ca = attrs(child);
        if (ct == "parameter") e.params.push_back(attr(ca, "identifier", ew));
        else if (ct == "guard") e.guards.push_back(labelled(child, ew));
        else if (ct == "witness") e.witnesses.push_back(labelled(child, ew));
        else if (ct == "action") e.actions.push_back(action(child, ew));
        else if (ct == "refinesEvent") e.refines.push_back(attr(ca, "target", ew));
      }
      if (e.name == "INITIALISATION") {
        if (have_init) throw SemanticError(name + ": duplicate INITIALISATION");
        have_init = true;
        e.name = kInit;
        e.status = Status::Ordinary;
        e.refines.clear();
        m.init = std::move(e);
      } else {
        m.events.push_back(std::move(e));
      }
    }
  }
  if (!have_init) throw SemanticError(name + ": no INITIALISATION event");
  return {name, m, deps};
}

Unit context(const std::string& name, const pt::ptree& root) {
  ContextDef c;
  c.name = name;
  std::vector<std::string> deps;
  for (const auto& [tag, node] : root) {
    std::string t = local(tag);
    auto a = attrs(node);
    std::string where = name + "/" + t;
    if (t == "carrierSet") c.sets.push_back(attr(a, "identifier", where));
    else if (t == "constant") c.constants.push_back(attr(a, "identifier", where));
    else if (t == "axiom") c.axioms.push_back(labelled(node, where));
    else if (t == "extendsContext") {
      c.extends.push_back(attr(a, "target", where));
      deps.push_back(c.extends.back());
    }
  }
  return {name, c, deps};
}

}  // namespace

EbSpecification parse_rodin(const std::vector<std::pair<std::string, std::string>>& files) {
  std::vector<Unit> units;
  for (const auto& [file, text] : files) {
    std::string name = std::filesystem::path(file).stem().string();
    pt::ptree tree;
    std::istringstream in(text);
    try {
      pt::read_xml(in, tree);
    } catch (const pt::xml_parser_error& e) {
      throw ParseError(file + ": " + e.message(), int(e.line()), 0);
    }
    bool found = false;
    for (const auto& [tag, node] : tree) {
      std::string t = local(tag);
      if (t == "machineFile") units.push_back(machine(name, node)), found = true;
      else if (t == "contextFile") units.push_back(context(name, node)), found = true;
    }
    if (!found) throw ParseError(file + ": neither a machineFile nor a contextFile", 0, 0);
  }

  // Dependencies first, otherwise input order.
  EbSpecification spec;
  std::set<std::string> placed;
  std::set<std::string> names;
  for (const auto& u : units) names.insert(u.name);
  while (placed.size() < units.size()) {
    bool progress = false;
    for (const auto& u : units) {
      if (placed.count(u.name)) continue;
      bool ready = std::all_of(u.deps.begin(), u.deps.end(), [&](const std::string& d) {
        if (!names.count(d)) throw SemanticError(u.name + " references undefined " + d);
        return placed.count(d) > 0;
      });
      if (!ready) continue;
      spec.units.push_back(u.unit);
      placed.insert(u.name);
      progress = true;
      break;
    }
    if (!progress) throw SemanticError("cyclic references between Rodin files");
  }
  validate_spec(spec);
  return spec;
}

}  // namespace evtforge
