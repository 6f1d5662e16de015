#include <sstream>

#include "evtforge/eventb.h"

namespace evtforge {

namespace {

void list(std::ostream& os, const char* kw, const std::vector<std::string>& xs) {
  if (xs.empty()) return;
  os << "  " << kw;
  for (size_t i = 0; i < xs.size(); ++i) os << (i ? ", " : " ") << xs[i];
  os << "\n";
}

void preds(std::ostream& os, const char* kw, const std::vector<Labelled>& ps, const char* indent) {
  if (ps.empty()) return;
  os << indent << kw << "\n";
  for (const auto& p : ps) {
    os << indent << "  ";
    if (!p.label.empty()) os << p.label << ": ";
    os << to_string(p.pred);
    if (p.theorem) os << " theorem";
    os << "\n";
  }
}

void event(std::ostream& os, const EventDef& e) {
  os << "    event ";
  if (e.name == kInit) {
    os << "INITIALISATION\n";
  } else {
    os << e.name << " status " << to_string(e.status) << (e.extended ? " extended" : "") << "\n";
  }
  if (!e.refines.empty()) {
    os << "      refines";
    for (size_t i = 0; i < e.refines.size(); ++i) os << (i ? ", " : " ") << e.refines[i];
    os << "\n";
  }
  if (!e.params.empty()) {
    os << "      any";
    for (size_t i = 0; i < e.params.size(); ++i) os << (i ? ", " : " ") << e.params[i];
    os << "\n";
  }
  preds(os, "when", e.guards, "      ");
  preds(os, "with", e.witnesses, "      ");
  if (!e.actions.empty()) {
    os << "      thenAct\n";
    for (const auto& a : e.actions) {
      os << "        ";
      if (!a.label.empty()) os << a.label << ": ";
      for (size_t i = 0; i < a.vars.size(); ++i) os << (i ? ", " : "") << a.vars[i];
      if (a.such_that) {
        os << " :| " << to_string(*a.such_that);
      } else {
        os << " := ";
        for (size_t i = 0; i < a.exprs.size(); ++i) os << (i ? ", " : "") << to_string(a.exprs[i]);
      }
      os << "\n";
    }
  }
}

}  // namespace

std::string pretty_print_eb(const EbSpecification& spec) {
  std::ostringstream os;
  bool first = true;
  for (const auto& u : spec.units) {
    if (!first) os << "\n";
    first = false;
    if (const auto* c = std::get_if<ContextDef>(&u)) {
      os << "context " << c->name << "\n";
      list(os, "extends", c->extends);
      list(os, "sets", c->sets);
      list(os, "constants", c->constants);
      preds(os, "axioms", c->axioms, "  ");
      os << "end\n";
      continue;
    }
    const auto& m = std::get<MachineDef>(u);
    os << "machine " << m.name << "\n";
    if (m.refines) os << "  refines " << *m.refines << "\n";
    list(os, "sees", m.sees);
    list(os, "variables", m.variables);
    preds(os, "invariants", m.invariants, "  ");
    if (m.variant) os << "  variant " << to_string(*m.variant) << "\n";
    os << "  events\n";
    event(os, m.init);
    for (const auto& e : m.events) event(os, e);
    os << "end\n";
  }
  return os.str();
}

}  // namespace evtforge
