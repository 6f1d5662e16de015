#include <sstream>

#include "evtforge/evt.h"

namespace evtforge {

std::string to_string(Status s) {
  switch (s) {
    case Status::Ordinary: return "ordinary";
    case Status::Anticipated: return "anticipated";
    case Status::Convergent: return "convergent";
  }
  return "ordinary";
}

std::optional<Status> parse_status(const std::string& s) {
  if (s == "ordinary") return Status::Ordinary;
  if (s == "anticipated") return Status::Anticipated;
  if (s == "convergent") return Status::Convergent;
  return std::nullopt;
}

EvtSignature EvtSignature::initial(FopeqSignature fs) {
  EvtSignature s;
  s.fopeq = std::move(fs);
  s.events[kInit] = Status::Ordinary;
  return s;
}

void EvtSignature::validate() const {
  fopeq.validate();
  auto init = events.find(kInit);
  if (init == events.end()) throw StructuralError("signature has no Init event");
  if (init->second != Status::Ordinary) throw StructuralError("Init must be ordinary");
  for (const auto& [v, sort] : vars) {
    if (v.empty() || v.back() == '\'') throw StructuralError("bad variable name '" + v + "'");
    if (!fopeq.has_sort(sort)) throw StructuralError("variable " + v + " has unknown sort " + sort);
  }
}

std::vector<std::string> EvtSignature::var_names() const {
  std::vector<std::string> out;
  for (const auto& [v, _] : vars) out.push_back(v);
  return out;
}

EvtSignature sig_union(const EvtSignature& a, const EvtSignature& b) {
  EvtSignature r;
  r.fopeq = fopeq_union(a.fopeq, b.fopeq);
  r.events = a.events;
  for (const auto& [e, st] : b.events) {
    auto [it, fresh] = r.events.emplace(e, st);
    if (!fresh) it->second = sup(it->second, st);
  }
  r.vars = a.vars;
  for (const auto& [v, sort] : b.vars) {
    auto [it, fresh] = r.vars.emplace(v, sort);
    if (!fresh && it->second != sort) throw SemanticError("variable " + v + " declared with sorts " + it->second + " and " + sort);
  }
  for (const auto& [v, _] : r.vars)
    if (r.fopeq.ops.count(v)) throw SemanticError("name " + v + " is both a variable and an operation");
  return r;
}

bool sig_includes(const EvtSignature& big, const EvtSignature& small) {
  if (!fopeq_includes(big.fopeq, small.fopeq)) return false;
  for (const auto& [e, _] : small.events)
    if (!big.events.count(e)) return false;
  for (const auto& [v, sort] : small.vars) {
    auto it = big.vars.find(v);
    if (it == big.vars.end() || it->second != sort) return false;
  }
  return true;
}

std::string describe(const EvtMorphism& m) {
  std::ostringstream os;
  auto block = [&](const char* label, const std::map<std::string, std::string>& xs) {
    os << label << " {";
    bool first = true;
    for (const auto& [a, b] : xs) os << (first ? "" : ", ") << a << " ↦ " << b, first = false;
    os << "}";
  };
  block("sorts", m.fopeq.sorts);
  block(" ops", m.fopeq.ops);
  block(" preds", m.fopeq.preds);
  block(" events", m.events);
  block(" vars", m.vars);
  return os.str();
}

std::string describe(const EvtSignature& sig) {
  std::ostringstream os;
  os << "sorts {";
  bool first = true;
  for (const auto& s : sig.fopeq.sorts) os << (first ? "" : ", ") << s, first = false;
  os << "} ops {";
  first = true;
  for (const auto& [n, op] : sig.fopeq.ops) {
    os << (first ? "" : ", ") << n << ":";
    for (const auto& a : op.args) os << a << "×";
    os << op.result;
    first = false;
  }
  os << "} preds {";
  first = true;
  for (const auto& [n, _] : sig.fopeq.preds) os << (first ? "" : ", ") << n, first = false;
  os << "} events {";
  first = true;
  for (const auto& [e, st] : sig.events) os << (first ? "" : ", ") << e << "↦" << to_string(st), first = false;
  os << "} vars {";
  first = true;
  for (const auto& [v, s] : sig.vars) os << (first ? "" : ", ") << v << ":" << s, first = false;
  os << "}";
  return os.str();
}

std::string EvtMorphism::event(const std::string& e) const {
  auto it = events.find(e);
  if (it == events.end()) throw StructuralError("event " + e + " outside morphism domain");
  return it->second;
}

std::string EvtMorphism::var(const std::string& v) const {
  auto it = vars.find(v);
  if (it == vars.end()) throw StructuralError("variable " + v + " outside morphism domain");
  return it->second;
}

EvtMorphism EvtMorphism::identity(const EvtSignature& sig) {
  EvtMorphism m;
  m.fopeq = FopeqMorphism::identity(sig.fopeq);
  for (const auto& [e, _] : sig.events) m.events[e] = e;
  for (const auto& [v, _] : sig.vars) m.vars[v] = v;
  return m;
}

EvtMorphism EvtMorphism::inclusion(const EvtSignature& small) { return identity(small); }

EvtMorphism compose(const EvtMorphism& second, const EvtMorphism& first) {
  EvtMorphism r;
  r.fopeq = compose(second.fopeq, first.fopeq);
  for (const auto& [k, v] : first.events) r.events[k] = second.event(v);
  for (const auto& [k, v] : first.vars) r.vars[k] = second.var(v);
  return r;
}

std::vector<std::string> validate(const EvtMorphism& m, const EvtSignature& src, const EvtSignature& tgt,
                                  StatusRule rule) {
  validate(m.fopeq, src.fopeq, tgt.fopeq);
  std::vector<std::string> warnings;
  for (const auto& [e, st] : src.events) {
    auto it = m.events.find(e);
    if (it == m.events.end()) throw StructuralError("morphism misses event " + e);
    auto t = tgt.events.find(it->second);
    if (t == tgt.events.end()) throw StructuralError("morphism sends event " + e + " to unknown " + it->second);
    if ((e == kInit) != (it->second == kInit)) throw StructuralError("morphism must send Init to Init and only Init");
    if (t->second < st) {
      std::string msg = "event " + e + " (" + to_string(st) + ") mapped to " + it->second + " (" +
                        to_string(t->second) + ") lowers its status";
      if (rule == StatusRule::Enforce) throw StructuralError(msg);
      warnings.push_back(msg);
    }
  }
  for (const auto& [v, sort] : src.vars) {
    auto it = m.vars.find(v);
    if (it == m.vars.end()) throw StructuralError("morphism misses variable " + v);
    auto t = tgt.vars.find(it->second);
    if (t == tgt.vars.end()) throw StructuralError("morphism sends variable " + v + " to unknown " + it->second);
    if (t->second != m.fopeq.sort(sort)) throw StructuralError("morphism breaks the sort of variable " + v);
  }
  return warnings;
}

}  // namespace evtforge
