#include "evtforge/compile.h"
#include "evtforge/evt.h"

namespace evtforge {

std::string to_string(const EvtSentence& s) { return "⟨" + s.event + ", " + to_string(s.body) + "⟩"; }

void check_sentence(const EvtSentence& s, const EvtSignature& sig) {
  if (!sig.events.count(s.event)) throw StructuralError("sentence for unknown event " + s.event);
  check_formula(s.body, sig.fopeq, sig.vars);
  for (const auto& [name, primed] : free_vars(s.body))
    if (!sig.vars.count(name)) throw StructuralError("sentence mentions unknown variable " + name);
}

EvtSentence translate_sentence(const EvtMorphism& m, const EvtSentence& s) {
  Renaming r;
  r.fopeq = &m.fopeq;
  r.vars = &m.vars;
  r.strict_vars = true;
  return {m.event(s.event), rename_formula(s.body, r)};
}

namespace {

enum class Polarity { Pos, Neg, Both };

Polarity flip(Polarity p) {
  if (p == Polarity::Pos) return Polarity::Neg;
  if (p == Polarity::Neg) return Polarity::Pos;
  return Polarity::Both;
}

bool mentions_unprimed(const Formula& atom, const std::set<std::string>& bound) {
  for (const auto& [name, primed] : free_vars(atom))
    if (!primed && !bound.count(name)) return true;
  return false;
}

Formula restrict(const Formula& f, Polarity pol, std::set<std::string> bound) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Not: return Formula::negate(restrict(f.subs[0], flip(pol), bound));
    case K::And:
    case K::Or: {
      Formula out = f;
      for (auto& s : out.subs) s = restrict(s, pol, bound);
      return out;
    }
    case K::Implies:
      return Formula::implies(restrict(f.subs[0], flip(pol), bound), restrict(f.subs[1], pol, bound));
    case K::Iff:
      return Formula::iff(restrict(f.subs[0], Polarity::Both, bound), restrict(f.subs[1], Polarity::Both, bound));
    case K::Forall:
    case K::Exists: {
      for (const auto& b : f.binders) bound.insert(b.name);
      Formula out = f;
      out.subs[0] = restrict(f.subs[0], pol, bound);
      return out;
    }
    default:
      if (!mentions_unprimed(f, bound)) return f;
      return pol == Polarity::Neg ? Formula::falsity() : Formula::truth();
  }
}

}  // namespace

Formula init_restrict(const Formula& f) { return restrict(f, Polarity::Pos, {}); }

namespace {

SlotLayout layout_for(const EvtSignature& sig, bool with_unprimed) {
  SlotLayout l;
  for (const auto& v : sig.var_names()) {
    if (with_unprimed) l.add(valuation_key(v, false));
    l.add(valuation_key(v, true));
  }
  return l;
}

}  // namespace

bool satisfies(const EvtModel& m, const EvtSentence& s) {
  check_sentence(s, m.sig);
  const auto names = m.sig.var_names();
  if (s.event == kInit) {
    SlotLayout layout = layout_for(m.sig, false);
    CompiledFormula cf(init_restrict(s.body), m.algebra, layout);
    std::vector<Value> frame(size_t(cf.frame_size()), 0);
    for (const auto& st : m.init) {
      for (size_t i = 0; i < names.size(); ++i) frame[i] = st[i];
      if (!cf.eval(frame.data())) return false;
    }
    return true;
  }
  SlotLayout layout = layout_for(m.sig, true);
  CompiledFormula cf(s.body, m.algebra, layout);
  std::vector<Value> frame(size_t(cf.frame_size()), 0);
  auto it = m.rel.find(s.event);
  if (it == m.rel.end()) return true;
  for (const auto& [pre, post] : it->second) {
    for (size_t i = 0; i < names.size(); ++i) {
      frame[2 * i] = pre[i];
      frame[2 * i + 1] = post[i];
    }
    if (!cf.eval(frame.data())) return false;
  }
  return true;
}

}  // namespace evtforge
