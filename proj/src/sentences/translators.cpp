#include <set>

#include "evtforge/sentences.h"

namespace evtforge {

namespace {

std::set<std::string> var_set(const EvtSignature& sig) {
  std::set<std::string> out;
  for (const auto& [v, _] : sig.vars) out.insert(v);
  return out;
}

}  // namespace

std::vector<EvtSentence> invariant_sentences(const EvtSignature& sig, const Formula& inv) {
  Formula body = f_and({inv, prime_formula(inv, var_set(sig))});
  std::vector<EvtSentence> out;
  for (const auto& [e, _] : sig.events) out.push_back({e, body});
  return out;
}

std::vector<EvtSentence> variant_sentences(const EvtSignature& sig, const Term& variant) {
  if (sort_of(variant, sig.fopeq, sig.vars) != kIntSort)
    throw SemanticError("variant " + to_string(variant) + " is not numeric");
  Term after = prime_term(variant, var_set(sig));
  std::vector<EvtSentence> out;
  for (const auto& [e, st] : sig.events) {
    if (st == Status::Convergent) out.push_back({e, f_lt(after, variant)});
    else if (st == Status::Anticipated) out.push_back({e, f_leq(after, variant)});
  }
  return out;
}

Formula before_after(const Action& a) {
  if (a.such_that) return *a.such_that;
  std::vector<Formula> parts;
  for (size_t i = 0; i < a.vars.size(); ++i) parts.push_back(Formula::eq(Term::var(a.vars[i], true), a.exprs[i]));
  return f_and(std::move(parts));
}

EvtSentence event_sentence(const EvtSignature& sig, const EventDef& e) {
  if (!sig.events.count(e.name)) throw SemanticError("event " + e.name + " is not in the signature");
  for (const auto& a : e.actions)
    for (const auto& v : a.vars)
      if (!sig.vars.count(v)) throw SemanticError("event " + e.name + " assigns undeclared variable " + v);
  std::vector<Formula> parts;
  if (e.name != kInit) {
    for (const auto& g : e.guards) parts.push_back(g.pred);
    for (const auto& w : e.witnesses) parts.push_back(w.pred);
  }
  for (const auto& a : e.actions) parts.push_back(before_after(a));
  Formula body = f_and(std::move(parts));
  if (e.name != kInit) {
    std::vector<Binder> bs;
    for (const auto& p : e.params) bs.push_back({p, ""});
    body = f_exists(std::move(bs), std::move(body));
  }
  body = resolve_formula(body, sig.fopeq, sig.vars);
  if (e.name == kInit)
    for (const auto& [v, primed] : free_vars(body))
      if (!primed) throw SemanticError("initialisation reads the before-value of " + v);
  return {e.name, std::move(body)};
}

std::vector<EvtSentence> typing_sentences(const EvtSignature& sig, const Typed& v) {
  if (typing_is_trivial(v.type)) return {};
  Formula atom = typing_atom(Term::var(v.name), v.type);
  return invariant_sentences(sig, resolve_formula(atom, sig.fopeq, sig.vars));
}

std::string type_sort(TypeExpr& t, const FopeqSignature& sig) {
  switch (t.kind) {
    case TypeExpr::Kind::Nat:
    case TypeExpr::Kind::Integer: return kIntSort;
    case TypeExpr::Kind::Boolean: return kBoolSort;
    case TypeExpr::Kind::Sort:
      if (!sig.has_sort(t.sort)) throw SemanticError("unknown sort " + t.sort);
      return t.sort;
    case TypeExpr::Kind::Set: {
      std::string sort;
      for (auto& e : t.elems) {
        e = resolve_term(e, sig, {});
        std::string s = sort_of(e, sig, {});
        if (!sort.empty() && s != sort) throw SemanticError("literal set mixes sorts " + sort + " and " + s);
        sort = s;
      }
      if (sort.empty()) throw SemanticError("empty literal set type");
      return sort;
    }
  }
  return kIntSort;
}

EvtSignature body_signature(const Body& b, const EvtSignature& base) {
  EvtSignature delta = EvtSignature::initial(base.fopeq);
  for (const auto& s : b.sorts) {
    if (is_builtin_sort(s)) continue;
    delta.fopeq.sorts.insert(s);
  }
  // Constants can be typed by literal sets of earlier constants, so declare in order.
  for (const auto& op : b.ops) {
    TypeExpr t = op.type;
    std::string sort = type_sort(t, delta.fopeq);
    if (b.dynamic) {
      if (delta.vars.count(op.name)) throw SemanticError("variable " + op.name + " declared twice");
      delta.vars[op.name] = sort;
    } else {
      if (delta.fopeq.ops.count(op.name) && !base.fopeq.ops.count(op.name))
        throw SemanticError("constant " + op.name + " declared twice");
      delta.fopeq.ops[op.name] = OpDecl{op.name, {}, sort};
    }
  }
  for (const auto& e : b.events) {
    if (e.name == kInit) continue;
    auto [it, fresh] = delta.events.emplace(e.name, e.status);
    if (!fresh) throw SemanticError("event " + e.name + " listed twice");
  }
  return sig_union(base, delta);
}

std::vector<EvtSentence> body_sentences(const Body& b, const EvtSignature& full) {
  std::vector<EvtSentence> out;
  auto add = [&](std::vector<EvtSentence> xs) { out.insert(out.end(), xs.begin(), xs.end()); };
  if (!b.dynamic) {
    for (const auto& op : b.ops) {
      TypeExpr t = op.type;
      type_sort(t, full.fopeq);
      Formula atom = typing_atom(Term::app(op.name), t);
      if (atom.kind != Formula::Kind::True) out.push_back({kInit, atom});
    }
    for (const auto& ax : b.axioms) {
      Formula f = resolve_formula(ax.pred, full.fopeq, {});
      if (!free_vars(f).empty()) throw SemanticError("axiom " + to_string(f) + " is not closed");
      out.push_back({kInit, f});
    }
    return out;
  }
  for (const auto& op : b.ops) {
    Typed v = op;
    type_sort(v.type, full.fopeq);
    add(typing_sentences(full, v));
  }
  for (const auto& ax : b.axioms) add(invariant_sentences(full, resolve_formula(ax.pred, full.fopeq, full.vars)));
  if (b.variant) add(variant_sentences(full, resolve_term(*b.variant, full.fopeq, full.vars)));
  for (const auto& e : b.events) out.push_back(event_sentence(full, e));
  return out;
}

Body machine_body(const MachineEnv& m) {
  Body b;
  b.dynamic = true;
  for (const auto& name : m.declared)
    for (const auto& v : m.vars)
      if (v.name == name && !m.inherited.count(name)) b.ops.push_back(v);
  b.axioms = m.invariants;
  b.variant = m.variant;
  b.events.push_back(m.init);
  b.events.insert(b.events.end(), m.events.begin(), m.events.end());
  return b;
}

Body context_body(const ContextEnv& c) {
  Body b;
  b.sorts = c.sets;
  b.ops = c.constants;
  b.axioms = c.axioms;
  return b;
}

std::vector<EvtSentence> machine_sentences(const MachineEnv& m) {
  return body_sentences(machine_body(m), m.sig);
}

std::vector<Formula> context_sentences(const ContextEnv& c) {
  std::vector<Formula> out;
  for (const auto& s : body_sentences(context_body(c), EvtSignature::initial(c.sig))) out.push_back(s.body);
  return out;
}

}  // namespace evtforge
