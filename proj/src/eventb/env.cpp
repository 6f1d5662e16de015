
#include "evtforge/eventb.h"

namespace evtforge {

namespace {

// `x ∈ T` where x is one of `names`; returns the type when T is a typing set.
std::optional<std::pair<std::string, TypeExpr>> typing_shape(const Formula& f, const std::set<std::string>& names,
                                                             const std::set<std::string>& sets) {
  using K = Formula::Kind;
  if (f.kind != K::InSort && f.kind != K::In) return std::nullopt;
  const Term& x = f.terms[0];
  if (x.kind != Term::Kind::Var || x.primed || !names.count(x.name)) return std::nullopt;
  TypeExpr t;
  if (f.kind == K::In) {
    t.kind = TypeExpr::Kind::Set;
    t.elems.assign(f.terms.begin() + 1, f.terms.end());
    if (t.elems.empty()) return std::nullopt;
  } else if (f.name == "NAT") {
    t.kind = TypeExpr::Kind::Nat;
  } else if (f.name == "INT") {
    t.kind = TypeExpr::Kind::Integer;
  } else if (f.name == "BOOL") {
    t.kind = TypeExpr::Kind::Boolean;
  } else if (sets.count(f.name)) {
    t.kind = TypeExpr::Kind::Sort;
    t.sort = f.name;
  } else {
    return std::nullopt;
  }
  return std::pair{x.name, t};
}

// Resolves literal-set elements and returns the carrier sort of the type.
std::string sort_of_type(TypeExpr& t, const FopeqSignature& sig, const VarSorts& vars) {
  switch (t.kind) {
    case TypeExpr::Kind::Nat:
    case TypeExpr::Kind::Integer: return kIntSort;
    case TypeExpr::Kind::Boolean: return kBoolSort;
    case TypeExpr::Kind::Sort: return t.sort;
    case TypeExpr::Kind::Set: {
      std::string sort;
      for (auto& e : t.elems) {
        e = resolve_term(e, sig, vars);
        std::string s = sort_of(e, sig, vars);
        if (!sort.empty() && s != sort) throw SemanticError("literal set mixes sorts " + sort + " and " + s);
        sort = s;
      }
      return sort;
    }
  }
  return kIntSort;
}

ContextEnv build_context(const ContextDef& c, const Environment& env) {
  ContextEnv out;
  out.extends = c.extends;
  out.sets = c.sets;
  for (const auto& e : c.extends) out.sig = fopeq_union(out.sig, env.contexts.at(e).sig);
  for (const auto& s : c.sets) {
    if (out.sig.sorts.count(s)) throw SemanticError(c.name + ": set " + s + " already declared");
    out.sig.sorts.insert(s);
  }

  std::set<std::string> own(c.constants.begin(), c.constants.end());
  std::map<std::string, TypeExpr> types;
  std::vector<const Labelled*> rest;
  for (const auto& ax : c.axioms) {
    if (ax.theorem) continue;
    auto shape = typing_shape(ax.pred, own, out.sig.sorts);
    if (shape && !types.count(shape->first)) {
      types[shape->first] = shape->second;
      continue;
    }
    rest.push_back(&ax);
  }
  // Untyped constants: enumerated by a set equality, else numeric.
  for (const auto& k : c.constants) {
    if (types.count(k)) continue;
    TypeExpr t;
    for (const auto* ax : rest) {
      if (ax->pred.kind != Formula::Kind::SortEq) continue;
      for (const auto& e : ax->pred.terms)
        if (e.kind == Term::Kind::Var && e.name == k) t = TypeExpr{TypeExpr::Kind::Sort, ax->pred.name, {}};
    }
    types[k] = t;
  }

  // Constants first get their sorts, then literal-set types can be resolved.
  for (const auto& k : c.constants) {
    TypeExpr& t = types[k];
    if (t.kind == TypeExpr::Kind::Set) continue;
    std::string sort = sort_of_type(t, out.sig, {});
    if (out.sig.ops.count(k)) throw SemanticError(c.name + ": constant " + k + " already declared");
    out.sig.ops[k] = OpDecl{k, {}, sort};
  }
  for (const auto& k : c.constants) {
    TypeExpr& t = types[k];
    if (t.kind != TypeExpr::Kind::Set) continue;
    std::string sort = sort_of_type(t, out.sig, {});
    out.sig.ops[k] = OpDecl{k, {}, sort};
  }
  out.sig.validate();
  for (const auto& k : c.constants) {
    out.constants.push_back({k, types[k], out.sig.ops.at(k).result});
    Formula atom = typing_atom(Term::app(k), types[k]);
    if (atom.kind != Formula::Kind::True) out.typing.push_back(atom);
  }
  for (const auto* ax : rest) {
    Labelled l = *ax;
    l.pred = resolve_formula(ax->pred, out.sig, {});
    if (!free_vars(l.pred).empty()) throw SemanticError(c.name + ": axiom " + l.label + " has free variables");
    out.axioms.push_back(std::move(l));
  }
  return out;
}

MachineEnv build_machine(const MachineDef& m, const Environment& env) {
  MachineEnv out;
  out.refines = m.refines;
  out.sees = m.sees;
  out.declared = m.variables;
  out.init = m.init;
  out.events = m.events;

  EvtSignature sig = EvtSignature::initial();
  for (const auto& s : m.sees) sig.fopeq = fopeq_union(sig.fopeq, env.contexts.at(s).sig);

  const MachineEnv* abs = m.refines ? &env.machines.at(*m.refines) : nullptr;
  for (const auto& e : m.events)
    for (const auto& r : e.refines) {
      if (!abs) throw SemanticError(m.name + ": event " + e.name + " refines " + r + " but the machine refines nothing");
      if (!abs->sig.events.count(r)) throw SemanticError(m.name + ": event " + e.name + " refines unknown event " + r);
      out.refined.insert(r);
    }

  // Typing invariants fix the sorts of this machine's variables.
  std::set<std::string> declared(m.variables.begin(), m.variables.end());
  std::map<std::string, TypeExpr> types;
  std::vector<const Labelled*> rest;
  std::vector<const Labelled*> typing;
  for (const auto& inv : m.invariants) {
    if (inv.theorem) continue;
    auto shape = typing_shape(inv.pred, declared, sig.fopeq.sorts);
    if (shape && !types.count(shape->first)) {
      types[shape->first] = shape->second;
      typing.push_back(&inv);
      continue;
    }
    rest.push_back(&inv);
  }

  if (abs) sig.fopeq = fopeq_union(sig.fopeq, abs->sig.fopeq);
  for (const auto& v : m.variables) {
    auto t = types.find(v);
    if (t != types.end()) {
      std::string sort = sort_of_type(t->second, sig.fopeq, {});
      out.vars.push_back({v, t->second, sort});
      continue;
    }
    const Typed* inherited = nullptr;
    if (abs)
      for (const auto& av : abs->vars)
        if (av.name == v) inherited = &av;
    if (!inherited) throw SemanticError(m.name + ": variable " + v + " has no typing invariant");
    out.vars.push_back(*inherited);
  }
  for (const auto& tv : out.vars) sig.vars[tv.name] = tv.sort;

  for (const auto& e : m.events) {
    if (e.name == kInit) throw SemanticError(m.name + ": event name Init is reserved");
    sig.events[e.name] = e.status;
  }
  if (abs) {
    // r(ξ⟦a⟧): the abstract signature without the refined events.
    EvtSignature r = abs->sig;
    for (const auto& e : out.refined)
      if (e != kInit) r.events.erase(e);
    for (const auto& tv : abs->vars) {
      out.inherited.insert(tv.name);
      if (!sig.vars.count(tv.name)) out.vars.push_back(tv);
    }
    sig = sig_union(sig, r);
  }
  sig.validate();

  VarSorts vs = sig.vars;
  for (const auto* inv : typing) {
    Labelled l = *inv;
    l.pred = resolve_formula(inv->pred, sig.fopeq, vs);
    out.typing.push_back(std::move(l));
  }
  for (const auto* inv : rest) {
    Labelled l = *inv;
    l.pred = resolve_formula(inv->pred, sig.fopeq, vs);
    out.invariants.push_back(std::move(l));
  }
  if (m.variant) {
    out.variant = resolve_term(*m.variant, sig.fopeq, vs);
    if (sort_of(*out.variant, sig.fopeq, vs) != kIntSort) throw SemanticError(m.name + ": variant is not numeric");
  }
  out.sig = std::move(sig);
  return out;
}

void theorem_ignored(Environment& env, const std::string& unit, const Labelled& l) {
  env.diagnostics.push_back(unit + ": theorem " + (l.label.empty() ? to_string(l.pred) : l.label) + " ignored");
}

}  // namespace

Environment build_env(const EbSpecification& spec, Environment env) {
  for (const auto& u : spec.units) {
    const auto& name = unit_name(u);
    if (env.has(name)) throw SemanticError("duplicate name " + name);
    if (const auto* c = std::get_if<ContextDef>(&u)) {
      for (const auto& e : c->extends)
        if (!env.contexts.count(e)) throw SemanticError(name + " extends unknown context " + e);
      env.contexts[name] = build_context(*c, env);
      for (const auto& ax : c->axioms)
        if (ax.theorem) theorem_ignored(env, name, ax);
    } else {
      const auto& m = std::get<MachineDef>(u);
      for (const auto& s : m.sees)
        if (!env.contexts.count(s)) throw SemanticError(name + " sees unknown context " + s);
      if (m.refines && !env.machines.count(*m.refines))
        throw SemanticError(name + " refines unknown machine " + *m.refines);
      env.machines[name] = build_machine(m, env);
      for (const auto& inv : m.invariants)
        if (inv.theorem) theorem_ignored(env, name, inv);
    }
    env.order.push_back(name);
  }
  return env;
}

}  // namespace evtforge
