#include "evtforge/fopeq.h"

namespace evtforge {

void FopeqSignature::validate() const {
  for (const auto& s : sorts) {
    if (is_builtin_sort(s)) throw StructuralError("builtin sort listed as user sort: " + s);
  }
  for (const auto& [n, op] : ops) {
    if (n != op.name) throw StructuralError("op key mismatch: " + n);
    for (const auto& a : op.args)
      if (!has_sort(a)) throw StructuralError("op " + n + " uses unknown sort " + a);
    if (!has_sort(op.result)) throw StructuralError("op " + n + " uses unknown sort " + op.result);
  }
  for (const auto& [n, p] : preds) {
    if (n != p.name) throw StructuralError("pred key mismatch: " + n);
    for (const auto& a : p.args)
      if (!has_sort(a)) throw StructuralError("pred " + n + " uses unknown sort " + a);
  }
}

FopeqSignature fopeq_union(const FopeqSignature& a, const FopeqSignature& b) {
  FopeqSignature r = a;
  r.sorts.insert(b.sorts.begin(), b.sorts.end());
  for (const auto& [n, op] : b.ops) {
    auto it = r.ops.find(n);
    if (it != r.ops.end() && it->second != op) throw SemanticError("op " + n + " declared with two profiles");
    r.ops[n] = op;
  }
  for (const auto& [n, p] : b.preds) {
    auto it = r.preds.find(n);
    if (it != r.preds.end() && it->second != p) throw SemanticError("pred " + n + " declared with two profiles");
    r.preds[n] = p;
  }
  return r;
}

bool fopeq_includes(const FopeqSignature& big, const FopeqSignature& small) {
  for (const auto& s : small.sorts)
    if (!big.sorts.count(s)) return false;
  for (const auto& [n, op] : small.ops) {
    auto it = big.ops.find(n);
    if (it == big.ops.end() || it->second != op) return false;
  }
  for (const auto& [n, p] : small.preds) {
    auto it = big.preds.find(n);
    if (it == big.preds.end() || it->second != p) return false;
  }
  return true;
}

// ---- sorting ----

namespace {

bool is_arith(const Term& t) {
  return t.kind == Term::Kind::App && ((t.args.size() == 2 && (t.name == "+" || t.name == "-" || t.name == "*")) ||
                                       (t.args.size() == 1 && t.name == "neg"));
}

std::string set_sort(const std::vector<Term>& ts, size_t from, const FopeqSignature& sig, const VarSorts& vars) {
  std::string s;
  for (size_t i = from; i < ts.size(); ++i) {
    auto si = sort_of(ts[i], sig, vars);
    if (!s.empty() && si != s) throw StructuralError("mixed sorts in set literal");
    s = si;
  }
  return s;
}

std::string sort_name_of_type(const std::string& name, const FopeqSignature& sig) {
  if (name == "NAT" || name == "INT") return kIntSort;
  if (name == "BOOL") return kBoolSort;
  if (!sig.has_sort(name)) throw StructuralError("unknown sort " + name);
  return name;
}

}  // namespace

std::string sort_of(const Term& t, const FopeqSignature& sig, const VarSorts& vars) {
  switch (t.kind) {
    case Term::Kind::Int: return kIntSort;
    case Term::Kind::Bool: return kBoolSort;
    case Term::Kind::Var: {
      auto it = vars.find(t.name);
      if (it == vars.end()) throw StructuralError("unknown variable " + t.name + (t.primed ? "′" : ""));
      return it->second;
    }
    case Term::Kind::App: {
      if (is_arith(t)) {
        for (const auto& a : t.args)
          if (sort_of(a, sig, vars) != kIntSort) throw StructuralError("non-integer operand in " + to_string(t));
        return kIntSort;
      }
      auto it = sig.ops.find(t.name);
      if (it == sig.ops.end()) throw StructuralError("unknown operation " + t.name);
      if (it->second.args.size() != t.args.size()) throw StructuralError("arity mismatch for " + t.name);
      for (size_t i = 0; i < t.args.size(); ++i)
        if (sort_of(t.args[i], sig, vars) != it->second.args[i])
          throw StructuralError("argument sort mismatch for " + t.name);
      return it->second.result;
    }
  }
  throw StructuralError("bad term");
}

void check_formula(const Formula& f, const FopeqSignature& sig, const VarSorts& vars) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::True: case K::False: return;
    case K::Eq: case K::Ne:
      if (sort_of(f.terms[0], sig, vars) != sort_of(f.terms[1], sig, vars))
        throw StructuralError("sort mismatch in " + to_string(f));
      return;
    case K::Lt: case K::Le: case K::Gt: case K::Ge:
      if (sort_of(f.terms[0], sig, vars) != kIntSort || sort_of(f.terms[1], sig, vars) != kIntSort)
        throw StructuralError("non-integer comparison " + to_string(f));
      return;
    case K::Pred: {
      auto it = sig.preds.find(f.name);
      if (it == sig.preds.end()) throw StructuralError("unknown predicate " + f.name);
      if (it->second.args.size() != f.terms.size()) throw StructuralError("arity mismatch for " + f.name);
      for (size_t i = 0; i < f.terms.size(); ++i)
        if (sort_of(f.terms[i], sig, vars) != it->second.args[i])
          throw StructuralError("argument sort mismatch for " + f.name);
      return;
    }
    case K::In: {
      auto s = sort_of(f.terms[0], sig, vars);
      auto es = set_sort(f.terms, 1, sig, vars);
      if (!es.empty() && es != s) throw StructuralError("membership sort mismatch in " + to_string(f));
      return;
    }
    case K::InSort:
      if (sort_of(f.terms[0], sig, vars) != sort_name_of_type(f.name, sig))
        throw StructuralError("membership sort mismatch in " + to_string(f));
      return;
    case K::SortEq: {
      if (!sig.sorts.count(f.name)) throw StructuralError("unknown sort " + f.name);
      auto es = set_sort(f.terms, 0, sig, vars);
      if (!es.empty() && es != f.name) throw StructuralError("sort enumeration of wrong sort: " + to_string(f));
      return;
    }
    case K::Forall: case K::Exists: {
      VarSorts inner = vars;
      for (const auto& b : f.binders) {
        if (b.sort.empty()) throw StructuralError("unsorted binder " + b.name);
        if (!sig.has_sort(b.sort)) throw StructuralError("unknown sort " + b.sort);
        inner[b.name] = b.sort;
      }
      check_formula(f.subs[0], sig, inner);
      return;
    }
    default:
      for (const auto& s : f.subs) check_formula(s, sig, vars);
  }
}

// ---- resolution ----

namespace {

struct Resolver {
  const FopeqSignature& sig;

  Term term(const Term& t, const VarSorts& vars) const {
    Term r = t;
    if (t.kind == Term::Kind::Var && !vars.count(t.name)) {
      auto it = sig.ops.find(t.name);
      if (it != sig.ops.end() && it->second.args.empty()) {
        if (t.primed) throw StructuralError("constant " + t.name + " cannot be primed");
        return Term::app(t.name);
      }
      throw StructuralError("unknown identifier " + t.name);
    }
    for (auto& a : r.args) a = term(a, vars);
    return r;
  }

  // Sort a binder from the first atom that pins it down.
  std::optional<std::string> infer(const std::string& name, const Formula& f, const VarSorts& vars) const {
    using K = Formula::Kind;
    auto is_bound = [&](const Term& t) { return t.kind == Term::Kind::Var && t.name == name && !t.primed; };
    auto other_sort = [&](const Term& t) -> std::optional<std::string> {
      try {
        return sort_of(term(t, vars), sig, vars);
      } catch (const StructuralError&) {
        return std::nullopt;
      }
    };
    switch (f.kind) {
      case K::InSort:
        if (is_bound(f.terms[0])) return sort_name_of_type(f.name, sig);
        break;
      case K::In:
        if (is_bound(f.terms[0]) && f.terms.size() > 1) return other_sort(f.terms[1]);
        break;
      case K::Eq: case K::Ne:
        if (is_bound(f.terms[0])) return other_sort(f.terms[1]);
        if (is_bound(f.terms[1])) return other_sort(f.terms[0]);
        break;
      case K::Lt: case K::Le: case K::Gt: case K::Ge:
        if (is_bound(f.terms[0]) || is_bound(f.terms[1])) return kIntSort;
        break;
      default:
        break;
    }
    for (const auto& t : f.terms) {
      if (mentions_in_arith(t, name)) return kIntSort;
    }
    for (const auto& s : f.subs) {
      bool shadow = false;
      for (const auto& b : s.binders) shadow |= b.name == name;
      if (shadow) continue;
      if (auto r = infer(name, s, vars)) return r;
    }
    return std::nullopt;
  }

  static bool mentions_in_arith(const Term& t, const std::string& name) {
    if (is_arith(t)) {
      for (const auto& a : t.args) {
        if (a.kind == Term::Kind::Var && a.name == name && !a.primed) return true;
        if (mentions_in_arith(a, name)) return true;
      }
    }
    for (const auto& a : t.args)
      if (mentions_in_arith(a, name)) return true;
    return false;
  }

  Formula formula(const Formula& f, const VarSorts& vars) const {
    Formula r = f;
    if (f.kind == Formula::Kind::Forall || f.kind == Formula::Kind::Exists) {
      VarSorts inner = vars;
      for (auto& b : r.binders) {
        if (b.sort.empty()) {
          auto s = infer(b.name, f.subs[0], inner);
          if (!s) throw StructuralError("cannot infer the sort of " + b.name);
          b.sort = *s;
        } else if (b.sort == "NAT" || b.sort == "INT") {
          b.sort = kIntSort;
        } else if (b.sort == "BOOL") {
          b.sort = kBoolSort;
        }
        inner[b.name] = b.sort;
      }
      r.subs[0] = formula(f.subs[0], inner);
      return r;
    }
    for (auto& t : r.terms) t = term(t, vars);
    for (auto& s : r.subs) s = formula(s, vars);
    if (r.kind == Formula::Kind::Pred && !sig.preds.count(r.name)) {
      // A bare Boolean term used as a formula.
      Term t = r.terms.empty() ? term(Term::var(f.name), vars) : Term::app(r.name, r.terms);
      if (sort_of(t, sig, vars) == kBoolSort) return Formula::eq(t, Term::boolean(true));
      throw StructuralError("unknown predicate " + r.name);
    }
    return r;
  }
};

}  // namespace

Term resolve_term(const Term& t, const FopeqSignature& sig, const VarSorts& vars) {
  Term r = Resolver{sig}.term(t, vars);
  sort_of(r, sig, vars);
  return r;
}

Formula resolve_formula(const Formula& f, const FopeqSignature& sig, const VarSorts& vars) {
  Formula r = Resolver{sig}.formula(f, vars);
  check_formula(r, sig, vars);
  return r;
}

// ---- morphisms ----

std::string FopeqMorphism::sort(const std::string& s) const {
  if (is_builtin_sort(s)) return s;
  auto it = sorts.find(s);
  if (it == sorts.end()) throw StructuralError("sort " + s + " outside morphism domain");
  return it->second;
}

FopeqMorphism FopeqMorphism::identity(const FopeqSignature& sig) {
  FopeqMorphism m;
  for (const auto& s : sig.sorts) m.sorts[s] = s;
  for (const auto& [n, _] : sig.ops) m.ops[n] = n;
  for (const auto& [n, _] : sig.preds) m.preds[n] = n;
  return m;
}

FopeqMorphism compose(const FopeqMorphism& second, const FopeqMorphism& first) {
  FopeqMorphism r;
  auto through = [](const std::map<std::string, std::string>& a, const std::map<std::string, std::string>& b,
                    const std::string& what) {
    std::map<std::string, std::string> out;
    for (const auto& [k, v] : a) {
      auto it = b.find(v);
      if (it == b.end()) throw StructuralError(what + " " + v + " outside morphism domain");
      out[k] = it->second;
    }
    return out;
  };
  r.sorts = through(first.sorts, second.sorts, "sort");
  r.ops = through(first.ops, second.ops, "op");
  r.preds = through(first.preds, second.preds, "pred");
  return r;
}

void validate(const FopeqMorphism& m, const FopeqSignature& src, const FopeqSignature& tgt) {
  for (const auto& s : src.sorts) {
    auto it = m.sorts.find(s);
    if (it == m.sorts.end()) throw StructuralError("morphism misses sort " + s);
    if (!tgt.sorts.count(it->second)) throw StructuralError("morphism sends " + s + " outside target");
  }
  for (const auto& [n, op] : src.ops) {
    auto it = m.ops.find(n);
    if (it == m.ops.end()) throw StructuralError("morphism misses op " + n);
    auto t = tgt.ops.find(it->second);
    if (t == tgt.ops.end()) throw StructuralError("morphism sends op " + n + " outside target");
    if (t->second.args.size() != op.args.size() || t->second.result != m.sort(op.result))
      throw StructuralError("morphism breaks profile of " + n);
    for (size_t i = 0; i < op.args.size(); ++i)
      if (t->second.args[i] != m.sort(op.args[i])) throw StructuralError("morphism breaks profile of " + n);
  }
  for (const auto& [n, p] : src.preds) {
    auto it = m.preds.find(n);
    if (it == m.preds.end()) throw StructuralError("morphism misses pred " + n);
    auto t = tgt.preds.find(it->second);
    if (t == tgt.preds.end()) throw StructuralError("morphism sends pred " + n + " outside target");
    if (t->second.args.size() != p.args.size()) throw StructuralError("morphism breaks profile of " + n);
    for (size_t i = 0; i < p.args.size(); ++i)
      if (t->second.args[i] != m.sort(p.args[i])) throw StructuralError("morphism breaks profile of " + n);
  }
}

// ---- renaming ----

namespace {

bool is_builtin_op(const Term& t) { return is_arith(t); }

struct Renamer {
  const Renaming& r;

  std::string var(const std::string& v) const {
    if (r.vars) {
      auto it = r.vars->find(v);
      if (it != r.vars->end()) return it->second;
      if (r.strict_vars) throw StructuralError("variable " + v + " outside morphism domain");
    }
    return v;
  }

  Term term(const Term& t, const std::map<std::string, std::string>& bound) const {
    Term out = t;
    if (t.kind == Term::Kind::Var) {
      auto b = bound.find(t.name);
      if (b != bound.end() && !t.primed) {
        out.name = b->second;
      } else {
        out.name = var(t.name);
      }
      return out;
    }
    if (t.kind == Term::Kind::App && !is_builtin_op(t) && r.fopeq) {
      auto it = r.fopeq->ops.find(t.name);
      if (it == r.fopeq->ops.end()) throw StructuralError("op " + t.name + " outside morphism domain");
      out.name = it->second;
    }
    for (auto& a : out.args) a = term(a, bound);
    return out;
  }

  std::string sort(const std::string& s) const {
    if (!r.fopeq || s == "NAT" || s == "INT" || s == "BOOL") return s;
    return r.fopeq->sort(s);
  }

  Formula formula(const Formula& f, std::map<std::string, std::string> bound,
                  const std::set<std::string>& targets) const {
    Formula out = f;
    if (!f.binders.empty()) {
      for (auto& b : out.binders) {
        std::string name = b.name;
        // Avoid capturing a renamed free variable.
        int k = 0;
        while (targets.count(name)) name = b.name + "@" + std::to_string(++k);
        bound[b.name] = name;
        b.name = name;
        if (!b.sort.empty()) b.sort = sort(b.sort);
      }
    }
    for (auto& t : out.terms) t = term(t, bound);
    if (f.kind == Formula::Kind::Pred && r.fopeq) {
      auto it = r.fopeq->preds.find(f.name);
      if (it == r.fopeq->preds.end()) throw StructuralError("pred " + f.name + " outside morphism domain");
      out.name = it->second;
    }
    if (f.kind == Formula::Kind::InSort || f.kind == Formula::Kind::SortEq) out.name = sort(f.name);
    for (auto& s : out.subs) s = formula(s, bound, targets);
    return out;
  }
};

}  // namespace

Term rename_term(const Term& t, const Renaming& r) { return Renamer{r}.term(t, {}); }

Formula rename_formula(const Formula& f, const Renaming& r) {
  std::set<std::string> targets;
  for (const auto& [name, primed] : free_vars(f)) targets.insert(Renamer{r}.var(name));
  return Renamer{r}.formula(f, {}, targets);
}

Formula translate_formula(const FopeqMorphism& m, const Formula& f) {
  Renaming r;
  r.fopeq = &m;
  return rename_formula(f, r);
}

}  // namespace evtforge
