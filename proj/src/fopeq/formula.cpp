#include <algorithm>
#include <sstream>

#include "evtforge/fopeq.h"

namespace evtforge {

bool is_builtin_sort(const std::string& s) { return s == kIntSort || s == kBoolSort; }

Term Term::var(std::string n, bool primed) {
  Term t;
  t.kind = Kind::Var;
  t.name = std::move(n);
  t.primed = primed;
  return t;
}

Term Term::app(std::string op, std::vector<Term> args) {
  Term t;
  t.kind = Kind::App;
  t.name = std::move(op);
  t.args = std::move(args);
  return t;
}

Term Term::integer(Value v) {
  Term t;
  t.kind = Kind::Int;
  t.value = v;
  return t;
}

Term Term::boolean(bool b) {
  Term t;
  t.kind = Kind::Bool;
  t.value = b ? 1 : 0;
  return t;
}

namespace {

template <class T>
std::strong_ordering compare_vec(const std::vector<T>& a, const std::vector<T>& b) {
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

std::strong_ordering Term::operator<=>(const Term& o) const {
  if (auto c = kind <=> o.kind; c != 0) return c;
  if (auto c = name <=> o.name; c != 0) return c;
  if (auto c = primed <=> o.primed; c != 0) return c;
  if (auto c = value <=> o.value; c != 0) return c;
  return compare_vec(args, o.args);
}

std::strong_ordering Formula::operator<=>(const Formula& o) const {
  if (auto c = kind <=> o.kind; c != 0) return c;
  if (auto c = name <=> o.name; c != 0) return c;
  if (auto c = compare_vec(terms, o.terms); c != 0) return c;
  if (auto c = compare_vec(binders, o.binders); c != 0) return c;
  return compare_vec(subs, o.subs);
}

Formula Formula::falsity() {
  Formula f;
  f.kind = Kind::False;
  return f;
}

Formula Formula::cmp(Kind k, Term a, Term b) {
  Formula f;
  f.kind = k;
  f.terms = {std::move(a), std::move(b)};
  return f;
}

Formula Formula::pred(std::string p, std::vector<Term> args) {
  Formula f;
  f.kind = Kind::Pred;
  f.name = std::move(p);
  f.terms = std::move(args);
  return f;
}

Formula Formula::in_set(Term x, std::vector<Term> elems) {
  Formula f;
  f.kind = Kind::In;
  f.terms.push_back(std::move(x));
  for (auto& e : elems) f.terms.push_back(std::move(e));
  return f;
}

Formula Formula::in_sort(Term x, std::string sort) {
  Formula f;
  f.kind = Kind::InSort;
  f.name = std::move(sort);
  f.terms.push_back(std::move(x));
  return f;
}

Formula Formula::sort_eq(std::string sort, std::vector<Term> elems) {
  Formula f;
  f.kind = Kind::SortEq;
  f.name = std::move(sort);
  f.terms = std::move(elems);
  return f;
}

Formula Formula::negate(Formula g) {
  Formula f;
  f.kind = Kind::Not;
  f.subs.push_back(std::move(g));
  return f;
}

Formula Formula::conj(std::vector<Formula> fs) {
  Formula f;
  f.kind = Kind::And;
  f.subs = std::move(fs);
  return f;
}

Formula Formula::disj(std::vector<Formula> fs) {
  Formula f;
  f.kind = Kind::Or;
  f.subs = std::move(fs);
  return f;
}

Formula Formula::implies(Formula a, Formula b) {
  Formula f;
  f.kind = Kind::Implies;
  f.subs = {std::move(a), std::move(b)};
  return f;
}

Formula Formula::iff(Formula a, Formula b) {
  Formula f;
  f.kind = Kind::Iff;
  f.subs = {std::move(a), std::move(b)};
  return f;
}

Formula Formula::quant(Kind k, std::vector<Binder> bs, Formula body) {
  Formula f;
  f.kind = k;
  f.binders = std::move(bs);
  f.subs.push_back(std::move(body));
  return f;
}

bool Formula::is_atom() const {
  switch (kind) {
    case Kind::Eq: case Kind::Ne: case Kind::Lt: case Kind::Le: case Kind::Gt: case Kind::Ge:
    case Kind::Pred: case Kind::In: case Kind::InSort: case Kind::SortEq:
      return true;
    default:
      return false;
  }
}

Formula f_and(std::vector<Formula> fs) {
  if (fs.empty()) return Formula::truth();
  if (fs.size() == 1) return std::move(fs[0]);
  return Formula::conj(std::move(fs));
}

Formula f_or(std::vector<Formula> fs) {
  if (fs.empty()) return Formula::falsity();
  if (fs.size() == 1) return std::move(fs[0]);
  return Formula::disj(std::move(fs));
}

Formula f_exists(std::vector<Binder> bs, Formula body) {
  if (bs.empty()) return body;
  return Formula::quant(Formula::Kind::Exists, std::move(bs), std::move(body));
}

Formula f_lt(Term a, Term b) { return Formula::cmp(Formula::Kind::Lt, std::move(a), std::move(b)); }
Formula f_leq(Term a, Term b) { return Formula::cmp(Formula::Kind::Le, std::move(a), std::move(b)); }

namespace {

Term prime_term_bound(const Term& t, const std::set<std::string>& names, const std::set<std::string>& bound) {
  Term r = t;
  if (t.kind == Term::Kind::Var) {
    if (!t.primed && names.count(t.name) && !bound.count(t.name)) r.primed = true;
    return r;
  }
  for (auto& a : r.args) a = prime_term_bound(a, names, bound);
  return r;
}

Formula prime_formula_bound(const Formula& f, const std::set<std::string>& names, std::set<std::string> bound) {
  Formula r = f;
  for (const auto& b : f.binders) bound.insert(b.name);
  for (auto& t : r.terms) t = prime_term_bound(t, names, bound);
  for (auto& s : r.subs) s = prime_formula_bound(s, names, bound);
  return r;
}

void collect_vars(const Term& t, const std::set<std::string>& bound, std::set<VarKey>& out) {
  if (t.kind == Term::Kind::Var) {
    if (!(bound.count(t.name) && !t.primed)) out.insert({t.name, t.primed});
    return;
  }
  for (const auto& a : t.args) collect_vars(a, bound, out);
}

void collect_vars(const Formula& f, std::set<std::string> bound, std::set<VarKey>& out) {
  for (const auto& b : f.binders) bound.insert(b.name);
  for (const auto& t : f.terms) collect_vars(t, bound, out);
  for (const auto& s : f.subs) collect_vars(s, bound, out);
}

void collect_ops(const Term& t, std::set<std::string>& out) {
  if (t.kind == Term::Kind::App) out.insert(t.name);
  for (const auto& a : t.args) collect_ops(a, out);
}

void collect_ops(const Formula& f, std::set<std::string>& out) {
  for (const auto& t : f.terms) collect_ops(t, out);
  for (const auto& s : f.subs) collect_ops(s, out);
}

}  // namespace

Term prime_term(const Term& t, const std::set<std::string>& names) { return prime_term_bound(t, names, {}); }

Formula prime_formula(const Formula& f, const std::set<std::string>& names) {
  return prime_formula_bound(f, names, {});
}

std::set<VarKey> free_vars(const Term& t) {
  std::set<VarKey> out;
  collect_vars(t, {}, out);
  return out;
}

std::set<VarKey> free_vars(const Formula& f) {
  std::set<VarKey> out;
  collect_vars(f, {}, out);
  return out;
}

std::set<std::string> ops_used(const Formula& f) {
  std::set<std::string> out;
  collect_ops(f, out);
  return out;
}

std::vector<Formula> conjuncts(const Formula& f) {
  std::vector<Formula> out;
  if (f.kind == Formula::Kind::And) {
    for (const auto& s : f.subs) {
      auto inner = conjuncts(s);
      out.insert(out.end(), inner.begin(), inner.end());
    }
  } else if (f.kind != Formula::Kind::True) {
    out.push_back(f);
  }
  return out;
}

Formula canonical(const Formula& f) {
  auto cs = conjuncts(f);
  std::sort(cs.begin(), cs.end());
  cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
  return f_and(std::move(cs));
}

// ---- printing ----

namespace {

int term_prec(const Term& t) {
  if (t.kind != Term::Kind::App) return (t.kind == Term::Kind::Int && t.value < 0) ? 3 : 4;
  if (t.args.size() == 2 && (t.name == "+" || t.name == "-")) return 1;
  if (t.args.size() == 2 && t.name == "*") return 2;
  if (t.name == "neg") return 3;
  return 4;
}

void print_term(std::ostream& os, const Term& t, int ctx) {
  bool paren = term_prec(t) < ctx;
  if (paren) os << '(';
  switch (t.kind) {
    case Term::Kind::Var:
      os << t.name << (t.primed ? "′" : "");
      break;
    case Term::Kind::Int:
      os << t.value;
      break;
    case Term::Kind::Bool:
      os << (t.value ? "TRUE" : "FALSE");
      break;
    case Term::Kind::App:
      if (t.args.size() == 2 && (t.name == "+" || t.name == "-" || t.name == "*")) {
        int p = term_prec(t);
        print_term(os, t.args[0], p);
        os << t.name;
        print_term(os, t.args[1], p + 1);
      } else if (t.name == "neg" && t.args.size() == 1) {
        os << '-';
        print_term(os, t.args[0], 4);
      } else {
        os << t.name;
        if (!t.args.empty()) {
          os << '(';
          for (size_t i = 0; i < t.args.size(); ++i) {
            if (i) os << ',';
            print_term(os, t.args[i], 0);
          }
          os << ')';
        }
      }
      break;
  }
  if (paren) os << ')';
}

int formula_prec(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Forall: case K::Exists: return 0;
    case K::Iff: return 1;
    case K::Implies: return 2;
    case K::Or: return 3;
    case K::And: return 4;
    case K::Not: return 5;
    default: return 6;
  }
}

const char* cmp_symbol(Formula::Kind k) {
  using K = Formula::Kind;
  switch (k) {
    case K::Eq: return "=";
    case K::Ne: return "≠";
    case K::Lt: return "<";
    case K::Le: return "≤";
    case K::Gt: return ">";
    case K::Ge: return "≥";
    default: return "?";
  }
}

void print_list(std::ostream& os, const std::vector<Term>& ts, size_t from) {
  os << '{';
  for (size_t i = from; i < ts.size(); ++i) {
    if (i > from) os << ',';
    print_term(os, ts[i], 0);
  }
  os << '}';
}

void print_formula(std::ostream& os, const Formula& f, int ctx) {
  using K = Formula::Kind;
  int p = formula_prec(f);
  bool paren = p < ctx;
  if (paren) os << '(';
  switch (f.kind) {
    case K::True: os << "true"; break;
    case K::False: os << "false"; break;
    case K::Eq: case K::Ne: case K::Lt: case K::Le: case K::Gt: case K::Ge:
      print_term(os, f.terms[0], 0);
      os << ' ' << cmp_symbol(f.kind) << ' ';
      print_term(os, f.terms[1], 0);
      break;
    case K::Pred:
      print_term(os, Term::app(f.name, f.terms), 0);
      break;
    case K::In:
      print_term(os, f.terms[0], 0);
      os << " ∈ ";
      print_list(os, f.terms, 1);
      break;
    case K::InSort:
      print_term(os, f.terms[0], 0);
      os << " ∈ " << sort_display(f.name);
      break;
    case K::SortEq:
      os << f.name << " = ";
      print_list(os, f.terms, 0);
      break;
    case K::Not:
      os << "¬";
      print_formula(os, f.subs[0], 6);
      break;
    case K::And: case K::Or: {
      const char* op = f.kind == K::And ? " ∧ " : " ∨ ";
      if (f.subs.empty()) {
        os << (f.kind == K::And ? "true" : "false");
        break;
      }
      for (size_t i = 0; i < f.subs.size(); ++i) {
        if (i) os << op;
        print_formula(os, f.subs[i], p + 1);
      }
      break;
    }
    case K::Implies:
      print_formula(os, f.subs[0], p + 1);
      os << " ⇒ ";
      print_formula(os, f.subs[1], p);
      break;
    case K::Iff:
      print_formula(os, f.subs[0], p + 1);
      os << " ⇔ ";
      print_formula(os, f.subs[1], p + 1);
      break;
    case K::Forall: case K::Exists:
      os << (f.kind == K::Forall ? "∀" : "∃");
      for (size_t i = 0; i < f.binders.size(); ++i) {
        if (i) os << ',';
        os << f.binders[i].name;
        if (!f.binders[i].sort.empty()) os << ':' << f.binders[i].sort;
      }
      os << "·";
      print_formula(os, f.subs[0], 0);
      break;
  }
  if (paren) os << ')';
}

}  // namespace

std::string to_string(const Term& t) {
  std::ostringstream os;
  print_term(os, t, 0);
  return os.str();
}

std::string to_string(const Formula& f) {
  std::ostringstream os;
  print_formula(os, f, 0);
  return os.str();
}

std::string sort_display(const std::string& s) {
  if (s == "NAT") return "ℕ";
  if (s == "INT") return "ℤ";
  return s;
}

std::string to_string(const TypeExpr& t) {
  switch (t.kind) {
    case TypeExpr::Kind::Nat: return "ℕ";
    case TypeExpr::Kind::Integer: return "ℤ";
    case TypeExpr::Kind::Boolean: return "BOOL";
    case TypeExpr::Kind::Sort: return t.sort;
    case TypeExpr::Kind::Set: {
      std::string s = "{";
      for (size_t i = 0; i < t.elems.size(); ++i) {
        if (i) s += ",";
        s += to_string(t.elems[i]);
      }
      return s + "}";
    }
  }
  return "?";
}

bool typing_is_trivial(const TypeExpr& t) {
  return t.kind == TypeExpr::Kind::Integer || t.kind == TypeExpr::Kind::Boolean ||
         t.kind == TypeExpr::Kind::Sort;
}

Formula typing_atom(const Term& x, const TypeExpr& t) {
  switch (t.kind) {
    case TypeExpr::Kind::Nat:
      return Formula::cmp(Formula::Kind::Ge, x, Term::integer(0));
    case TypeExpr::Kind::Set:
      return Formula::in_set(x, t.elems);
    default:
      return Formula::truth();
  }
}

}  // namespace evtforge
