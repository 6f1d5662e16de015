#include <sstream>

#include "evtforge/fopeq.h"

namespace evtforge {

std::int64_t FiniteAlgebra::carrier_size(const std::string& sort) const {
  if (sort == kIntSort) return 2 * bound + 1;
  if (sort == kBoolSort) return 2;
  auto it = carrier_sizes.find(sort);
  if (it == carrier_sizes.end()) throw StructuralError("algebra has no carrier for " + sort);
  return it->second;
}

std::vector<Value> FiniteAlgebra::carrier(const std::string& sort) const {
  std::vector<Value> out;
  if (sort == kIntSort) {
    for (Value v = -bound; v <= bound; ++v) out.push_back(v);
  } else {
    auto n = carrier_size(sort);
    for (Value v = 0; v < n; ++v) out.push_back(v);
  }
  return out;
}

bool FiniteAlgebra::in_carrier(const std::string& sort, Value v) const {
  if (v == kUndef) return false;
  if (sort == kIntSort) return v >= -bound && v <= bound;
  return v >= 0 && v < carrier_size(sort);
}

std::int64_t FiniteAlgebra::index_of(const std::string& sort, Value v) const {
  return sort == kIntSort ? v + bound : v;
}

std::string FiniteAlgebra::describe() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [n, op] : ops) {
    if (!first) os << ", ";
    first = false;
    os << n << '=';
    if (op.args.empty()) {
      os << show_value(op.result, op.table[0]);
    } else {
      os << '[';
      for (size_t i = 0; i < op.table.size(); ++i) os << (i ? " " : "") << show_value(op.result, op.table[i]);
      os << ']';
    }
  }
  for (const auto& [n, p] : preds) {
    if (!first) os << ", ";
    first = false;
    os << n << "=[";
    for (size_t i = 0; i < p.table.size(); ++i) os << (i ? " " : "") << int(p.table[i]);
    os << ']';
  }
  for (const auto& [s, k] : carrier_sizes) {
    if (!first) os << ", ";
    first = false;
    os << '|' << s << "|=" << k;
  }
  return first ? "(no symbols)" : os.str();
}

std::string show_value(const std::string& sort, Value v) {
  if (v == kUndef) return "⊥";
  if (sort == kIntSort) return std::to_string(v);
  if (sort == kBoolSort) return v ? "TRUE" : "FALSE";
  return sort + "." + std::to_string(v);
}

std::optional<Value> parse_value(const std::string& sort, const std::string& text) {
  try {
    if (sort == kBoolSort) {
      if (text == "TRUE" || text == "true" || text == "1") return 1;
      if (text == "FALSE" || text == "false" || text == "0") return 0;
      return std::nullopt;
    }
    std::string t = text;
    if (sort != kIntSort && t.rfind(sort + ".", 0) == 0) t = t.substr(sort.size() + 1);
    size_t used = 0;
    Value v = std::stoll(t, &used);
    if (used != t.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

FiniteAlgebra algebra_reduct(const FopeqMorphism& m, const FopeqSignature& src, const FiniteAlgebra& a) {
  FiniteAlgebra r;
  r.bound = a.bound;
  for (const auto& s : src.sorts) r.carrier_sizes[s] = a.carrier_size(m.sort(s));
  for (const auto& [n, op] : src.ops) {
    auto it = a.ops.find(m.ops.at(n));
    if (it == a.ops.end()) throw StructuralError("algebra lacks op " + m.ops.at(n));
    r.ops[n] = OpTable{op.args, op.result, it->second.table};
  }
  for (const auto& [n, p] : src.preds) {
    auto it = a.preds.find(m.preds.at(n));
    if (it == a.preds.end()) throw StructuralError("algebra lacks pred " + m.preds.at(n));
    r.preds[n] = PredTable{p.args, it->second.table};
  }
  return r;
}

std::string valuation_key(const std::string& name, bool primed) { return primed ? name + "'" : name; }

// ---- direct evaluation ----

namespace {

Value arith(const std::string& op, Value x, Value y, Value bound) {
  if (x == kUndef || y == kUndef) return kUndef;
  Value r = 0;
  if (op == "+") r = x + y;
  else if (op == "-") r = x - y;
  else r = x * y;
  return (r < -bound || r > bound) ? kUndef : r;
}

struct Evaluator {
  const FiniteAlgebra& a;

  Value term(const Term& t, const Valuation& val) const {
    switch (t.kind) {
      case Term::Kind::Int: return (t.value < -a.bound || t.value > a.bound) ? kUndef : t.value;
      case Term::Kind::Bool: return t.value;
      case Term::Kind::Var: {
        auto it = val.find(valuation_key(t.name, t.primed));
        if (it == val.end()) throw StructuralError("no binding for " + valuation_key(t.name, t.primed));
        return it->second;
      }
      case Term::Kind::App: {
        if (t.args.size() == 2 && (t.name == "+" || t.name == "-" || t.name == "*"))
          return arith(t.name, term(t.args[0], val), term(t.args[1], val), a.bound);
        if (t.args.size() == 1 && t.name == "neg") {
          Value x = term(t.args[0], val);
          return x == kUndef ? kUndef : arith("-", 0, x, a.bound);
        }
        auto it = a.ops.find(t.name);
        if (it == a.ops.end()) throw StructuralError("algebra lacks op " + t.name);
        std::int64_t idx = 0;
        for (size_t i = 0; i < t.args.size(); ++i) {
          Value x = term(t.args[i], val);
          if (x == kUndef) return kUndef;
          const auto& s = it->second.args[i];
          idx = idx * a.carrier_size(s) + a.index_of(s, x);
        }
        return it->second.table.at(idx);
      }
    }
    return kUndef;
  }

  bool formula(const Formula& f, Valuation& val) const {
    using K = Formula::Kind;
    switch (f.kind) {
      case K::True: return true;
      case K::False: return false;
      case K::Eq: case K::Ne: case K::Lt: case K::Le: case K::Gt: case K::Ge: {
        Value x = term(f.terms[0], val), y = term(f.terms[1], val);
        if (x == kUndef || y == kUndef) return false;
        switch (f.kind) {
          case K::Eq: return x == y;
          case K::Ne: return x != y;
          case K::Lt: return x < y;
          case K::Le: return x <= y;
          case K::Gt: return x > y;
          default: return x >= y;
        }
      }
      case K::Pred: {
        auto it = a.preds.find(f.name);
        if (it == a.preds.end()) throw StructuralError("algebra lacks pred " + f.name);
        std::int64_t idx = 0;
        for (size_t i = 0; i < f.terms.size(); ++i) {
          Value x = term(f.terms[i], val);
          if (x == kUndef) return false;
          const auto& s = it->second.args[i];
          idx = idx * a.carrier_size(s) + a.index_of(s, x);
        }
        return it->second.table.at(idx) != 0;
      }
      case K::In: {
        Value x = term(f.terms[0], val);
        if (x == kUndef) return false;
        bool found = false;
        for (size_t i = 1; i < f.terms.size(); ++i) {
          Value y = term(f.terms[i], val);
          if (y == kUndef) return false;
          found |= x == y;
        }
        return found;
      }
      case K::InSort: {
        Value x = term(f.terms[0], val);
        if (x == kUndef) return false;
        if (f.name == "NAT") return x >= 0;
        return true;
      }
      case K::SortEq: {
        std::vector<Value> listed;
        for (const auto& t : f.terms) {
          Value y = term(t, val);
          if (y == kUndef) return false;
          listed.push_back(y);
        }
        for (Value c : a.carrier(f.name)) {
          bool hit = false;
          for (Value y : listed) hit |= y == c;
          if (!hit) return false;
        }
        return true;
      }
      case K::Not: return !formula(f.subs[0], val);
      case K::And:
        for (const auto& s : f.subs)
          if (!formula(s, val)) return false;
        return true;
      case K::Or:
        for (const auto& s : f.subs)
          if (formula(s, val)) return true;
        return false;
      case K::Implies: return !formula(f.subs[0], val) || formula(f.subs[1], val);
      case K::Iff: return formula(f.subs[0], val) == formula(f.subs[1], val);
      case K::Forall: case K::Exists:
        return quant(f, 0, val);
    }
    return false;
  }

  bool quant(const Formula& f, size_t i, Valuation& val) const {
    if (i == f.binders.size()) return formula(f.subs[0], val);
    const auto& b = f.binders[i];
    if (b.sort.empty()) throw StructuralError("unsorted binder " + b.name);
    auto saved = val.find(b.name) != val.end() ? std::optional<Value>(val[b.name]) : std::nullopt;
    bool exists = f.kind == Formula::Kind::Exists;
    bool result = !exists;
    for (Value v : a.carrier(b.sort)) {
      val[b.name] = v;
      bool r = quant(f, i + 1, val);
      if (exists && r) { result = true; break; }
      if (!exists && !r) { result = false; break; }
    }
    if (saved) val[b.name] = *saved;
    else val.erase(b.name);
    return result;
  }
};

}  // namespace

Value eval_term(const Term& t, const FiniteAlgebra& a, const Valuation& val) { return Evaluator{a}.term(t, val); }

bool eval_formula(const Formula& f, const FiniteAlgebra& a, const Valuation& val) {
  Valuation v = val;
  return Evaluator{a}.formula(f, v);
}

// ---- enumeration ----

std::vector<FiniteAlgebra> enumerate_algebras(const FopeqSignature& sig, const Bounds& bounds,
                                              const std::vector<Formula>& axioms) {
  FiniteAlgebra base;
  base.bound = bounds.bound;
  for (const auto& s : sig.sorts) {
    auto it = bounds.carriers.find(s);
    base.carrier_sizes[s] = it != bounds.carriers.end() ? it->second : bounds.default_carrier;
    if (base.carrier_sizes[s] < 1) throw StructuralError("carrier of " + s + " must be non-empty");
  }
  // Pins for symbols outside this signature are ignored, like carriers of absent sorts.
  for (const auto& [name, _] : bounds.pins) {
    auto it = sig.ops.find(name);
    if (it != sig.ops.end() && !it->second.args.empty())
      throw StructuralError("pinned symbol " + name + " is not a constant");
  }

  // Each free table cell is one digit of a mixed-radix counter.
  struct Cell {
    bool is_op;
    std::string name;
    size_t index;
    std::vector<Value> choices;
  };
  std::vector<Cell> cells;
  for (const auto& [n, op] : sig.ops) {
    std::int64_t rows = 1;
    for (const auto& s : op.args) rows *= base.carrier_size(s);
    base.ops[n] = OpTable{op.args, op.result, std::vector<Value>(rows, 0)};
    auto pin = bounds.pins.find(n);
    if (pin != bounds.pins.end()) {
      if (!op.args.empty()) throw StructuralError("cannot pin non-constant " + n);
      auto v = parse_value(op.result, pin->second);
      if (!v || !base.in_carrier(op.result, *v)) throw StructuralError("bad pin value for " + n + ": " + pin->second);
      base.ops[n].table[0] = *v;
      continue;
    }
    for (std::int64_t r = 0; r < rows; ++r) cells.push_back({true, n, size_t(r), base.carrier(op.result)});
  }
  for (const auto& [n, p] : sig.preds) {
    std::int64_t rows = 1;
    for (const auto& s : p.args) rows *= base.carrier_size(s);
    base.preds[n] = PredTable{p.args, std::vector<std::uint8_t>(rows, 0)};
    for (std::int64_t r = 0; r < rows; ++r) cells.push_back({false, n, size_t(r), {0, 1}});
  }

  double space = 1;
  for (const auto& c : cells) space *= double(c.choices.size());
  if (space > double(bounds.ceiling)) throw CeilingError("algebra space", std::uint64_t(bounds.ceiling));

  std::vector<FiniteAlgebra> out;
  std::vector<size_t> digits(cells.size(), 0);
  while (true) {
    FiniteAlgebra a = base;
    for (size_t i = 0; i < cells.size(); ++i) {
      Value v = cells[i].choices[digits[i]];
      if (cells[i].is_op) a.ops[cells[i].name].table[cells[i].index] = v;
      else a.preds[cells[i].name].table[cells[i].index] = std::uint8_t(v);
    }
    bool ok = true;
    for (const auto& ax : axioms) {
      if (!eval_formula(ax, a, {})) { ok = false; break; }
    }
    if (ok) out.push_back(std::move(a));
    // Last cell varies fastest.
    size_t i = cells.size();
    while (i > 0) {
      --i;
      if (++digits[i] < cells[i].choices.size()) break;
      digits[i] = 0;
      if (i == 0) return out;
    }
    if (cells.empty()) return out;
  }
}

}  // namespace evtforge
