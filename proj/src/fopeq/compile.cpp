#include <algorithm>

#include "evtforge/compile.h"

namespace evtforge {

int SlotLayout::add(const std::string& key) {
  auto [it, fresh] = index.emplace(key, size);
  if (fresh) ++size;
  return it->second;
}

std::optional<int> SlotLayout::find(const std::string& key) const {
  auto it = index.find(key);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

CompiledFormula::CompiledFormula(const Formula& f, const FiniteAlgebra& a, const SlotLayout& layout)
    : a_(&a), layout_(&layout), frame_size_(layout.size), bound_(a.bound) {
  root_ = formula(f, {});
  std::sort(slots_.begin(), slots_.end());
  slots_.erase(std::unique(slots_.begin(), slots_.end()), slots_.end());

  if (f.kind == Formula::Kind::Eq) {
    const FNode& eq = fnodes_[root_];
    for (int side = 0; side < 2; ++side) {
      const TNode& lhs = tnodes_[eq.terms[side]];
      if (lhs.op != TNode::Slot || lhs.slot >= layout.size) continue;
      std::vector<int> deps;
      std::vector<int> stack{eq.terms[1 - side]};
      bool self = false;
      while (!stack.empty()) {
        const TNode& n = tnodes_[stack.back()];
        stack.pop_back();
        if (n.op == TNode::Slot) {
          if (n.slot == lhs.slot) self = true;
          deps.push_back(n.slot);
        }
        for (int k : n.kids) stack.push_back(k);
      }
      if (!self) defs_.push_back({lhs.slot, eq.terms[1 - side], deps});
    }
  }
  a_ = nullptr;
  layout_ = nullptr;
}

int CompiledFormula::term(const Term& t, const std::map<std::string, int>& bound) {
  TNode n{};
  switch (t.kind) {
    case Term::Kind::Int:
      n.op = TNode::Const;
      n.v = (t.value < -a_->bound || t.value > a_->bound) ? kUndef : t.value;
      break;
    case Term::Kind::Bool:
      n.op = TNode::Const;
      n.v = t.value;
      break;
    case Term::Kind::Var: {
      n.op = TNode::Slot;
      auto b = bound.find(t.name);
      if (b != bound.end() && !t.primed) {
        n.slot = b->second;
      } else {
        auto s = layout_->find(valuation_key(t.name, t.primed));
        if (!s) throw StructuralError("no slot for " + valuation_key(t.name, t.primed));
        n.slot = *s;
        slots_.push_back(*s);
      }
      break;
    }
    case Term::Kind::App: {
      if (t.args.size() == 2 && (t.name == "+" || t.name == "-" || t.name == "*")) {
        n.op = t.name == "+" ? TNode::Add : t.name == "-" ? TNode::Sub : TNode::Mul;
      } else if (t.args.size() == 1 && t.name == "neg") {
        n.op = TNode::Neg;
      } else {
        auto it = a_->ops.find(t.name);
        if (it == a_->ops.end()) throw StructuralError("algebra lacks op " + t.name);
        n.op = TNode::Table;
        n.table = &it->second;
        std::int64_t stride = 1;
        n.strides.assign(t.args.size(), 0);
        n.offsets.assign(t.args.size(), 0);
        for (size_t i = t.args.size(); i-- > 0;) {
          const auto& s = it->second.args[i];
          n.strides[i] = stride;
          n.offsets[i] = s == kIntSort ? a_->bound : 0;
          stride *= a_->carrier_size(s);
        }
      }
      for (const auto& arg : t.args) n.kids.push_back(term(arg, bound));
      break;
    }
  }
  tnodes_.push_back(std::move(n));
  return int(tnodes_.size()) - 1;
}

int CompiledFormula::formula(const Formula& f, std::map<std::string, int> bound) {
  using K = Formula::Kind;
  FNode n{};
  switch (f.kind) {
    case K::True: n.op = FNode::True; break;
    case K::False: n.op = FNode::False; break;
    case K::Eq: n.op = FNode::Eq; break;
    case K::Ne: n.op = FNode::Ne; break;
    case K::Lt: n.op = FNode::Lt; break;
    case K::Le: n.op = FNode::Le; break;
    case K::Gt: n.op = FNode::Gt; break;
    case K::Ge: n.op = FNode::Ge; break;
    case K::In: n.op = FNode::In; break;
    case K::SortEq:
      n.op = FNode::SortEq;
      n.hi = a_->carrier_size(f.name);
      break;
    case K::InSort:
      n.op = f.name == "NAT" ? FNode::NonNeg : FNode::Defined;
      break;
    case K::Pred: {
      auto it = a_->preds.find(f.name);
      if (it == a_->preds.end()) throw StructuralError("algebra lacks pred " + f.name);
      n.op = FNode::Pred;
      n.table = &it->second;
      std::int64_t stride = 1;
      n.strides.assign(f.terms.size(), 0);
      n.offsets.assign(f.terms.size(), 0);
      for (size_t i = f.terms.size(); i-- > 0;) {
        const auto& s = it->second.args[i];
        n.strides[i] = stride;
        n.offsets[i] = s == kIntSort ? a_->bound : 0;
        stride *= a_->carrier_size(s);
      }
      break;
    }
    case K::Not: n.op = FNode::Not; break;
    case K::And: n.op = FNode::And; break;
    case K::Or: n.op = FNode::Or; break;
    case K::Implies: n.op = FNode::Implies; break;
    case K::Iff: n.op = FNode::Iff; break;
    case K::Forall: case K::Exists: {
      // Nested binders become a chain of single-binder nodes.
      if (f.binders.empty()) return formula(f.subs[0], bound);
      const Binder& b = f.binders[0];
      if (b.sort.empty()) throw StructuralError("unsorted binder " + b.name);
      n.op = f.kind == K::Forall ? FNode::Forall : FNode::Exists;
      n.slot = frame_size_++;
      auto carrier = a_->carrier(b.sort);
      n.lo = carrier.front();
      n.hi = carrier.back();
      bound[b.name] = n.slot;
      Formula rest = f;
      rest.binders.erase(rest.binders.begin());
      n.kids.push_back(formula(rest, bound));
      fnodes_.push_back(std::move(n));
      return int(fnodes_.size()) - 1;
    }
  }
  for (const auto& t : f.terms) n.terms.push_back(term(t, bound));
  for (const auto& s : f.subs) n.kids.push_back(formula(s, bound));
  fnodes_.push_back(std::move(n));
  return int(fnodes_.size()) - 1;
}

Value CompiledFormula::teval(int idx, Value* frame) const {
  const TNode& n = tnodes_[idx];
  switch (n.op) {
    case TNode::Const: return n.v;
    case TNode::Slot: return frame[n.slot];
    case TNode::Neg: {
      Value x = teval(n.kids[0], frame);
      if (x == kUndef) return kUndef;
      return (-x < -bound_ || -x > bound_) ? kUndef : -x;
    }
    default: break;
  }
  if (n.op == TNode::Table) {
    std::int64_t at = 0;
    for (size_t i = 0; i < n.kids.size(); ++i) {
      Value x = teval(n.kids[i], frame);
      if (x == kUndef) return kUndef;
      at += (x + n.offsets[i]) * n.strides[i];
    }
    return n.table->table[at];
  }
  Value x = teval(n.kids[0], frame);
  if (x == kUndef) return kUndef;
  Value y = teval(n.kids[1], frame);
  if (y == kUndef) return kUndef;
  Value r = n.op == TNode::Add ? x + y : n.op == TNode::Sub ? x - y : x * y;
  return (r < -bound_ || r > bound_) ? kUndef : r;
}

bool CompiledFormula::eval(Value* frame) const { return feval(root_, frame); }

bool CompiledFormula::feval(int idx, Value* frame) const {
  const FNode& n = fnodes_[idx];
  switch (n.op) {
    case FNode::True: return true;
    case FNode::False: return false;
    case FNode::Eq: case FNode::Ne: case FNode::Lt: case FNode::Le: case FNode::Gt: case FNode::Ge: {
      Value x = teval(n.terms[0], frame);
      if (x == kUndef) return false;
      Value y = teval(n.terms[1], frame);
      if (y == kUndef) return false;
      switch (n.op) {
        case FNode::Eq: return x == y;
        case FNode::Ne: return x != y;
        case FNode::Lt: return x < y;
        case FNode::Le: return x <= y;
        case FNode::Gt: return x > y;
        default: return x >= y;
      }
    }
    case FNode::Pred: {
      std::int64_t at = 0;
      for (size_t i = 0; i < n.terms.size(); ++i) {
        Value x = teval(n.terms[i], frame);
        if (x == kUndef) return false;
        at += (x + n.offsets[i]) * n.strides[i];
      }
      return n.table->table[at] != 0;
    }
    case FNode::In: {
      Value x = teval(n.terms[0], frame);
      if (x == kUndef) return false;
      bool hit = false;
      for (size_t i = 1; i < n.terms.size(); ++i) {
        Value y = teval(n.terms[i], frame);
        if (y == kUndef) return false;
        hit |= x == y;
      }
      return hit;
    }
    case FNode::Defined: return teval(n.terms[0], frame) != kUndef;
    case FNode::NonNeg: {
      Value x = teval(n.terms[0], frame);
      return x != kUndef && x >= 0;
    }
    case FNode::SortEq: {
      std::uint64_t seen = 0;
      bool wide = n.hi > 64;
      std::vector<bool> seen_wide(wide ? size_t(n.hi) : 0);
      for (int t : n.terms) {
        Value y = teval(t, frame);
        if (y == kUndef) return false;
        if (wide) seen_wide[size_t(y)] = true;
        else seen |= 1ull << y;
      }
      if (wide) return std::all_of(seen_wide.begin(), seen_wide.end(), [](bool b) { return b; });
      return n.hi == 64 ? seen == ~0ull : seen == (1ull << n.hi) - 1;
    }
    case FNode::Not: return !feval(n.kids[0], frame);
    case FNode::And:
      for (int k : n.kids)
        if (!feval(k, frame)) return false;
      return true;
    case FNode::Or:
      for (int k : n.kids)
        if (feval(k, frame)) return true;
      return false;
    case FNode::Implies: return !feval(n.kids[0], frame) || feval(n.kids[1], frame);
    case FNode::Iff: return feval(n.kids[0], frame) == feval(n.kids[1], frame);
    case FNode::Forall:
      for (Value v = n.lo; v <= n.hi; ++v) {
        frame[n.slot] = v;
        if (!feval(n.kids[0], frame)) return false;
      }
      return true;
    case FNode::Exists:
      for (Value v = n.lo; v <= n.hi; ++v) {
        frame[n.slot] = v;
        if (feval(n.kids[0], frame)) return true;
      }
      return false;
  }
  return false;
}

// ---- search ----

ConstraintSearch::ConstraintSearch(std::vector<SearchSlot> order, std::vector<const CompiledFormula*> constraints)
    : order_(std::move(order)) {
  std::map<int, int> level_of;
  for (size_t i = 0; i < order_.size(); ++i) level_of[order_[i].slot] = int(i);
  int frame = 0;
  for (const auto& s : order_) frame = std::max(frame, s.slot + 1);
  checks_.resize(order_.size());
  definers_.assign(order_.size(), {nullptr, nullptr});
  for (const auto* c : constraints) {
    frame = std::max(frame, c->frame_size());
    int level = -1;
    for (int s : c->slots()) {
      auto it = level_of.find(s);
      if (it == level_of.end()) throw StructuralError("constraint reads a slot outside the search");
      level = std::max(level, it->second);
    }
    if (level < 0) {
      upfront_.push_back(c);
      continue;
    }
    bool used = false;
    for (const auto& d : c->definitions()) {
      if (level_of.at(d.slot) != level || definers_[level].first) continue;
      bool earlier = std::all_of(d.deps.begin(), d.deps.end(), [&](int s) { return level_of.at(s) < level; });
      if (!earlier) continue;
      definers_[level] = {c, &d};
      used = true;
      break;
    }
    if (!used) checks_[level].push_back(c);
  }
  frame_.assign(size_t(frame), 0);
}

void ConstraintSearch::run(const std::function<bool(const Value*)>& visit) {
  for (const auto* c : upfront_)
    if (!c->eval(frame_.data())) return;
  descend(0, visit);
}

bool ConstraintSearch::descend(size_t level, const std::function<bool(const Value*)>& visit) {
  if (level == order_.size()) return visit(frame_.data());
  const SearchSlot& s = order_[level];
  auto try_value = [&](Value v) {
    ++nodes_;
    frame_[size_t(s.slot)] = v;
    for (const auto* c : checks_[level])
      if (!c->eval(frame_.data())) return true;
    return descend(level + 1, visit);
  };
  if (const auto& [c, d] = definers_[level]; c) {
    Value v = c->eval_definition(*d, frame_.data());
    if (v == kUndef || v < s.lo || v > s.hi) return true;
    return try_value(v);
  }
  for (Value v = s.lo; v <= s.hi; ++v)
    if (!try_value(v)) return false;
  return true;
}

}  // namespace evtforge
