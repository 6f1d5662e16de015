#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "evtforge/fopeq.h"

namespace evtforge {

// Maps valuation keys ("x", "x'") to frame slots.
struct SlotLayout {
  std::map<std::string, int> index;
  int size = 0;

  int add(const std::string& key);
  std::optional<int> find(const std::string& key) const;
};

// A formula compiled against one algebra and one slot layout. Bound variables
// get private slots past the layout.
class CompiledFormula {
 public:
  // The algebra must outlive the compiled formula.
  CompiledFormula(const Formula& f, const FiniteAlgebra& a, const SlotLayout& layout);

  bool eval(Value* frame) const;
  int frame_size() const { return frame_size_; }
  const std::vector<int>& slots() const { return slots_; }

  // Readings of a top-level `slot = term` where the term does not read `slot`.
  struct Definition {
    int slot;
    int term;
    std::vector<int> deps;
  };
  const std::vector<Definition>& definitions() const { return defs_; }
  Value eval_definition(const Definition& d, Value* frame) const { return teval(d.term, frame); }

 private:
  struct TNode {
    enum Op : std::uint8_t { Slot, Const, Add, Sub, Mul, Neg, Table } op;
    Value v = 0;
    int slot = -1;
    const OpTable* table = nullptr;
    std::vector<int> kids;
    std::vector<Value> offsets;
    std::vector<std::int64_t> strides;
  };
  struct FNode {
    enum Op : std::uint8_t {
      True, False, Eq, Ne, Lt, Le, Gt, Ge, Pred, In, Defined, NonNeg, SortEq, Not, And, Or, Implies, Iff, Forall, Exists
    } op;
    std::vector<int> terms;
    std::vector<int> kids;
    const PredTable* table = nullptr;
    std::vector<Value> offsets;
    std::vector<std::int64_t> strides;
    int slot = -1;
    Value lo = 0, hi = 0;
  };

  int term(const Term& t, const std::map<std::string, int>& bound);
  int formula(const Formula& f, std::map<std::string, int> bound);
  Value teval(int n, Value* frame) const;
  bool feval(int n, Value* frame) const;

  // Only valid during construction; tables stay pointers into the algebra.
  const FiniteAlgebra* a_;
  const SlotLayout* layout_;
  std::vector<TNode> tnodes_;
  std::vector<FNode> fnodes_;
  int root_ = 0;
  int frame_size_ = 0;
  Value bound_ = 3;
  std::vector<int> slots_;
  std::vector<Definition> defs_;
};

struct SearchSlot {
  int slot;
  Value lo;
  Value hi;
};

// Backtracking enumeration of all frames satisfying every constraint. Each
// constraint is checked as soon as its last slot is bound; a constraint of the
// shape `slot = term` computes that slot instead of trying every value.
class ConstraintSearch {
 public:
  ConstraintSearch(std::vector<SearchSlot> order, std::vector<const CompiledFormula*> constraints);

  // Visits every solution; the callback returns false to stop early.
  void run(const std::function<bool(const Value*)>& visit);
  std::uint64_t nodes() const { return nodes_; }

 private:
  bool descend(size_t level, const std::function<bool(const Value*)>& visit);

  std::vector<SearchSlot> order_;
  std::vector<std::vector<const CompiledFormula*>> checks_;
  std::vector<std::pair<const CompiledFormula*, const CompiledFormula::Definition*>> definers_;
  std::vector<const CompiledFormula*> upfront_;
  std::vector<Value> frame_;
  std::uint64_t nodes_ = 0;
};

}  // namespace evtforge
