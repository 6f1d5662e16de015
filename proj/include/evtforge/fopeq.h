#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "evtforge/error.h"

namespace evtforge {

using Value = std::int64_t;
inline constexpr Value kUndef = INT64_MIN;

inline const std::string kIntSort = "Int";
inline const std::string kBoolSort = "Bool";

bool is_builtin_sort(const std::string& s);

struct OpDecl {
  std::string name;
  std::vector<std::string> args;
  std::string result;
  auto operator<=>(const OpDecl&) const = default;
};

struct PredDecl {
  std::string name;
  std::vector<std::string> args;
  auto operator<=>(const PredDecl&) const = default;
};

// Int and Bool are always present and never listed in `sorts`.
struct FopeqSignature {
  std::set<std::string> sorts;
  std::map<std::string, OpDecl> ops;
  std::map<std::string, PredDecl> preds;

  bool has_sort(const std::string& s) const { return is_builtin_sort(s) || sorts.count(s) > 0; }
  void validate() const;
  bool operator==(const FopeqSignature&) const = default;
};

// Name-based union; a name declared on both sides must have the same profile.
FopeqSignature fopeq_union(const FopeqSignature& a, const FopeqSignature& b);
bool fopeq_includes(const FopeqSignature& big, const FopeqSignature& small);

struct Term {
  enum class Kind : std::uint8_t { Var, App, Int, Bool };
  Kind kind = Kind::Int;
  std::string name;
  bool primed = false;
  Value value = 0;
  std::vector<Term> args;

  static Term var(std::string n, bool primed = false);
  static Term app(std::string op, std::vector<Term> args = {});
  static Term integer(Value v);
  static Term boolean(bool b);

  bool operator==(const Term& o) const { return (*this <=> o) == 0; }
  std::strong_ordering operator<=>(const Term& o) const;
};

struct Binder {
  std::string name;
  std::string sort;  // empty until resolved
  auto operator<=>(const Binder&) const = default;
};

struct Formula {
  enum class Kind : std::uint8_t {
    True, False, Eq, Ne, Lt, Le, Gt, Ge,
    Pred,
    In,      // terms[0] ∈ {terms[1..]}
    InSort,  // terms[0] ∈ name; name is NAT, INT, BOOL or a user sort
    SortEq,  // name = {terms...}
    Not, And, Or, Implies, Iff, Forall, Exists
  };
  Kind kind = Kind::True;
  std::string name;
  std::vector<Term> terms;
  std::vector<Formula> subs;
  std::vector<Binder> binders;

  static Formula truth() { return Formula{}; }
  static Formula falsity();
  static Formula cmp(Kind k, Term a, Term b);
  static Formula eq(Term a, Term b) { return cmp(Kind::Eq, std::move(a), std::move(b)); }
  static Formula pred(std::string p, std::vector<Term> args);
  static Formula in_set(Term x, std::vector<Term> elems);
  static Formula in_sort(Term x, std::string sort);
  static Formula sort_eq(std::string sort, std::vector<Term> elems);
  static Formula negate(Formula f);
  static Formula conj(std::vector<Formula> fs);  // raw And node, no elision
  static Formula disj(std::vector<Formula> fs);
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula quant(Kind k, std::vector<Binder> bs, Formula body);

  bool is_atom() const;
  bool operator==(const Formula& o) const { return (*this <=> o) == 0; }
  std::strong_ordering operator<=>(const Formula& o) const;
};

// The F.* helpers: F.and elides empty and singleton conjunctions, F.exists elides
// an empty binder list.
Formula f_and(std::vector<Formula> fs);
Formula f_or(std::vector<Formula> fs);
Formula f_exists(std::vector<Binder> bs, Formula body);
Formula f_lt(Term a, Term b);
Formula f_leq(Term a, Term b);

// F.ι: primes the listed unprimed free occurrences.
Term prime_term(const Term& t, const std::set<std::string>& names);
Formula prime_formula(const Formula& f, const std::set<std::string>& names);

using VarKey = std::pair<std::string, bool>;  // name, primed
std::set<VarKey> free_vars(const Term& t);
std::set<VarKey> free_vars(const Formula& f);
std::set<std::string> ops_used(const Formula& f);

// Flatten conjunctions, drop `true`, sort, dedupe. Comparison helper only.
std::vector<Formula> conjuncts(const Formula& f);
Formula canonical(const Formula& f);

std::string to_string(const Term& t);
std::string to_string(const Formula& f);
std::string sort_display(const std::string& s);

// Display type of a declared variable or constant: ℕ, ℤ, BOOL, a sort, or a literal set.
struct TypeExpr {
  enum class Kind : std::uint8_t { Nat, Integer, Boolean, Sort, Set };
  Kind kind = Kind::Integer;
  std::string sort;
  std::vector<Term> elems;
  bool operator==(const TypeExpr&) const = default;
};
std::string to_string(const TypeExpr& t);
// Membership atom `x ∈ T`; `true` for plain ℤ/BOOL/sort types.
Formula typing_atom(const Term& x, const TypeExpr& t);
bool typing_is_trivial(const TypeExpr& t);

// Sorts of free variables; primed occurrences share the unprimed sort.
using VarSorts = std::map<std::string, std::string>;

std::string sort_of(const Term& t, const FopeqSignature& sig, const VarSorts& vars);
void check_formula(const Formula& f, const FopeqSignature& sig, const VarSorts& vars);
// Turns bare names of 0-ary ops into App nodes, infers binder sorts, then checks.
Term resolve_term(const Term& t, const FopeqSignature& sig, const VarSorts& vars);
Formula resolve_formula(const Formula& f, const FopeqSignature& sig, const VarSorts& vars);

struct FopeqMorphism {
  std::map<std::string, std::string> sorts;  // user sorts only; builtins map to themselves
  std::map<std::string, std::string> ops;
  std::map<std::string, std::string> preds;

  std::string sort(const std::string& s) const;
  static FopeqMorphism identity(const FopeqSignature& sig);
  bool operator==(const FopeqMorphism&) const = default;
};
FopeqMorphism compose(const FopeqMorphism& second, const FopeqMorphism& first);
void validate(const FopeqMorphism& m, const FopeqSignature& src, const FopeqSignature& tgt);

// Symbol renaming shared by FOPEQ and EVT translation. Variables absent from
// `vars` keep their names unless `strict_vars` is set.
struct Renaming {
  const FopeqMorphism* fopeq = nullptr;
  const std::map<std::string, std::string>* vars = nullptr;
  bool strict_vars = false;
};
Term rename_term(const Term& t, const Renaming& r);
Formula rename_formula(const Formula& f, const Renaming& r);

Formula translate_formula(const FopeqMorphism& m, const Formula& f);

struct OpTable {
  std::vector<std::string> args;
  std::string result;
  std::vector<Value> table;  // row-major over argument carriers
  auto operator<=>(const OpTable&) const = default;
};

struct PredTable {
  std::vector<std::string> args;
  std::vector<std::uint8_t> table;
  auto operator<=>(const PredTable&) const = default;
};

// Int is −bound..bound, Bool is {0,1}, user sorts are 0..n−1.
struct FiniteAlgebra {
  Value bound = 3;
  std::map<std::string, std::int64_t> carrier_sizes;
  std::map<std::string, OpTable> ops;
  std::map<std::string, PredTable> preds;

  std::int64_t carrier_size(const std::string& sort) const;
  std::vector<Value> carrier(const std::string& sort) const;
  bool in_carrier(const std::string& sort, Value v) const;
  std::int64_t index_of(const std::string& sort, Value v) const;
  std::string describe() const;

  auto operator<=>(const FiniteAlgebra&) const = default;
  bool operator==(const FiniteAlgebra&) const = default;
};

std::string show_value(const std::string& sort, Value v);
std::optional<Value> parse_value(const std::string& sort, const std::string& text);

FiniteAlgebra algebra_reduct(const FopeqMorphism& m, const FopeqSignature& src, const FiniteAlgebra& a);

// Keys are variable names, with a trailing ' for primed occurrences.
using Valuation = std::map<std::string, Value>;
std::string valuation_key(const std::string& name, bool primed);

Value eval_term(const Term& t, const FiniteAlgebra& a, const Valuation& val);
bool eval_formula(const Formula& f, const FiniteAlgebra& a, const Valuation& val);

struct Bounds {
  Value bound = 3;
  std::int64_t default_carrier = 2;
  std::map<std::string, std::int64_t> carriers;
  std::map<std::string, std::string> pins;  // 0-ary op name → value text
  std::uint64_t ceiling = 1ull << 20;
};

std::vector<FiniteAlgebra> enumerate_algebras(const FopeqSignature& sig, const Bounds& bounds,
                                              const std::vector<Formula>& axioms = {});

struct FopeqPushout {
  FopeqSignature sig;
  FopeqMorphism inj1;
  FopeqMorphism inj2;
};
FopeqPushout fopeq_pushout(const FopeqSignature& base, const FopeqSignature& s1, const FopeqSignature& s2,
                           const FopeqMorphism& m1, const FopeqMorphism& m2);

// Quotient of a disjoint union by least equivalence. Each symbol is (side, name),
// side 0 for the first target and 1 for the second. Returns the canonical name of
// every symbol; names prefer side 0, then side 1, with "#k" on clashes.
std::map<std::pair<int, std::string>, std::string> name_pushout(
    const std::vector<std::string>& side0, const std::vector<std::string>& side1,
    const std::vector<std::pair<std::string, std::string>>& glue,
    const std::set<std::string>& taken = {});

}  // namespace evtforge
