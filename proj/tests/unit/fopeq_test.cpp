#include <doctest.h>

#include "evtforge/compile.h"
#include "evtforge/error.h"
#include "support.h"

using namespace evtforge;
using namespace evtforge::test;

namespace {

FopeqSignature small_sig() {
  FopeqSignature fs;
  fs.sorts = {"S"};
  fs.ops["c"] = OpDecl{"c", {}, "S"};
  fs.ops["f"] = OpDecl{"f", {"S"}, "S"};
  fs.ops["i"] = OpDecl{"i", {}, kIntSort};
  fs.preds["P"] = PredDecl{"P", {"S"}};
  return fs;
}

Formula resolved(const std::string& text, const FopeqSignature& fs, const VarSorts& vars = {}) {
  return resolve_formula(parse_formula(text), fs, vars);
}

// Random formulas over Int variables x, y and their primed copies.
struct IntFormulas {
  Rng& rng;
  int depth_bound = 3;

  Term term(int depth) {
    switch (depth > 0 ? rng.below(6) : rng.below(3)) {
      case 0: return Term::integer(rng.below(7) - 3);
      case 1: return Term::var(rng.coin() ? "x" : "y", rng.coin());
      case 2: return Term::var("x");
      case 3: return Term::app("+", {term(depth - 1), term(depth - 1)});
      case 4: return Term::app("-", {term(depth - 1), term(depth - 1)});
      default: return Term::app("*", {term(depth - 1), term(depth - 1)});
    }
  }
  Formula formula(int depth) {
    using K = Formula::Kind;
    static const K rel[] = {K::Eq, K::Ne, K::Lt, K::Le, K::Gt, K::Ge};
    if (depth == 0 || rng.below(4) == 0) return Formula::cmp(rel[rng.below(6)], term(2), term(2));
    switch (rng.below(6)) {
      case 0: return Formula::negate(formula(depth - 1));
      case 1: return Formula::conj({formula(depth - 1), formula(depth - 1)});
      case 2: return Formula::disj({formula(depth - 1), formula(depth - 1)});
      case 3: return Formula::implies(formula(depth - 1), formula(depth - 1));
      case 4: return Formula::iff(formula(depth - 1), formula(depth - 1));
      default: {
        Formula body = Formula::conj({Formula::cmp(K::Le, Term::var("z"), Term::var("x")), formula(depth - 1)});
        return Formula::quant(rng.coin() ? K::Exists : K::Forall, {Binder{"z", kIntSort}}, body);
      }
    }
  }
};

}  // namespace

TEST_CASE("lexer accepts ASCII and Unicode spellings alike") {
  CHECK(token_texts("x <= y /\\ z /= 1 => w") == token_texts("x ≤ y ∧ z ≠ 1 ⇒ w"));
  CHECK(token_texts("a − b ∗ c") == token_texts("a - b * c"));
  auto ts = tokenize("n′ = n' + 1");
  CHECK(ts[0].primed);
  CHECK(ts[2].primed);
  CHECK_FALSE(ts[4].primed);
}

TEST_CASE("parse errors carry a position") {
  try {
    parse_formula("x ∧\n  ∧ y");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.col() == 3);
  }
  CHECK_THROWS_AS(parse_term("f(x"), ParseError);
}

TEST_CASE("formula printing reparses to the same tree") {
  for (const std::string s :
       {"x < y ∧ (y ≤ 3 ∨ ¬(x = 1))", "∀z · z ∈ S ⇒ P(f(z))", "n′ = n − 1 ∧ n > 0", "a ⇔ b ⇒ c",
        "x ∈ {1, 2, 3}", "∃u, v · u + v = 2 ∗ x"}) {
    Formula f = parse_formula(s);
    CHECK_MESSAGE(parse_formula(to_string(f)) == f, s);
  }
}

TEST_CASE("canonical form is insensitive to conjunct order and nesting") {
  Formula a = parse_formula("x > 0 ∧ (y = 1 ∧ z < 2)");
  Formula b = parse_formula("(z < 2 ∧ x > 0) ∧ y = 1");
  CHECK(canonical(a) == canonical(b));
  CHECK(canonical(a) != canonical(parse_formula("x > 0 ∧ y = 1")));
}

TEST_CASE("resolution types operators and rejects sort errors") {
  FopeqSignature fs = small_sig();
  Formula f = resolved("P(f(c)) ∧ i + 1 > 0", fs);
  CHECK(ops_used(f) == std::set<std::string>{"+", "c", "f", "i"});
  CHECK_THROWS(resolved("f(i) = c", fs));
  CHECK_THROWS(resolved("g(c) = c", fs));
}

TEST_CASE("enumeration matches the product of table counts") {
  FopeqSignature fs = small_sig();
  Bounds b;
  b.bound = 1;
  b.carriers["S"] = 2;
  // c: 2 choices, f: 2^2, P: 2^2, i: 3 (−1..1)
  auto all = enumerate_algebras(fs, b);
  CHECK(all.size() == 2 * 4 * 4 * 3);
  CHECK(std::set<FiniteAlgebra>(all.begin(), all.end()).size() == all.size());

  b.carriers["S"] = 3;
  CHECK(enumerate_algebras(fs, b).size() == 3 * 27 * 8 * 3);
}

TEST_CASE("axioms filter exactly like direct evaluation") {
  FopeqSignature fs = small_sig();
  Bounds b;
  b.bound = 2;
  std::vector<Formula> axioms{resolved("P(c) ⇒ f(c) = c", fs), resolved("i ≥ 0", fs)};
  auto all = enumerate_algebras(fs, b);
  std::vector<FiniteAlgebra> want;
  for (const auto& a : all) {
    bool ok = true;
    for (const auto& ax : axioms) ok = ok && eval_formula(ax, a, {});
    if (ok) want.push_back(a);
  }
  CHECK(enumerate_algebras(fs, b, axioms) == want);
  CHECK(!want.empty());
}

TEST_CASE("pins fix constants") {
  FopeqSignature fs = small_sig();
  Bounds b;
  b.bound = 2;
  b.pins["i"] = "-1";
  auto all = enumerate_algebras(fs, b);
  CHECK(all.size() == 2 * 4 * 4);
  for (const auto& a : all) CHECK(a.ops.at("i").table.at(0) == -1);
  b.pins["i"] = "7";
  CHECK_THROWS(enumerate_algebras(fs, b));  // outside −2..2
}

TEST_CASE("the ceiling stops runaway enumeration") {
  FopeqSignature fs;
  fs.sorts = {"S"};
  fs.ops["g"] = OpDecl{"g", {"S", "S"}, "S"};
  Bounds b;
  b.carriers["S"] = 4;
  b.ceiling = 1000;
  CHECK_THROWS_AS(enumerate_algebras(fs, b), CeilingError);
}

TEST_CASE("out-of-bound arithmetic is undefined and makes atoms false") {
  FiniteAlgebra a;
  a.bound = 2;
  CHECK_FALSE(eval_formula(parse_formula("2 + 1 = 3"), a, {}));
  CHECK(eval_formula(parse_formula("¬(2 + 1 = 3)"), a, {}));
  CHECK(eval_formula(parse_formula("2 − 1 = 1"), a, {}));
  CHECK_FALSE(eval_formula(parse_formula("3 = 3"), a, {}));
}

TEST_CASE("compiled evaluation agrees with the tree evaluator") {
  Rng rng(11);
  IntFormulas gen{rng};
  FiniteAlgebra a;
  a.bound = 3;
  SlotLayout layout;
  for (const char* k : {"x", "y", "x'", "y'"}) layout.add(k);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    Formula f = gen.formula(3);
    CompiledFormula cf(f, a, layout);
    for (int j = 0; j < 10; ++j) {
      Valuation val;
      std::vector<Value> frame(size_t(cf.frame_size()), 0);
      for (const char* k : {"x", "y", "x'", "y'"}) {
        Value v = rng.below(7) - 3;
        val[k] = v;
        frame[size_t(*layout.find(k))] = v;
      }
      bool direct = eval_formula(f, a, val);
      bool compiled = cf.eval(frame.data());
      CHECK_MESSAGE(direct == compiled, to_string(f));
      ++checked;
    }
  }
  CHECK(checked == 3000);
}

TEST_CASE("reducts along morphisms read renamed tables") {
  FopeqSignature src;
  src.sorts = {"T"};
  src.ops["k"] = OpDecl{"k", {}, "T"};
  FopeqSignature tgt = small_sig();
  FopeqMorphism m;
  m.sorts["T"] = "S";
  m.ops["k"] = "c";
  validate(m, src, tgt);
  Bounds b;
  b.bound = 1;
  for (const auto& a : enumerate_algebras(tgt, b)) {
    FiniteAlgebra r = algebra_reduct(m, src, a);
    CHECK(r.carrier_size("T") == a.carrier_size("S"));
    CHECK(r.ops.at("k").table == a.ops.at("c").table);
    CHECK(eval_formula(resolved("k = k", src), r, {}));
  }
  FopeqMorphism bad = m;
  bad.ops["k"] = "i";
  CHECK_THROWS(validate(bad, src, tgt));
}

TEST_CASE("fopeq pushout glues shared symbols and keeps the rest apart") {
  FopeqSignature base;
  base.sorts = {"S"};
  FopeqSignature left = base, right = base;
  left.ops["a"] = OpDecl{"a", {}, "S"};
  right.sorts = {"U"};
  right.ops["a"] = OpDecl{"a", {}, "U"};
  FopeqMorphism ml = FopeqMorphism::identity(base), mr;
  mr.sorts["S"] = "U";
  auto po = fopeq_pushout(base, left, right, ml, mr);
  CHECK(po.sig.sorts.size() == 1);
  CHECK(po.sig.ops.size() == 2);  // the two a's are different symbols
  CHECK(po.inj1.ops.at("a") != po.inj2.ops.at("a"));
  CHECK(po.inj1.sort("S") == po.inj2.sort("U"));
}
