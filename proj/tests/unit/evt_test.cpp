#include <doctest.h>

#include <algorithm>

#include "evtforge/error.h"
#include "support.h"

using namespace evtforge;
using namespace evtforge::test;

namespace {

FopeqSignature sort_k() {
  FopeqSignature fs;
  fs.sorts = {"S"};
  fs.ops["k"] = OpDecl{"k", {}, "S"};
  return fs;
}

EvtSignature xy_sig() {
  EvtSignature s = EvtSignature::initial(sort_k());
  s.vars = {{"x", "S"}, {"y", "S"}};
  s.events = {{kInit, Status::Ordinary}, {"e", Status::Ordinary}, {"f", Status::Convergent}};
  return s;
}

EvtSentence sen(const EvtSignature& sig, const std::string& e, const std::string& text) {
  VarSorts vs(sig.vars.begin(), sig.vars.end());
  return {e, resolve_formula(parse_formula(text), sig.fopeq, vs)};
}

const std::vector<std::string> kBodies{
    "x = k",         "x′ = x",          "y′ ≠ k",           "x ≠ y",  "x′ = y ∨ y′ = k", "¬(x = x′)",
    "∃z · z ≠ x′",   "x = k ⇒ y′ = y",  "(x′ = y′) ⇔ (x = y)", "⊤",    "x′ = k ∧ y′ = k"};

EvtSentence random_sentence(Rng& rng, const EvtSignature& sig) {
  std::vector<std::string> events;
  for (const auto& [e, _] : sig.events) events.push_back(e);
  return sen(sig, events[size_t(rng.below(int(events.size())))], kBodies[size_t(rng.below(int(kBodies.size())))]);
}

EvtModel random_model(Rng& rng, const EvtSignature& sig, const FiniteAlgebra& a) {
  EvtModel m;
  m.sig = sig;
  m.algebra = a;
  auto states = all_states(sig, a);
  for (const auto& s : states)
    if (rng.coin()) m.init.insert(s);
  if (m.init.empty()) m.init.insert(states.front());
  for (const auto& [e, _] : sig.events) {
    if (e == kInit) continue;
    auto& r = m.rel[e];
    for (const auto& s : states)
      for (const auto& t : states)
        if (rng.below(3) == 0) r.insert({s, t});
  }
  return m;
}

Valuation frame(const EvtSignature& sig, const State* pre, const State& post) {
  Valuation v;
  auto names = sig.var_names();
  for (size_t i = 0; i < names.size(); ++i) {
    if (pre) v[names[i]] = (*pre)[i];
    v[names[i] + "'"] = post[i];
  }
  return v;
}

// Satisfaction read straight off the definition.
bool oracle_satisfies(const EvtModel& m, const EvtSentence& s) {
  if (s.event == kInit) {
    Formula body = init_restrict(s.body);
    return std::all_of(m.init.begin(), m.init.end(),
                       [&](const State& t) { return eval_formula(body, m.algebra, frame(m.sig, nullptr, t)); });
  }
  const auto& r = m.rel.at(s.event);
  return std::all_of(r.begin(), r.end(), [&](const Transition& p) {
    return eval_formula(s.body, m.algebra, frame(m.sig, &p.first, p.second));
  });
}

std::vector<FiniteAlgebra> algebras(int carrier) {
  Bounds b;
  b.carriers["S"] = carrier;
  return enumerate_algebras(sort_k(), b);
}

}  // namespace

TEST_CASE("satisfaction agrees with the definition on random models") {
  Rng rng(21);
  EvtSignature sig = xy_sig();
  int trues = 0;
  for (int carrier : {1, 2, 3}) {
    for (const auto& a : algebras(carrier)) {
      for (int i = 0; i < 40; ++i) {
        EvtModel m = random_model(rng, sig, a);
        EvtSentence s = random_sentence(rng, sig);
        bool got = satisfies(m, s);
        CHECK_MESSAGE(got == oracle_satisfies(m, s), to_string(s));
        trues += got;
      }
    }
  }
  CHECK(trues > 0);
}

TEST_CASE("maximal models are the largest satisfying sets") {
  Rng rng(22);
  EvtSignature sig = xy_sig();
  for (int round = 0; round < 60; ++round) {
    std::vector<EvtSentence> sens;
    for (int i = rng.below(5); i >= 0; --i) sens.push_back(random_sentence(rng, sig));
    for (const auto& a : algebras(1 + rng.below(3))) {
      MaximalModel got = maximal_model(sig, sens, a);
      auto states = all_states(sig, a);
      std::vector<State> want_init;
      for (const auto& t : states) {
        bool ok = true;
        for (const auto& s : sens)
          if (s.event == kInit) ok = ok && eval_formula(init_restrict(s.body), a, frame(sig, nullptr, t));
        if (ok) want_init.push_back(t);
      }
      CHECK(got.init == want_init);
      for (const std::string e : {"e", "f"}) {
        std::vector<Transition> want;
        for (const auto& p : states)
          for (const auto& t : states) {
            bool ok = true;
            for (const auto& s : sens)
              if (s.event == e) ok = ok && eval_formula(s.body, a, frame(sig, &p, t));
            if (ok) want.push_back({p, t});
          }
        CHECK(got.rel.at(e) == want);
      }
    }
  }
}

TEST_CASE("Init sentences only read after-states") {
  EvtSignature sig = xy_sig();
  // the unprimed half of an invariant pairing drops out at initialisation
  Formula f = init_restrict(sen(sig, kInit, "x = k ∧ x′ = k").body);
  CHECK(free_vars(f) == std::set<VarKey>{{"x", true}});
  auto a = algebras(2)[0];
  CHECK(maximal_model(sig, {sen(sig, kInit, "x = k ∧ x′ = k")}, a).init.size() == 2);  // y′ free
  // a disjunct that reads x holds vacuously
  CHECK(maximal_model(sig, {sen(sig, kInit, "x ≠ k ∨ x′ = k")}, a).init.size() == 4);
}

TEST_CASE("reducts compose along composed morphisms") {
  Rng rng(23);
  EvtSignature a = EvtSignature::initial(sort_k());
  a.vars = {{"x", "S"}};
  a.events["e"] = Status::Ordinary;
  EvtSignature b = EvtSignature::initial(sort_k());
  b.vars = {{"u", "S"}, {"v", "S"}};
  b.events = {{kInit, Status::Ordinary}, {"g", Status::Anticipated}, {"h", Status::Ordinary}};
  EvtSignature c = EvtSignature::initial(sort_k());
  c.vars = {{"p", "S"}, {"q", "S"}, {"r", "S"}};
  c.events = {{kInit, Status::Ordinary}, {"m", Status::Convergent}, {"n", Status::Ordinary}};
  for (int i = 0; i < 50; ++i) {
    EvtMorphism f, g;
    f.fopeq = g.fopeq = FopeqMorphism::identity(sort_k());
    f.events = {{kInit, kInit}, {"e", rng.coin() ? "g" : "h"}};
    f.vars = {{"x", rng.coin() ? "u" : "v"}};
    g.events = {{kInit, kInit}, {"g", "m"}, {"h", rng.coin() ? "m" : "n"}};
    const char* cv[] = {"p", "q", "r"};
    g.vars = {{"u", cv[rng.below(3)]}, {"v", cv[rng.below(3)]}};
    validate(f, a, b);
    validate(g, b, c);
    EvtModel m = random_model(rng, c, algebras(2)[size_t(rng.below(2))]);
    EvtMorphism gf = compose(g, f);
    CHECK(model_reduct(gf, a, m) == model_reduct(f, a, model_reduct(g, b, m)));
    CHECK(model_reduct(EvtMorphism::identity(c), c, m) == m);

    const char* bodies[] = {"x = k", "x′ = x", "¬(x = x′)", "∃z · z ≠ x′"};
    EvtSentence s = sen(a, rng.coin() ? kInit : "e", bodies[rng.below(4)]);
    CHECK(translate_sentence(gf, s) == translate_sentence(g, translate_sentence(f, s)));
  }
}

TEST_CASE("status may not decrease along a morphism") {
  EvtSignature a = xy_sig();
  EvtSignature b = a;
  b.events["f"] = Status::Ordinary;
  EvtMorphism id = EvtMorphism::identity(a);
  CHECK_THROWS_AS(validate(id, a, b), StructuralError);
  auto warnings = validate(id, a, b, StatusRule::Warn);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("f") != std::string::npos);
  CHECK(validate(EvtMorphism::identity(b), b, a).empty());  // increases are fine

  EvtMorphism bad = id;
  bad.events[kInit] = "e";
  CHECK_THROWS_AS(validate(bad, a, a), StructuralError);
}

TEST_CASE("model validation catches malformed models") {
  EvtSignature sig = xy_sig();
  EvtModel m;
  m.sig = sig;
  m.algebra = algebras(2)[0];
  m.rel["e"];
  m.rel["f"];
  CHECK_THROWS_AS(m.validate(), StructuralError);  // empty Init
  m.init = {{0, 5}};
  CHECK_THROWS_AS(m.validate(), StructuralError);
  m.init = {{0, 1}};
  CHECK_NOTHROW(m.validate());
  m.rel.erase("f");
  CHECK_THROWS_AS(m.validate(), StructuralError);
}

TEST_CASE("hiding projects the maxima") {
  Rng rng(24);
  EvtSignature sig = xy_sig();
  EvtSignature sub = sig;
  sub.vars.erase("y");
  sub.events.erase("f");
  for (int round = 0; round < 40; ++round) {
    std::vector<EvtSentence> sens;
    for (int i = 1 + rng.below(4); i > 0; --i) sens.push_back(random_sentence(rng, sig));
    ModelClassRep c = class_of_presentation(sig, sens);
    ModelClassRep h = class_hide(c, sub);
    CHECK(h.sig == sub);
    for (const auto& a : algebras(2)) {
      MaximalModel full = c.maxima(a), got = h.maxima(a);
      std::set<State> init;
      for (const auto& s : full.init) init.insert({s[0]});
      std::set<Transition> rel;
      for (const auto& [p, t] : full.rel.at("e")) rel.insert({{p[0]}, {t[0]}});
      CHECK(std::set<State>(got.init.begin(), got.init.end()) == init);
      CHECK(std::set<Transition>(got.rel.at("e").begin(), got.rel.at("e").end()) == rel);
    }
  }
}

TEST_CASE("sum over one signature intersects the maxima") {
  Rng rng(25);
  EvtSignature sig = xy_sig();
  for (int round = 0; round < 30; ++round) {
    ModelClassRep l = class_of_presentation(sig, {random_sentence(rng, sig), random_sentence(rng, sig)});
    ModelClassRep r = class_of_presentation(sig, {random_sentence(rng, sig)});
    ModelClassRep s = class_sum(l, r);
    for (const auto& a : algebras(2)) {
      MaximalModel ml = l.maxima(a), mr = r.maxima(a), ms = s.maxima(a);
      std::vector<State> init;
      std::set_intersection(ml.init.begin(), ml.init.end(), mr.init.begin(), mr.init.end(), std::back_inserter(init));
      CHECK(ms.init == init);
      for (const std::string e : {"e", "f"}) {
        std::vector<Transition> rel;
        std::set_intersection(ml.rel[e].begin(), ml.rel[e].end(), mr.rel[e].begin(), mr.rel[e].end(),
                              std::back_inserter(rel));
        CHECK(ms.rel.at(e) == rel);
      }
    }
  }
}

TEST_CASE("pushout joins statuses and glues shared events") {
  EvtSignature base = EvtSignature::initial();
  base.vars = {{"x", kIntSort}};
  base.events["e"] = Status::Ordinary;
  EvtSignature left = base;
  left.events["e"] = Status::Convergent;
  left.events["f"] = Status::Ordinary;
  EvtSignature right = EvtSignature::initial();
  right.vars = {{"y", kIntSort}};
  right.events["g"] = Status::Anticipated;
  EvtMorphism to_right;
  to_right.vars["x"] = "y";
  to_right.events = {{kInit, kInit}, {"e", "g"}};
  EvtPushout po = evt_pushout(base, left, right, EvtMorphism::identity(base), to_right);
  CHECK(po.sig.vars.size() == 1);
  CHECK(po.sig.events.size() == 3);
  std::string glued = po.inj1.event("e");
  CHECK(po.inj2.event("g") == glued);
  CHECK(po.sig.events.at(glued) == Status::Convergent);
  CHECK(po.inj1.var("x") == po.inj2.var("y"));
  CHECK(validate(po.inj1, left, po.sig).empty());
  CHECK(validate(po.inj2, right, po.sig).empty());
}

TEST_CASE("amalgamation rejects models with different shared parts") {
  EvtSignature base = EvtSignature::initial(sort_k());
  base.vars = {{"x", "S"}};
  EvtSignature left = base;
  left.vars["p"] = "S";
  EvtSignature right = base;
  right.vars["q"] = "S";
  EvtMorphism inc = EvtMorphism::inclusion(base);
  EvtPushout po = evt_pushout(base, left, right, inc, inc);
  auto a = algebras(2)[0];
  // states list variables by name: (p, x) and (q, x)
  EvtModel m1{left, a, {{0, 0}}, {}}, m2{right, a, {{0, 1}}, {}};
  CHECK_THROWS_AS(amalgamate(m1, m2, base, inc, inc, po), SemanticError);
  m2.init = {{1, 0}};
  Amalgam am = amalgamate(m1, m2, base, inc, inc, po);
  CHECK(model_reduct(po.inj1, left, am.model) == m1);
  CHECK(model_reduct(po.inj2, right, am.model) == m2);
}

TEST_CASE("comorphism preconditions") {
  FopeqSignature fs = sort_k();
  EvtSignature sig = comorphism_sign(fs);
  CHECK(sig.vars.empty());
  CHECK(sig.events.size() == 1);
  CHECK_THROWS_AS(comorphism_sen(sig, parse_formula("x = k")), StructuralError);
  EvtModel m{xy_sig(), algebras(2)[0], {{0, 0}}, {{"e", {}}, {"f", {}}}};
  CHECK_THROWS_AS(comorphism_mod(m), StructuralError);
}
