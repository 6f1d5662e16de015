#include <doctest.h>

#include <json.hpp>

#include "evtforge/error.h"
#include "support.h"

using namespace evtforge;
using namespace evtforge::test;

namespace {

Bounds pinned_d(int d) {
  Bounds b;
  b.pins["d"] = std::to_string(d);
  return b;
}

const RefinementDecl& decl(const Workspace& w, const std::string& name) {
  for (const auto& d : w.decls)
    if (d.name == name) return d;
  throw std::runtime_error("no declaration " + name);
}

}  // namespace

TEST_CASE("refinement declarations parse") {
  RefinementDecl d = parse_refinement("refinement R : A to B = x ↦ y, ⟨e, ordinary⟩ ↦ ⟨f, convergent⟩, end");
  CHECK(d.name == "R");
  CHECK(d.abstract == "A");
  CHECK(d.concrete == "B");
  REQUIRE(d.maplets.size() == 2);
  CHECK(d.maplets[1].to_status == Status::Convergent);
  CHECK(parse_refinement("refinement E : A to A = end").maplets.empty());
  CHECK_THROWS_AS(parse_refinement("refinement R : A to B = x ↦ y"), ParseError);
  CHECK_THROWS_AS(parse_refinement("refinement R A to B = end"), ParseError);
  RefinementFile f = parse_refinement_file(read_fixture("pushout_right.ref") + read_fixture("pushout.spec"));
  CHECK(f.morphisms.size() == 1);
  CHECK(f.specs.order.size() == 3);
}

TEST_CASE("every spec refines itself") {
  Workspace w = load({"ebm0.eb", "ebm1.eb", "ebm2.eb", "sv_se.eb", "rex.eb"});
  for (const auto& name : w.lib.order) {
    ModelClassRep c = mod_of(w.lib.get(name).spec, w.lib);
    Bounds b = pinned_d(1);
    b.bound = 2;
    RefinementVerdict v = check_refinement_morphism(c, c, EvtMorphism::identity(c.sig), b);
    CHECK_MESSAGE(v.holds, name);
    CHECK(check_refinement_same_sig(c, c, b).holds);
  }
}

TEST_CASE("refinement composes") {
  Workspace w = load({"ebm0.eb", "ebm1.eb", "ebm2.eb", "refinements.ref"});
  ModelClassRep m0 = mod_of(w.lib.get("M0").spec, w.lib);
  ModelClassRep m1 = mod_of(w.lib.get("M1").spec, w.lib);
  ModelClassRep m2 = mod_of(w.lib.get("M2").spec, w.lib);
  EvtMorphism s01 = decl_morphism(decl(w, "REF0"), m0.sig, m1.sig);
  EvtMorphism s12 = decl_morphism(decl(w, "REF1A"), m1.sig, m2.sig);
  Bounds b = pinned_d(1);
  RefinementVerdict v = check_refinement_morphism(m0, m2, compose(s12, s01), b, StatusRule::Warn);
  CHECK(v.holds);
  CHECK(v.algebras == 2);  // red/green either way round
  CHECK(v.states > 0);
}

TEST_CASE("a failing refinement yields a replayable counterexample") {
  Workspace w = load({"ebm0.eb", "ebm0w.eb", "mutations.ref"});
  ModelClassRep a = mod_of(w.lib.get("M0").spec, w.lib);
  ModelClassRep c = mod_of(w.lib.get("M0W").spec, w.lib);
  EvtMorphism sigma = decl_morphism(decl(w, "WEAKNOINV"), a.sig, c.sig);
  Bounds b = pinned_d(2);
  RefinementVerdict v = check_refinement_morphism(a, c, sigma, b);
  REQUIRE_FALSE(v.holds);
  REQUIRE(v.counterexample);
  const Counterexample& cx = *v.counterexample;
  CHECK(cx.kind == Counterexample::Kind::Event);
  CHECK(replay_counterexample(a, sigma, c.sig, cx, b));

  // an ordinary ML_in step is not a counterexample
  Counterexample fake = cx;
  fake.event = "ML_in";
  fake.before = {1};
  fake.after = {0};
  CHECK_FALSE(replay_counterexample(a, sigma, c.sig, fake, b));

  auto j = nlohmann::json::parse(v.to_json());
  CHECK(j["holds"] == false);
  CHECK(j["algebra"] == cx.algebra_text);
  CHECK(j["event"] == cx.event);
  CHECK(j["stats"]["algebras"] == 1);
  std::string text = v.to_text();
  CHECK(text.rfind("fails", 0) == 0);
  CHECK(text.find("  before: ") != std::string::npos);
}

TEST_CASE("declaration errors name the culprit") {
  Workspace w = load({"ebm0.eb", "ebm1.eb"});
  ModelClassRep m0 = mod_of(w.lib.get("M0").spec, w.lib);
  ModelClassRep m1 = mod_of(w.lib.get("M1").spec, w.lib);
  RefinementDecl d = parse_refinement("refinement BAD : M0 to M1 = ML_out ↦ NOPE end");
  try {
    decl_morphism(d, m0.sig, m1.sig);
    FAIL("expected an error");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("NOPE") != std::string::npos);
  }
  RefinementDecl loose = parse_refinement("refinement L : M1 to M0 = end");  // m1's extra events have no image
  CHECK_THROWS(decl_morphism(loose, m1.sig, m0.sig));
  CHECK_THROWS(check_refinement(parse_refinement("refinement X : M0 to ZZ = end"), w.lib, pinned_d(1)));
}

TEST_CASE("status decreases are rejected unless warnings are asked for") {
  Workspace w = load({"ebm0.eb", "ebm1.eb", "ebm2.eb", "refinements.ref"});
  Bounds b = pinned_d(1);
  CHECK_THROWS_AS(check_refinement(decl(w, "REF1A"), w.lib, b), StructuralError);
  RefinementVerdict v = check_refinement(decl(w, "REF1A"), w.lib, b, StatusRule::Warn);
  CHECK(v.holds);
  CHECK_FALSE(v.warnings.empty());
}

TEST_CASE("workspace loading") {
  CHECK_THROWS_AS(load_sources({{"empty.eb", "  \n"}}), ParseError);
  Workspace w = load_sources({{"a.txt", read_fixture("ebm0.eb")}, {"r.ref", "refinement I : M0 to M0 = end"}});
  CHECK(w.eb_specs == std::vector<std::string>{"CD", "M0"});
  CHECK(w.decls.size() == 1);
  CHECK(check_refinement(w.decls[0], w.lib, pinned_d(1)).holds);
  Workspace p = load({"pushout.spec", "pushout_left.ref", "pushout_right.ref"});
  CHECK(p.morphisms.size() == 2);
  CHECK(p.eb_specs.empty());
}
