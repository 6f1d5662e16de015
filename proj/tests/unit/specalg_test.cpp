#include <doctest.h>

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

std::vector<Transition> pairs_of(const ModelClassRep& c, const Bounds& b, const std::string& e) {
  auto as = c.admissible_algebras(b);
  REQUIRE(as.size() == 1);
  return c.maxima(as[0]).rel.at(e);
}

}  // namespace

TEST_CASE("structured specs reprint and reparse to the same library") {
  for (const char* file : {"modular_m1.spec", "sbodecomp.spec", "sboparallel.spec", "pushout.spec"}) {
    SpecLibrary lib = parse_spec(read_fixture(file));
    std::string printed = pretty_print(lib);
    SpecLibrary again = parse_spec(printed);
    CHECK_MESSAGE(again.order == lib.order, file);
    CHECK_MESSAGE(pretty_print(again) == printed, file);
  }
}

TEST_CASE("translated machines denote their Event-B models") {
  Workspace w = load({"ebm0.eb"});
  ModelClassRep m0 = mod_of(w.lib.get("M0").spec, w.lib);
  Bounds b = pinned_d(2);
  auto as = m0.admissible_algebras(b);
  REQUIRE(as.size() == 1);
  MaximalModel m = m0.maxima(as[0]);
  CHECK(m.init == std::vector<State>{{0}});
  CHECK(m.rel.at("ML_out") == std::vector<Transition>{{{0}, {1}}, {{1}, {2}}});
  CHECK(m.rel.at("ML_in") == std::vector<Transition>{{{1}, {0}}, {{2}, {1}}});
  // d must be positive, so d = 0 leaves no admissible algebra
  CHECK(m0.admissible_algebras(pinned_d(0)).empty());
}

TEST_CASE("translation signatures agree with the environment") {
  Workspace w = load({"ebm0.eb", "ebm1.eb", "ebm2.eb"});
  for (const auto& [name, env] : w.env.machines)
    CHECK_MESSAGE(sig_of(w.lib.get(spec_name(name)).spec, w.lib) == env.sig, name);
  for (const auto& d : w.translation.diagnostics) CHECK(d.find("signature differs") == std::string::npos);
  CHECK(spec_name("m0") == "M0");
}

TEST_CASE("eliding imports only changes the printing") {
  Workspace w = load({"ebm0.eb", "ebm1.eb", "ebm2.eb"});
  const SpecDef& m2 = w.lib.get("M2");
  std::string full = pretty_print(m2, PrintOptions{false});
  std::string short_ = pretty_print(m2);
  CHECK(full.size() > short_.size());
  SpecLibrary reparsed = parse_spec(pretty_print(w.lib.get("CD")) + pretty_print(w.lib.get("M0")));
  Bounds b = pinned_d(1);
  CHECK(pairs_of(mod_of(reparsed.get("M0").spec, reparsed), b, "ML_out") ==
        pairs_of(mod_of(w.lib.get("M0").spec, w.lib), b, "ML_out"));
}

TEST_CASE("hide and rename shape the signature") {
  Workspace w = load({"sv_se.eb", "sbodecomp.spec"});
  EvtSignature m1 = sig_of(w.lib.get("M1").spec, w.lib);
  CHECK(m1.vars.size() == 2);
  CHECK(m1.vars.count("v3") == 0);
  CHECK(m1.events.count("e3_e") == 1);
  CHECK(m1.events.count("e3") == 0);
  CHECK(m1.events.count("e4") == 0);
  EvtSignature m = sig_of(w.lib.get("M").spec, w.lib);
  CHECK(sig_of(w.lib.get("RECOMPOSED").spec, w.lib) == m);
}

TEST_CASE("unknown names and bad morphisms are semantic errors") {
  SpecLibrary lib = parse_spec("spec A = NOPE end");
  CHECK_THROWS_AS(mod_of(lib.get("A").spec, lib), SemanticError);
  Workspace w = load({"sv_se.eb"});
  SpecLibrary bad = parse_spec("spec B = M hide via {v1 ↦ w} end");
  bad.add(w.lib.get("M"));
  CHECK_THROWS(sig_of(bad.get("B").spec, bad));
  CHECK_THROWS_AS(parse_spec("spec A = B with {e ↦ } end"), ParseError);
}

TEST_CASE("the hand-written modular m1 agrees with m1 on signature and initial states") {
  Workspace w = load({"ebm0.eb", "ebm1.eb", "modular_m1.spec"});
  ModelClassRep modular = mod_of(w.lib.get("M1MOD").spec, w.lib);
  ModelClassRep translated = mod_of(w.lib.get("M1").spec, w.lib);
  CHECK(modular.sig == translated.sig);
  Bounds b = pinned_d(2);
  auto as = translated.admissible_algebras(b);
  REQUIRE(as == modular.admissible_algebras(b));
  CHECK(modular.maxima(as[0]).init == translated.maxima(as[0]).init);
}

TEST_CASE("the modular m1 matches m1 once invariants and variant hold for every event") {
  Workspace w = load({"ebm0.eb", "ebm1.eb", "modular_m1.spec"});
  ModelClassRep modular = mod_of(w.lib.get("M1MOD").spec, w.lib);
  ModelClassRep translated = mod_of(w.lib.get("M1").spec, w.lib);
  const EvtSignature& sig = modular.sig;

  // the families built straight from the Event-B environment
  std::vector<EvtSentence> extra;
  auto add = [&](const std::vector<EvtSentence>& xs) { extra.insert(extra.end(), xs.begin(), xs.end()); };
  const auto& cd = w.env.contexts.at("cd");
  for (const auto& f : cd.typing) add(invariant_sentences(sig, f));
  for (const auto& ax : cd.axioms) add(invariant_sentences(sig, ax.pred));
  for (const std::string m : {"m0", "m1"}) {
    const auto& env = w.env.machines.at(m);
    for (const auto& l : env.typing) add(invariant_sentences(sig, l.pred));
    for (const auto& l : env.invariants) add(invariant_sentences(sig, l.pred));
  }
  add(variant_sentences(sig, *w.env.machines.at("m1").variant));
  ModelClassRep closed = class_sum(modular, class_of_presentation(sig, extra));

  Bounds b = pinned_d(2);
  auto as = translated.admissible_algebras(b);
  REQUIRE(as == closed.admissible_algebras(b));
  for (const auto& a : as) CHECK(closed.maxima(a) == translated.maxima(a));
}
