#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "evtforge/refine.h"

namespace evtforge {

EvtMorphism decl_morphism(const RefinementDecl& d, const EvtSignature& abstract, const EvtSignature& concrete) {
  for (const auto& mp : d.maplets) {
    bool event = mp.from_status || abstract.events.count(mp.from);
    if (event && !concrete.events.count(mp.to))
      throw SemanticError(d.name + ": " + d.concrete + " has no event " + mp.to);
    if (mp.to_status && concrete.events.count(mp.to) && concrete.events.at(mp.to) != *mp.to_status)
      throw SemanticError(d.name + ": event " + mp.to + " of " + d.concrete + " is " +
                          to_string(concrete.events.at(mp.to)));
  }
  MorphSpec ms;
  ms.kind = MorphSpec::Kind::Map;
  ms.maplets = d.maplets;
  EvtMorphism m = morphism_of(ms, abstract);
  for (const auto& [e, _] : abstract.events)
    if (!concrete.events.count(m.event(e)))
      throw SemanticError(d.name + ": abstract event " + e + " has no image in " + d.concrete);
  return m;
}

namespace {

template <class T>
bool contains(const std::vector<T>& sorted, const T& x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

}  // namespace

RefinementVerdict check_refinement_morphism(const ModelClassRep& a, const ModelClassRep& c, const EvtMorphism& sigma,
                                            const Bounds& b, StatusRule rule) {
  RefinementVerdict v;
  v.warnings = validate(sigma, a.sig, c.sig, rule);
  EnumOptions opts;
  opts.ceiling = b.ceiling;
  auto fail = [&](Counterexample cx) {
    cx.algebra_text = cx.algebra.describe();
    v.holds = false;
    v.counterexample = std::move(cx);
    return v;
  };
  for (const auto& ac : c.admissible_algebras(b)) {
    ++v.algebras;
    FiniteAlgebra aa = algebra_reduct(sigma.fopeq, a.sig.fopeq, ac);
    if (!a.admissible(aa, b)) {
      Counterexample cx;
      cx.kind = Counterexample::Kind::Algebra;
      cx.algebra = ac;
      return fail(std::move(cx));
    }
    MaximalModel mc = c.maxima(ac, opts);
    MaximalModel ma = a.maxima(aa, opts);
    for (const auto& s : mc.init) {
      ++v.states;
      if (!contains(ma.init, state_reduct(sigma, a.sig, c.sig, s))) {
        Counterexample cx;
        cx.kind = Counterexample::Kind::Init;
        cx.algebra = ac;
        cx.event = kInit;
        cx.after = s;
        cx.after_text = show_state(c.sig, s, true);
        return fail(std::move(cx));
      }
    }
    for (const auto& [e, _] : a.sig.events) {
      if (e == kInit) continue;
      const auto& rel_a = ma.rel.at(e);
      for (const auto& [s, t] : mc.rel.at(sigma.event(e))) {
        ++v.pairs;
        Transition r{state_reduct(sigma, a.sig, c.sig, s), state_reduct(sigma, a.sig, c.sig, t)};
        if (!contains(rel_a, r)) {
          Counterexample cx;
          cx.kind = Counterexample::Kind::Event;
          cx.algebra = ac;
          cx.event = e;
          cx.before = s;
          cx.after = t;
          cx.before_text = show_state(c.sig, s);
          cx.after_text = show_state(c.sig, t, true);
          return fail(std::move(cx));
        }
      }
    }
  }
  return v;
}

RefinementVerdict check_refinement_same_sig(const ModelClassRep& a, const ModelClassRep& c, const Bounds& b) {
  if (a.sig != c.sig) throw SemanticError("refinement: signatures differ");
  return check_refinement_morphism(a, c, EvtMorphism::identity(a.sig), b);
}

RefinementVerdict check_refinement(const RefinementDecl& d, const SpecLibrary& lib, const Bounds& b, StatusRule rule) {
  ModelClassRep a = mod_of(lib.get(d.abstract).spec, lib);
  ModelClassRep c = mod_of(lib.get(d.concrete).spec, lib);
  return check_refinement_morphism(a, c, decl_morphism(d, a.sig, c.sig), b, rule);
}

bool replay_counterexample(const ModelClassRep& a, const EvtMorphism& sigma, const EvtSignature& concrete,
                           const Counterexample& cx, const Bounds& b) {
  if (cx.kind == Counterexample::Kind::Algebra) {
    FiniteAlgebra aa = algebra_reduct(sigma.fopeq, a.sig.fopeq, cx.algebra);
    return !a.admissible(aa, b);
  }
  EvtModel m;
  m.sig = a.sig;
  m.algebra = algebra_reduct(sigma.fopeq, a.sig.fopeq, cx.algebra);
  for (const auto& [e, _] : a.sig.events)
    if (e != kInit) m.rel[e] = {};
  State after = state_reduct(sigma, a.sig, concrete, cx.after);
  if (cx.kind == Counterexample::Kind::Init) {
    m.init = {after};
  } else {
    EnumOptions opts;
    opts.ceiling = b.ceiling;
    opts.events = std::set<std::string>{};
    opts.limit = 1;
    auto l = a.maxima(m.algebra, opts).init;
    if (l.empty()) return true;
    m.init = {l.front()};
    m.rel[cx.event] = {{state_reduct(sigma, a.sig, concrete, cx.before), after}};
  }
  for (const auto& s : a.sentences)
    if (!satisfies(m, s)) return true;
  return false;
}

std::string RefinementVerdict::to_text() const {
  std::ostringstream os;
  os << (holds ? "holds" : "fails") << " (" << algebras << " algebras, " << states << " initial states, " << pairs
     << " pairs)\n";
  for (const auto& w : warnings) os << "  warning: " << w << "\n";
  if (counterexample) {
    const auto& cx = *counterexample;
    os << "  algebra: " << (cx.algebra_text.empty() ? "(no symbols)" : cx.algebra_text) << "\n";
    if (cx.kind == Counterexample::Kind::Algebra) {
      os << "  reduct algebra is not admissible for the abstract specification\n";
    } else {
      os << "  event: " << cx.event << "\n";
      if (cx.kind == Counterexample::Kind::Event) os << "  before: " << cx.before_text << "\n";
      os << "  after: " << cx.after_text << "\n";
    }
  }
  return os.str();
}

std::string RefinementVerdict::to_json() const {
  nlohmann::ordered_json j;
  j["holds"] = holds;
  j["algebra"] = nullptr;
  j["event"] = nullptr;
  j["before"] = nullptr;
  j["after"] = nullptr;
  if (counterexample) {
    const auto& cx = *counterexample;
    j["algebra"] = cx.algebra_text;
    if (cx.kind != Counterexample::Kind::Algebra) j["event"] = cx.event;
    if (cx.kind == Counterexample::Kind::Event) j["before"] = cx.before_text;
    if (cx.kind != Counterexample::Kind::Algebra) j["after"] = cx.after_text;
  }
  j["stats"] = {{"algebras", algebras}, {"states", states}, {"pairs", pairs}};
  j["warnings"] = warnings;
  return j.dump();
}

}  // namespace evtforge
