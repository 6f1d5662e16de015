#include <algorithm>
#include <functional>
#include <iterator>

#include "evtforge/evt.h"

namespace evtforge {

namespace {

template <class M>
std::vector<std::string> keys(const M& m) {
  std::vector<std::string> out;
  for (const auto& [k, _] : m) out.push_back(k);
  return out;
}

}  // namespace

EvtPushout evt_pushout(const EvtSignature& base, const EvtSignature& s1, const EvtSignature& s2,
                       const EvtMorphism& m1, const EvtMorphism& m2) {
  validate(m1, base, s1);
  validate(m2, base, s2);
  EvtPushout out;
  auto fp = fopeq_pushout(base.fopeq, s1.fopeq, s2.fopeq, m1.fopeq, m2.fopeq);
  out.sig.fopeq = fp.sig;
  out.inj1.fopeq = fp.inj1;
  out.inj2.fopeq = fp.inj2;

  std::vector<std::pair<std::string, std::string>> glue;
  for (const auto& [e, _] : base.events) glue.push_back({m1.event(e), m2.event(e)});
  auto events = name_pushout(keys(s1.events), keys(s2.events), glue);
  for (const auto& [e, st] : s1.events) {
    const auto& n = events.at({0, e});
    out.inj1.events[e] = n;
    auto [it, fresh] = out.sig.events.emplace(n, st);
    if (!fresh) it->second = sup(it->second, st);
  }
  for (const auto& [e, st] : s2.events) {
    const auto& n = events.at({1, e});
    out.inj2.events[e] = n;
    auto [it, fresh] = out.sig.events.emplace(n, st);
    if (!fresh) it->second = sup(it->second, st);
  }
  out.sig.events[kInit] = Status::Ordinary;

  glue.clear();
  for (const auto& [v, _] : base.vars) glue.push_back({m1.var(v), m2.var(v)});
  auto vars = name_pushout(keys(s1.vars), keys(s2.vars), glue, std::set<std::string>(
      [&] { auto k = keys(fp.sig.ops); return std::set<std::string>(k.begin(), k.end()); }()));
  for (const auto& [v, sort] : s1.vars) {
    out.inj1.vars[v] = vars.at({0, v});
    out.sig.vars[vars.at({0, v})] = fp.inj1.sort(sort);
  }
  for (const auto& [v, sort] : s2.vars) {
    out.inj2.vars[v] = vars.at({1, v});
    out.sig.vars.emplace(vars.at({1, v}), fp.inj2.sort(sort));
  }
  return out;
}

namespace {

FiniteAlgebra amalgamate_algebra(const FiniteAlgebra& a1, const FiniteAlgebra& a2, const EvtSignature& s1,
                                 const EvtSignature& s2, const EvtPushout& po) {
  if (a1.bound != a2.bound) throw SemanticError("amalgamation: algebras use different integer bounds");
  FiniteAlgebra a;
  a.bound = a1.bound;
  auto side = [&](const FiniteAlgebra& src, const EvtSignature& sig, const EvtMorphism& inj) {
    for (const auto& s : sig.fopeq.sorts) {
      auto [it, fresh] = a.carrier_sizes.emplace(inj.fopeq.sort(s), src.carrier_size(s));
      if (!fresh && it->second != src.carrier_size(s)) throw SemanticError("amalgamation: carriers of " + s + " differ");
    }
    for (const auto& [n, op] : sig.fopeq.ops) {
      const auto& decl = po.sig.fopeq.ops.at(inj.fopeq.ops.at(n));
      OpTable t{decl.args, decl.result, src.ops.at(n).table};
      auto [it, fresh] = a.ops.emplace(decl.name, t);
      if (!fresh && it->second != t) throw SemanticError("amalgamation: interpretations of " + n + " differ");
    }
    for (const auto& [n, p] : sig.fopeq.preds) {
      const auto& decl = po.sig.fopeq.preds.at(inj.fopeq.preds.at(n));
      PredTable t{decl.args, src.preds.at(n).table};
      auto [it, fresh] = a.preds.emplace(decl.name, t);
      if (!fresh && it->second != t) throw SemanticError("amalgamation: interpretations of " + n + " differ");
    }
  };
  side(a1, s1, po.inj1);
  side(a2, s2, po.inj2);
  return a;
}

// Positions, in the pushout state, of each side variable.
std::vector<size_t> positions(const EvtSignature& side, const EvtMorphism& inj, const EvtSignature& po) {
  std::map<std::string, size_t> pos;
  size_t i = 0;
  for (const auto& [v, _] : po.vars) pos[v] = i++;
  std::vector<size_t> out;
  for (const auto& [v, _] : side.vars) out.push_back(pos.at(inj.var(v)));
  return out;
}

// Joins side states into a pushout state; nullopt when they disagree on a shared variable.
struct Joiner {
  std::vector<size_t> p1, p2;
  size_t n;

  std::optional<State> join(const State& x1, const State& x2) const {
    State s(n, kUndef);
    auto put = [&](const std::vector<size_t>& p, const State& x) {
      for (size_t k = 0; k < p.size(); ++k) {
        if (s[p[k]] != kUndef && s[p[k]] != x[k]) return false;
        s[p[k]] = x[k];
      }
      return true;
    };
    if (!put(p1, x1) || !put(p2, x2)) return std::nullopt;
    return s;
  }
};

template <class T, class Proj>
bool minimal_cover(const std::set<T>& xs, const std::vector<Proj>& projs) {
  // The maximal amalgam is the only one iff every element is the sole
  // preimage of its projection on some constrained side.
  for (const auto& x : xs) {
    bool needed = false;
    for (const auto& pr : projs) {
      auto px = pr(x);
      size_t same = 0;
      for (const auto& y : xs) same += pr(y) == px;
      if (same == 1) needed = true;
    }
    if (!needed) return false;
  }
  return true;
}

}  // namespace

Amalgam amalgamate(const EvtModel& m1, const EvtModel& m2, const EvtSignature& base, const EvtMorphism& s1,
                   const EvtMorphism& s2, const EvtPushout& po) {
  EvtModel r1 = model_reduct(s1, base, m1);
  EvtModel r2 = model_reduct(s2, base, m2);
  if (r1.algebra != r2.algebra) throw SemanticError("amalgamation: algebra reducts differ");
  if (r1.init != r2.init) {
    for (const auto& s : r1.init)
      if (!r2.init.count(s)) throw SemanticError("amalgamation: Init reducts differ at " + show_state(base, s));
    for (const auto& s : r2.init)
      throw SemanticError("amalgamation: Init reducts differ at " + show_state(base, s));
  }
  for (const auto& [e, pairs] : r1.rel) {
    const auto& other = r2.rel.at(e);
    if (pairs == other) continue;
    for (const auto& p : pairs)
      if (!other.count(p))
        throw SemanticError("amalgamation: reducts of " + e + " differ at " + show_state(base, p.first) + " → " +
                            show_state(base, p.second, true));
    for (const auto& p : other)
      throw SemanticError("amalgamation: reducts of " + e + " differ at " + show_state(base, p.first) + " → " +
                          show_state(base, p.second, true));
  }

  Amalgam out;
  EvtModel& m = out.model;
  m.sig = po.sig;
  m.algebra = amalgamate_algebra(m1.algebra, m2.algebra, m1.sig, m2.sig, po);
  Joiner j{positions(m1.sig, po.inj1, po.sig), positions(m2.sig, po.inj2, po.sig), po.sig.vars.size()};

  auto project = [](const std::vector<size_t>& p) {
    return [p](const State& s) {
      State o;
      for (size_t k : p) o.push_back(s[k]);
      return o;
    };
  };
  auto pr1 = project(j.p1);
  auto pr2 = project(j.p2);

  for (const auto& x1 : m1.init)
    for (const auto& x2 : m2.init)
      if (auto s = j.join(x1, x2)) m.init.insert(*s);
  std::vector<std::function<State(const State&)>> sproj{pr1, pr2};
  out.unique = minimal_cover(m.init, sproj);

  for (const auto& [e, _] : po.sig.events) {
    if (e == kInit) continue;
    // Intersect the relations of every side event landing on e.
    std::optional<std::set<Transition>> c1, c2;
    auto collect = [&](const EvtModel& side, const EvtMorphism& inj, std::optional<std::set<Transition>>& acc) {
      for (const auto& [se, __] : side.sig.events) {
        if (se == kInit || inj.event(se) != e) continue;
        const auto& r = side.rel.at(se);
        if (!acc) {
          acc = r;
        } else {
          std::set<Transition> keep;
          std::set_intersection(acc->begin(), acc->end(), r.begin(), r.end(), std::inserter(keep, keep.end()));
          acc = std::move(keep);
        }
      }
    };
    collect(m1, po.inj1, c1);
    collect(m2, po.inj2, c2);

    auto& rel = m.rel[e];
    auto all_pairs = [](const EvtModel& side) {
      std::set<Transition> ps;
      auto states = all_states(side.sig, side.algebra);
      for (const auto& a : states)
        for (const auto& b : states) ps.emplace(a, b);
      return ps;
    };
    if (!c1) c1 = all_pairs(m1);
    if (!c2) c2 = all_pairs(m2);
    for (const auto& [a1, b1] : *c1)
      for (const auto& [a2, b2] : *c2) {
        auto a = j.join(a1, a2);
        if (!a) continue;
        auto b = j.join(b1, b2);
        if (b) rel.emplace(std::move(*a), std::move(*b));
      }

    std::vector<std::function<Transition(const Transition&)>> tproj;
    bool has1 = false, has2 = false;
    for (const auto& [se, __] : m1.sig.events) has1 |= se != kInit && po.inj1.event(se) == e;
    for (const auto& [se, __] : m2.sig.events) has2 |= se != kInit && po.inj2.event(se) == e;
    if (has1) tproj.push_back([&](const Transition& t) { return Transition{pr1(t.first), pr1(t.second)}; });
    if (has2) tproj.push_back([&](const Transition& t) { return Transition{pr2(t.first), pr2(t.second)}; });
    if (!minimal_cover(rel, tproj)) out.unique = false;
  }

  if (model_reduct(po.inj1, m1.sig, m) != m1 || model_reduct(po.inj2, m2.sig, m) != m2)
    throw SemanticError("amalgamation: no model over the pushout has both given reducts");
  return out;
}

EvtSignature comorphism_sign(const FopeqSignature& fs) { return EvtSignature::initial(fs); }

std::vector<EvtSentence> comorphism_sen(const EvtSignature& target, const Formula& f) {
  if (!free_vars(f).empty()) throw StructuralError("comorphism: formula has free variables: " + to_string(f));
  check_formula(f, target.fopeq, {});
  std::vector<EvtSentence> out;
  for (const auto& [e, _] : target.events) out.push_back({e, f});
  return out;
}

FiniteAlgebra comorphism_mod(const EvtModel& m) {
  if (!m.sig.vars.empty()) throw StructuralError("comorphism: model has variables");
  if (m.sig.events.size() != 1 || !m.sig.events.count(kInit)) throw StructuralError("comorphism: model has events besides Init");
  if (m.init != std::set<State>{State{}}) throw StructuralError("comorphism: initialising set must hold only the empty state");
  return m.algebra;
}

}  // namespace evtforge
