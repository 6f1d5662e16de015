#include <algorithm>
#include <memory>
#include <sstream>

#include "evtforge/compile.h"
#include "evtforge/evt.h"

namespace evtforge {

void EvtModel::validate() const {
  sig.validate();
  if (init.empty()) throw StructuralError("model has an empty initialising set");
  const auto names = sig.var_names();
  auto check_state = [&](const State& s) {
    if (s.size() != names.size()) throw StructuralError("state has the wrong number of variables");
    for (size_t i = 0; i < names.size(); ++i)
      if (!algebra.in_carrier(sig.vars.at(names[i]), s[i]))
        throw StructuralError("state value for " + names[i] + " outside its carrier");
  };
  for (const auto& s : init) check_state(s);
  for (const auto& [e, _] : sig.events) {
    if (e == kInit) continue;
    if (!rel.count(e)) throw StructuralError("model has no relation for event " + e);
  }
  for (const auto& [e, pairs] : rel) {
    if (e == kInit || !sig.events.count(e)) throw StructuralError("model relation for unknown event " + e);
    for (const auto& [a, b] : pairs) check_state(a), check_state(b);
  }
}

std::vector<State> all_states(const EvtSignature& sig, const FiniteAlgebra& a) {
  std::vector<std::vector<Value>> carriers;
  for (const auto& [v, sort] : sig.vars) carriers.push_back(a.carrier(sort));
  std::vector<State> out;
  State cur(carriers.size());
  auto rec = [&](auto&& self, size_t i) -> void {
    if (i == carriers.size()) {
      out.push_back(cur);
      return;
    }
    for (Value v : carriers[i]) {
      cur[i] = v;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

std::string show_state(const EvtSignature& sig, const State& s, bool primed) {
  std::ostringstream os;
  os << "{";
  size_t i = 0;
  for (const auto& [v, sort] : sig.vars) {
    os << (i ? ", " : "") << v << (primed ? "'" : "") << "=" << show_value(sort, s[i]);
    ++i;
  }
  os << "}";
  return os.str();
}

State state_reduct(const EvtMorphism& m, const EvtSignature& src, const EvtSignature& tgt, const State& s) {
  std::map<std::string, size_t> pos;
  size_t i = 0;
  for (const auto& [v, _] : tgt.vars) pos[v] = i++;
  State out;
  for (const auto& [v, _] : src.vars) out.push_back(s[pos.at(m.var(v))]);
  return out;
}

EvtModel model_reduct(const EvtMorphism& m, const EvtSignature& src, const EvtModel& model) {
  std::map<std::string, size_t> pos;
  size_t i = 0;
  for (const auto& [v, _] : model.sig.vars) pos[v] = i++;
  std::vector<size_t> pick;
  for (const auto& [v, _] : src.vars) pick.push_back(pos.at(m.var(v)));
  auto reduce = [&](const State& s) {
    State out(pick.size());
    for (size_t k = 0; k < pick.size(); ++k) out[k] = s[pick[k]];
    return out;
  };

  EvtModel r;
  r.sig = src;
  r.algebra = algebra_reduct(m.fopeq, src.fopeq, model.algebra);
  for (const auto& s : model.init) r.init.insert(reduce(s));
  for (const auto& [e, _] : src.events) {
    if (e == kInit) continue;
    auto& out = r.rel[e];
    auto it = model.rel.find(m.event(e));
    if (it == model.rel.end()) continue;
    for (const auto& [a, b] : it->second) out.emplace(reduce(a), reduce(b));
  }
  return r;
}

namespace {

void flatten(const Formula& f, std::vector<Formula>& out) {
  if (f.kind == Formula::Kind::And) {
    for (const auto& s : f.subs) flatten(s, out);
  } else if (f.kind != Formula::Kind::True) {
    out.push_back(f);
  }
}

struct EventSearch {
  SlotLayout layout;
  std::vector<SearchSlot> order;
  std::vector<std::unique_ptr<CompiledFormula>> compiled;

  EventSearch(const EvtSignature& sig, const std::vector<Formula>& bodies, const FiniteAlgebra& a, bool init) {
    for (const auto& [v, sort] : sig.vars) {
      Value lo = sort == kIntSort ? -a.bound : 0;
      Value hi = lo + a.carrier_size(sort) - 1;
      if (!init) order.push_back({layout.add(valuation_key(v, false)), lo, hi});
      order.push_back({layout.add(valuation_key(v, true)), lo, hi});
    }
    std::vector<Formula> parts;
    for (const auto& b : bodies) flatten(b, parts);
    std::sort(parts.begin(), parts.end());
    parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
    for (const auto& p : parts) compiled.push_back(std::make_unique<CompiledFormula>(p, a, layout));
  }

  template <typename F>
  void run(F&& visit) {
    std::vector<const CompiledFormula*> cs;
    for (const auto& c : compiled) cs.push_back(c.get());
    ConstraintSearch search(order, cs);
    search.run(visit);
  }
};

}  // namespace

MaximalModel maximal_model(const EvtSignature& sig, const std::vector<EvtSentence>& sentences,
                           const FiniteAlgebra& a, const EnumOptions& opts) {
  std::map<std::string, std::vector<Formula>> by_event;
  for (const auto& s : sentences) {
    if (!sig.events.count(s.event)) throw StructuralError("sentence for unknown event " + s.event);
    by_event[s.event].push_back(s.event == kInit ? init_restrict(s.body) : s.body);
  }
  const size_t n = sig.vars.size();
  MaximalModel out;

  if (opts.with_init) {
    EventSearch es(sig, by_event[kInit], a, true);
    es.run([&](const Value* frame) {
      out.init.emplace_back(frame, frame + n);
      if (out.init.size() > opts.ceiling) throw CeilingError("L_max", out.init.size());
      return opts.limit == 0 || out.init.size() < opts.limit;
    });
    std::sort(out.init.begin(), out.init.end());
  }

  for (const auto& [e, _] : sig.events) {
    if (e == kInit) continue;
    if (opts.events && !opts.events->count(e)) continue;
    EventSearch es(sig, by_event[e], a, false);
    auto& pairs = out.rel[e];
    es.run([&](const Value* frame) {
      Transition t;
      t.first.resize(n);
      t.second.resize(n);
      for (size_t i = 0; i < n; ++i) {
        t.first[i] = frame[2 * i];
        t.second[i] = frame[2 * i + 1];
      }
      pairs.push_back(std::move(t));
      if (pairs.size() > opts.ceiling) throw CeilingError("R_max." + e, pairs.size());
      return opts.limit == 0 || pairs.size() < opts.limit;
    });
    std::sort(pairs.begin(), pairs.end());
  }
  return out;
}

}  // namespace evtforge
