#include "evtforge/evt.h"

namespace evtforge {

std::vector<FiniteAlgebra> ModelClassRep::candidate_algebras(const Bounds& b) const {
  // Closed Init sentences must hold in any algebra with a non-empty L_max.
  std::vector<Formula> axioms;
  for (const auto& s : sentences)
    if (s.event == kInit && free_vars(s.body).empty()) axioms.push_back(s.body);
  return enumerate_algebras(sig.fopeq, b, axioms);
}

bool ModelClassRep::admissible(const FiniteAlgebra& a, const Bounds& b) const {
  EnumOptions opts;
  opts.ceiling = b.ceiling;
  opts.events = std::set<std::string>{};
  opts.limit = 1;
  return !maximal_model(sig, sentences, a, opts).init.empty();
}

std::vector<FiniteAlgebra> ModelClassRep::admissible_algebras(const Bounds& b) const {
  std::vector<FiniteAlgebra> out;
  for (auto& a : candidate_algebras(b))
    if (admissible(a, b)) out.push_back(std::move(a));
  return out;
}

MaximalModel ModelClassRep::maxima(const FiniteAlgebra& a, const EnumOptions& opts) const {
  return maximal_model(sig, sentences, a, opts);
}

std::vector<EvtSentence> ModelClassRep::sentences_for(const std::string& event) const {
  std::vector<EvtSentence> out;
  for (const auto& s : sentences)
    if (s.event == event) out.push_back(s);
  return out;
}

ModelClassRep class_of_presentation(const EvtSignature& sig, std::vector<EvtSentence> sentences) {
  sig.validate();
  for (const auto& s : sentences) check_sentence(s, sig);
  return {sig, std::move(sentences)};
}

ModelClassRep class_translate(const ModelClassRep& c, const EvtMorphism& m, const EvtSignature& target) {
  ModelClassRep out{target, {}};
  for (const auto& s : c.sentences) out.sentences.push_back(translate_sentence(m, s));
  return out;
}

ModelClassRep class_sum(const ModelClassRep& a, const ModelClassRep& b) {
  ModelClassRep out{sig_union(a.sig, b.sig), a.sentences};
  out.sentences.insert(out.sentences.end(), b.sentences.begin(), b.sentences.end());
  return out;
}

ModelClassRep class_hide(const ModelClassRep& c, const EvtSignature& sub) {
  if (sub.fopeq != c.sig.fopeq) throw SemanticError("hide: only variables and events can be hidden");
  if (!sig_includes(c.sig, sub)) throw SemanticError("hide: target is not a sub-signature");
  std::vector<Binder> pre, post;
  std::map<std::string, std::string> pre_names, post_names;
  for (const auto& [v, sort] : c.sig.vars) {
    if (sub.vars.count(v)) continue;
    pre.push_back({v + "@pre", sort});
    post.push_back({v + "@post", sort});
  }
  ModelClassRep out{sub, {}};
  for (const auto& [e, _] : sub.events) {
    std::vector<Formula> bodies;
    for (const auto& s : c.sentences)
      if (s.event == e) bodies.push_back(e == kInit ? init_restrict(s.body) : s.body);
    if (bodies.empty()) continue;
    Formula body = f_and(bodies);
    if (!pre.empty()) {
      // Hidden h becomes h@pre and h' becomes h@post; both are bound.
      std::set<std::string> hidden;
      for (const auto& b : pre) hidden.insert(b.name.substr(0, b.name.size() - 4));
      auto rebind = [&](auto&& self, const Term& t, const std::set<std::string>& shadow) -> Term {
        Term o = t;
        if (t.kind == Term::Kind::Var && hidden.count(t.name) && (t.primed || !shadow.count(t.name))) {
          o.name = t.name + (t.primed ? "@post" : "@pre");
          o.primed = false;
        }
        for (auto& a : o.args) a = self(self, a, shadow);
        return o;
      };
      auto rebind_f = [&](auto&& self, const Formula& f, std::set<std::string> shadow) -> Formula {
        Formula o = f;
        for (const auto& b : f.binders) shadow.insert(b.name);
        for (auto& t : o.terms) t = rebind(rebind, t, shadow);
        for (auto& s : o.subs) s = self(self, s, shadow);
        return o;
      };
      body = rebind_f(rebind_f, body, {});
      std::vector<Binder> bs;
      for (const auto& [name, primed] : free_vars(body)) {
        auto pick = [&](const std::vector<Binder>& from) {
          for (const auto& b : from)
            if (b.name == name) bs.push_back(b);
        };
        pick(pre);
        pick(post);
      }
      body = f_exists(bs, body);
    }
    out.sentences.push_back({e, body});
  }
  return out;
}

}  // namespace evtforge
