#include <algorithm>
#include <set>

#include "evtforge/specalg.h"

namespace evtforge {

StructuredSpec StructuredSpec::named(std::string n, SpecPtr def) {
  StructuredSpec s;
  s.kind = Kind::Named;
  s.name = std::move(n);
  s.def = std::move(def);
  return s;
}

StructuredSpec StructuredSpec::flat(Body b) {
  StructuredSpec s;
  s.kind = Kind::Flat;
  s.body = std::move(b);
  return s;
}

StructuredSpec StructuredSpec::presentation(EvtSignature sig, std::vector<EvtSentence> sentences) {
  StructuredSpec s;
  s.kind = Kind::Presentation;
  s.sig = std::move(sig);
  s.sentences = std::move(sentences);
  return s;
}

StructuredSpec StructuredSpec::translate(StructuredSpec child, MorphSpec m) {
  StructuredSpec s;
  s.kind = Kind::Translate;
  s.children.push_back(std::move(child));
  s.morph = std::move(m);
  return s;
}

StructuredSpec StructuredSpec::sum(std::vector<StructuredSpec> parts) {
  if (parts.size() == 1) return std::move(parts[0]);
  StructuredSpec s;
  s.kind = Kind::Sum;
  s.children = std::move(parts);
  return s;
}

StructuredSpec StructuredSpec::enrich(StructuredSpec base, StructuredSpec ext) {
  StructuredSpec s;
  s.kind = Kind::Enrich;
  s.children.push_back(std::move(base));
  s.children.push_back(std::move(ext));
  return s;
}

StructuredSpec StructuredSpec::hide(StructuredSpec child, MorphSpec m) {
  StructuredSpec s;
  s.kind = Kind::Hide;
  s.children.push_back(std::move(child));
  s.morph = std::move(m);
  return s;
}

StructuredSpec StructuredSpec::embed(StructuredSpec child) {
  StructuredSpec s;
  s.kind = Kind::Embed;
  s.children.push_back(std::move(child));
  return s;
}

void SpecLibrary::add(SpecDef d) {
  if (specs.count(d.name)) throw SemanticError("spec " + d.name + " defined twice");
  order.push_back(d.name);
  std::string n = d.name;
  specs.emplace(std::move(n), std::move(d));
}

const SpecDef& SpecLibrary::get(const std::string& name) const {
  auto it = specs.find(name);
  if (it == specs.end()) throw SemanticError("unknown spec " + name);
  return it->second;
}

namespace {

enum class Sym { Event, Var, Op, Pred, Sort };

Sym classify(const std::string& name, const EvtSignature& sig, bool angled) {
  if (angled || sig.events.count(name)) {
    if (!sig.events.count(name)) throw SemanticError("unknown event " + name);
    return Sym::Event;
  }
  if (sig.vars.count(name)) return Sym::Var;
  if (sig.fopeq.ops.count(name)) return Sym::Op;
  if (sig.fopeq.preds.count(name)) return Sym::Pred;
  if (sig.fopeq.sorts.count(name)) return Sym::Sort;
  throw SemanticError("morphism maps unknown symbol " + name);
}

void check_status(const Maplet& mp, const EvtSignature& sig) {
  if (mp.from_status && sig.events.at(mp.from) != *mp.from_status)
    throw SemanticError("event " + mp.from + " has status " + to_string(sig.events.at(mp.from)) + ", not " +
                        to_string(*mp.from_status));
}

}  // namespace

EvtMorphism morphism_of(const MorphSpec& m, const EvtSignature& source) {
  if (m.kind == MorphSpec::Kind::HideEv) return EvtMorphism::identity(hidden_signature(m, source));
  EvtMorphism out = EvtMorphism::identity(source);
  for (const auto& mp : m.maplets) {
    Sym kind = m.kind == MorphSpec::Kind::Rename ? Sym::Event : classify(mp.from, source, mp.from_status.has_value());
    switch (kind) {
      case Sym::Event:
        if (!source.events.count(mp.from)) throw SemanticError("unknown event " + mp.from);
        check_status(mp, source);
        if ((mp.from == kInit) != (mp.to == kInit)) throw SemanticError("Init must map to Init");
        out.events[mp.from] = mp.to;
        break;
      case Sym::Var: out.vars[mp.from] = mp.to; break;
      case Sym::Op: out.fopeq.ops[mp.from] = mp.to; break;
      case Sym::Pred: out.fopeq.preds[mp.from] = mp.to; break;
      case Sym::Sort: out.fopeq.sorts[mp.from] = mp.to; break;
    }
  }
  return out;
}

EvtSignature image_signature(const MorphSpec& spec, const EvtMorphism& m, const EvtSignature& source) {
  EvtSignature out;
  const auto& fm = m.fopeq;
  for (const auto& s : source.fopeq.sorts) out.fopeq.sorts.insert(fm.sort(s));
  auto map_sorts = [&](const std::vector<std::string>& ss) {
    std::vector<std::string> r;
    for (const auto& s : ss) r.push_back(fm.sort(s));
    return r;
  };
  for (const auto& [name, op] : source.fopeq.ops) {
    OpDecl d{fm.ops.at(name), map_sorts(op.args), fm.sort(op.result)};
    auto [it, fresh] = out.fopeq.ops.emplace(d.name, d);
    if (!fresh && it->second != d) throw SemanticError("morphism identifies ops with different profiles at " + d.name);
  }
  for (const auto& [name, p] : source.fopeq.preds) {
    PredDecl d{fm.preds.at(name), map_sorts(p.args)};
    auto [it, fresh] = out.fopeq.preds.emplace(d.name, d);
    if (!fresh && it->second != d) throw SemanticError("morphism identifies predicates with different profiles at " + d.name);
  }
  std::map<std::string, Status> declared;
  for (const auto& mp : spec.maplets)
    if (mp.to_status) declared[mp.from] = *mp.to_status;
  for (const auto& [e, st] : source.events) {
    std::string t = m.event(e);
    Status s = declared.count(e) ? declared[e] : st;
    if (t == kInit) s = Status::Ordinary;
    auto [it, fresh] = out.events.emplace(t, s);
    if (!fresh) it->second = sup(it->second, s);
  }
  for (const auto& [v, sort] : source.vars) {
    std::string t = m.var(v);
    std::string s = fm.sort(sort);
    auto [it, fresh] = out.vars.emplace(t, s);
    if (!fresh && it->second != s) throw SemanticError("morphism identifies variables of different sorts at " + t);
  }
  out.validate();
  return out;
}

EvtSignature hidden_signature(const MorphSpec& m, const EvtSignature& source) {
  EvtSignature out = EvtSignature::initial(source.fopeq);
  switch (m.kind) {
    case MorphSpec::Kind::HideEv:
      out.vars = source.vars;
      for (const auto& e : m.events) {
        if (!source.events.count(e)) throw SemanticError("hide via σ_h: unknown event " + e);
        out.events[e] = source.events.at(e);
      }
      break;
    case MorphSpec::Kind::Map:
      for (const auto& mp : m.maplets) {
        if (mp.from != mp.to) throw SemanticError("hide via: only inclusions are supported, got " + mp.from + " ↦ " + mp.to);
        switch (classify(mp.from, source, mp.from_status.has_value())) {
          case Sym::Event:
            check_status(mp, source);
            out.events[mp.from] = source.events.at(mp.from);
            break;
          case Sym::Var: out.vars[mp.from] = source.vars.at(mp.from); break;
          default: break;  // FOPEQ symbols are never hidden
        }
      }
      break;
    case MorphSpec::Kind::Rename: throw SemanticError("hide via: a renaming is not an inclusion");
  }
  out.events[kInit] = Status::Ordinary;
  return out;
}

namespace {

const StructuredSpec& definition(const StructuredSpec& sp, const SpecLibrary& lib) {
  return sp.def ? *sp.def : lib.get(sp.name).spec;
}

// Closed Init sentences are context axioms; they hold for every event as well.
void repair(ModelClassRep& c) {
  std::vector<EvtSentence> extra;
  for (const auto& s : c.sentences) {
    if (s.event != kInit || !free_vars(s.body).empty()) continue;
    for (const auto& [e, _] : c.sig.events)
      if (e != kInit) extra.push_back({e, s.body});
  }
  c.sentences.insert(c.sentences.end(), extra.begin(), extra.end());
  std::set<EvtSentence> seen;
  std::vector<EvtSentence> out;
  for (auto& s : c.sentences)
    if (seen.insert(s).second) out.push_back(std::move(s));
  c.sentences = std::move(out);
}

void check_embeddable(const EvtSignature& sig) {
  if (!sig.vars.empty() || sig.events.size() != 1)
    throw SemanticError("with ρ: the embedded specification must be a context (no variables or events)");
}

}  // namespace

EvtSignature sig_of(const StructuredSpec& sp, const SpecLibrary& lib) {
  using K = StructuredSpec::Kind;
  switch (sp.kind) {
    case K::Named: return sig_of(definition(sp, lib), lib);
    case K::Flat: return body_signature(sp.body, EvtSignature::initial());
    case K::Presentation: return sp.sig;
    case K::Translate: {
      EvtSignature src = sig_of(sp.children[0], lib);
      EvtMorphism m = morphism_of(sp.morph, src);
      EvtSignature tgt = sp.target ? *sp.target : image_signature(sp.morph, m, src);
      validate(m, src, tgt, sp.relaxed ? StatusRule::Warn : StatusRule::Enforce);
      return tgt;
    }
    case K::Sum: {
      EvtSignature out = EvtSignature::initial();
      for (const auto& c : sp.children) out = sig_union(out, sig_of(c, lib));
      return out;
    }
    case K::Enrich: {
      EvtSignature base = sig_of(sp.children[0], lib);
      const auto& ext = sp.children[1];
      if (ext.kind == K::Flat) return body_signature(ext.body, base);
      return sig_union(base, sig_of(ext, lib));
    }
    case K::Hide: return hidden_signature(sp.morph, sig_of(sp.children[0], lib));
    case K::Embed: {
      EvtSignature s = sig_of(sp.children[0], lib);
      check_embeddable(s);
      return comorphism_sign(s.fopeq);
    }
  }
  return {};
}

ModelClassRep mod_of(const StructuredSpec& sp, const SpecLibrary& lib) {
  using K = StructuredSpec::Kind;
  switch (sp.kind) {
    case K::Named: return mod_of(definition(sp, lib), lib);
    case K::Flat: {
      EvtSignature sig = body_signature(sp.body, EvtSignature::initial());
      return class_of_presentation(sig, body_sentences(sp.body, sig));
    }
    case K::Presentation: return class_of_presentation(sp.sig, sp.sentences);
    case K::Translate: {
      ModelClassRep c = mod_of(sp.children[0], lib);
      EvtMorphism m = morphism_of(sp.morph, c.sig);
      EvtSignature tgt = sp.target ? *sp.target : image_signature(sp.morph, m, c.sig);
      validate(m, c.sig, tgt, sp.relaxed ? StatusRule::Warn : StatusRule::Enforce);
      return class_translate(c, m, tgt);
    }
    case K::Sum: {
      ModelClassRep out{EvtSignature::initial(), {}};
      for (const auto& c : sp.children) out = class_sum(out, mod_of(c, lib));
      repair(out);
      return out;
    }
    case K::Enrich: {
      ModelClassRep base = mod_of(sp.children[0], lib);
      const auto& ext = sp.children[1];
      ModelClassRep out;
      if (ext.kind == K::Flat) {
        out.sig = body_signature(ext.body, base.sig);
        out.sentences = base.sentences;
        auto more = body_sentences(ext.body, out.sig);
        out.sentences.insert(out.sentences.end(), more.begin(), more.end());
      } else {
        out = class_sum(base, mod_of(ext, lib));
      }
      repair(out);
      return out;
    }
    case K::Hide: {
      ModelClassRep c = mod_of(sp.children[0], lib);
      return class_hide(c, hidden_signature(sp.morph, c.sig));
    }
    case K::Embed: {
      ModelClassRep c = mod_of(sp.children[0], lib);
      check_embeddable(c.sig);
      return c;
    }
  }
  return {};
}

}  // namespace evtforge
