#include <algorithm>
#include <cctype>

#include "evtforge/translate.h"

namespace evtforge {

std::string spec_name(const std::string& unit) {
  std::string s = unit;
  for (auto& c : s) c = char(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

std::vector<EvtSentence> abstract_invariants(const MachineEnv& m, const Environment& env) {
  std::vector<EvtSentence> out;
  auto add = [&](std::vector<EvtSentence> xs) { out.insert(out.end(), xs.begin(), xs.end()); };
  for (auto a = m.refines; a; a = env.machines.at(*a).refines) {
    const MachineEnv& am = env.machines.at(*a);
    for (const auto& v : machine_body(am).ops) add(typing_sentences(m.sig, v));
    for (const auto& inv : am.invariants) add(invariant_sentences(m.sig, inv.pred));
  }
  return out;
}

StructuredSpec refines_import(const std::string& abstract, SpecPtr abstract_def, const std::vector<std::string>& refined,
                              const std::string& concrete, const EvtSignature& target) {
  MorphSpec h;
  h.kind = MorphSpec::Kind::HideEv;
  h.events = refined;
  MorphSpec r;
  r.kind = MorphSpec::Kind::Rename;
  for (const auto& e : refined) r.maplets.push_back({e, concrete, std::nullopt, std::nullopt});
  StructuredSpec t =
      StructuredSpec::translate(StructuredSpec::hide(StructuredSpec::named(abstract, std::move(abstract_def)), h), r);
  t.target = target;
  t.relaxed = true;
  return t;
}

namespace {

SpecPtr lookup(const std::map<std::string, SpecPtr>& done, const std::string& unit) {
  auto it = done.find(unit);
  if (it == done.end()) throw SemanticError("no translation for " + unit);
  return it->second;
}

}  // namespace

StructuredSpec translate_context(const std::string& name, const Environment& env,
                                 const std::map<std::string, SpecPtr>& done) {
  const ContextEnv& c = env.contexts.at(name);
  StructuredSpec body = StructuredSpec::flat(context_body(c));
  if (c.extends.empty()) return body;
  std::vector<StructuredSpec> parts;
  for (const auto& e : c.extends) parts.push_back(StructuredSpec::named(spec_name(e), lookup(done, e)));
  return StructuredSpec::enrich(StructuredSpec::sum(std::move(parts)), std::move(body));
}

StructuredSpec translate_machine(const std::string& name, const Environment& env,
                                 const std::map<std::string, SpecPtr>& done) {
  const MachineEnv& m = env.machines.at(name);
  StructuredSpec body = StructuredSpec::flat(machine_body(m));
  std::vector<StructuredSpec> parts;
  std::vector<StructuredSpec> imports;
  if (m.refines) {
    const std::string& a = *m.refines;
    std::string an = spec_name(a);
    SpecPtr adef = lookup(done, a);
    auto inv = std::make_shared<StructuredSpec>(StructuredSpec::presentation(m.sig, abstract_invariants(m, env)));
    parts.push_back(StructuredSpec::named(an, inv));

    // Init, then concrete events in declaration order, then untouched abstract events.
    auto import = [&](const std::vector<std::string>& refined, const std::string& e) {
      StructuredSpec r = refines_import(an, adef, refined, e, m.sig);
      r.elidable = refined.empty() || (refined.size() == 1 && refined[0] == e);
      imports.push_back(std::move(r));
    };
    import({}, kInit);
    for (const auto& e : m.events)
      if (!e.refines.empty()) import(e.refines, e.name);
    for (const auto& [e, _] : env.machines.at(a).sig.events)
      if (e != kInit && !m.refined.count(e)) import({e}, e);
  }
  for (const auto& s : m.sees) {
    StructuredSpec emb = StructuredSpec::embed(StructuredSpec::named(spec_name(s), lookup(done, s)));
    emb.elidable = true;
    parts.push_back(std::move(emb));
  }
  for (auto& i : imports) parts.push_back(std::move(i));
  if (parts.empty()) return body;
  return StructuredSpec::enrich(StructuredSpec::sum(std::move(parts)), std::move(body));
}

TranslationOutput translate_all(const Environment& env) {
  TranslationOutput out;
  out.diagnostics = env.diagnostics;
  for (const auto& u : env.order) {
    bool machine = env.machines.count(u) > 0;
    StructuredSpec sp = machine ? translate_machine(u, env, out.units) : translate_context(u, env, out.units);
    SpecPtr ptr = std::make_shared<StructuredSpec>(sp);
    out.units[u] = ptr;
    out.lib.add({spec_name(u), sp, {}});
    EvtSignature want = machine ? env.machines.at(u).sig : EvtSignature::initial(env.contexts.at(u).sig);
    if (sig_of(sp, out.lib) != want) out.diagnostics.push_back(spec_name(u) + ": signature differs from the environment");
  }
  return out;
}

}  // namespace evtforge
