#pragma once

#include <optional>
#include <string>
#include <vector>

#include "evtforge/eventb.h"

namespace evtforge {

// 𝕀: ⟨e, I ∧ I′⟩ for every event of `sig`. `inv` must be resolved.
std::vector<EvtSentence> invariant_sentences(const EvtSignature& sig, const Formula& inv);
// 𝕍: n′ < n for convergent events, n′ ≤ n for anticipated ones.
std::vector<EvtSentence> variant_sentences(const EvtSignature& sig, const Term& variant);
// Before-after predicate of one action: v′ = E per assigned variable, or P.
Formula before_after(const Action& a);
// 𝔼/𝔽: ⟨e, ∃p̄ · G ∧ W ∧ BA⟩, ⟨Init, BA⟩ for the initialisation. Resolves
// the event's predicates against `sig`.
EvtSentence event_sentence(const EvtSignature& sig, const EventDef& e);
// ⟨e, x ∈ T ∧ x′ ∈ T⟩ for every event; empty when the type carries no atom.
std::vector<EvtSentence> typing_sentences(const EvtSignature& sig, const Typed& v);

// The item block of a flat specification: a context body (sorts, constants,
// axioms) or a machine body (variables, invariants, variant, events).
struct Body {
  bool dynamic = false;
  std::vector<std::string> sorts;
  std::vector<Typed> ops;  // `sort` may be empty until resolved
  std::vector<Labelled> axioms;
  std::optional<Term> variant;
  std::vector<EventDef> events;  // the initialisation is named Init
  bool operator==(const Body&) const = default;
};

// Resolves the sort of a declared type; literal-set elements are resolved in place.
std::string type_sort(TypeExpr& t, const FopeqSignature& sig);

// base ∪ the items the body declares.
EvtSignature body_signature(const Body& b, const EvtSignature& base);
// 𝕊 over the full signature. Static bodies pair their closed sentences with Init.
std::vector<EvtSentence> body_sentences(const Body& b, const EvtSignature& full);

// 𝕊 for environment entries.
std::vector<EvtSentence> machine_sentences(const MachineEnv& m);
std::vector<Formula> context_sentences(const ContextEnv& c);

Body machine_body(const MachineEnv& m);
Body context_body(const ContextEnv& c);

}  // namespace evtforge
