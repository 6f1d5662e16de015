#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "evtforge/fopeq.h"

namespace evtforge {

enum class Status : std::uint8_t { Ordinary = 0, Anticipated = 1, Convergent = 2 };

inline Status sup(Status a, Status b) { return a < b ? b : a; }
std::string to_string(Status s);
std::optional<Status> parse_status(const std::string& s);

inline const std::string kInit = "Init";

struct EvtSignature {
  FopeqSignature fopeq;
  std::map<std::string, Status> events;
  std::map<std::string, std::string> vars;  // name → sort

  // Only Init, no variables.
  static EvtSignature initial(FopeqSignature fs = {});
  void validate() const;
  std::vector<std::string> var_names() const;
  bool operator==(const EvtSignature&) const = default;
};

// Name-based union: shared names must agree on profile or sort; statuses join.
EvtSignature sig_union(const EvtSignature& a, const EvtSignature& b);
bool sig_includes(const EvtSignature& big, const EvtSignature& small);
std::string describe(const EvtSignature& sig);

struct EvtMorphism {
  FopeqMorphism fopeq;
  std::map<std::string, std::string> events;
  std::map<std::string, std::string> vars;

  std::string event(const std::string& e) const;
  std::string var(const std::string& v) const;
  static EvtMorphism identity(const EvtSignature& sig);
  // Inclusion of `small` into any signature containing it by name.
  static EvtMorphism inclusion(const EvtSignature& small);
  bool operator==(const EvtMorphism&) const = default;
};
EvtMorphism compose(const EvtMorphism& second, const EvtMorphism& first);
// "sorts {S ↦ T} ops {…} preds {…} events {…} vars {…}"
std::string describe(const EvtMorphism& m);

enum class StatusRule : std::uint8_t { Enforce, Warn };

// Throws StructuralError on an ill-formed morphism. Status decreases are errors
// under Enforce and are returned as warnings under Warn.
std::vector<std::string> validate(const EvtMorphism& m, const EvtSignature& src, const EvtSignature& tgt,
                                  StatusRule rule = StatusRule::Enforce);

struct EvtSentence {
  std::string event;
  Formula body;
  auto operator<=>(const EvtSentence&) const = default;
  bool operator==(const EvtSentence&) const = default;
};
std::string to_string(const EvtSentence& s);
void check_sentence(const EvtSentence& s, const EvtSignature& sig);
EvtSentence translate_sentence(const EvtMorphism& m, const EvtSentence& s);

// Init sentences are read over after-states only: maximal atoms that mention an
// unprimed free variable become `true` in positive and `false` in negative
// positions, so the unprimed half of an invariant pairing drops out.
Formula init_restrict(const Formula& f);

// Values in var-name order of the signature.
using State = std::vector<Value>;
using Transition = std::pair<State, State>;

struct EvtModel {
  EvtSignature sig;
  FiniteAlgebra algebra;
  std::set<State> init;
  std::map<std::string, std::set<Transition>> rel;  // every non-Init event

  void validate() const;
  bool operator==(const EvtModel&) const = default;
};

std::vector<State> all_states(const EvtSignature& sig, const FiniteAlgebra& a);
std::string show_state(const EvtSignature& sig, const State& s, bool primed = false);

bool satisfies(const EvtModel& m, const EvtSentence& s);
EvtModel model_reduct(const EvtMorphism& m, const EvtSignature& src, const EvtModel& model);
State state_reduct(const EvtMorphism& m, const EvtSignature& src, const EvtSignature& tgt, const State& s);

struct EnumOptions {
  std::uint64_t ceiling = 1ull << 20;
  bool with_init = true;
  std::optional<std::set<std::string>> events;  // all non-Init events when unset
  std::uint64_t limit = 0;                      // stop after this many results per component, 0 = all
};

struct MaximalModel {
  std::vector<State> init;
  std::map<std::string, std::vector<Transition>> rel;
  bool operator==(const MaximalModel&) const = default;
};

// Sentences are grouped by event; Init sentences go through init_restrict.
MaximalModel maximal_model(const EvtSignature& sig, const std::vector<EvtSentence>& sentences,
                           const FiniteAlgebra& a, const EnumOptions& opts = {});

struct EvtPushout {
  EvtSignature sig;
  EvtMorphism inj1;
  EvtMorphism inj2;
};
EvtPushout evt_pushout(const EvtSignature& base, const EvtSignature& s1, const EvtSignature& s2,
                       const EvtMorphism& m1, const EvtMorphism& m2);

struct Amalgam {
  EvtModel model;
  bool unique = true;
};
// Maximal model over the pushout whose reducts are m1 and m2.
Amalgam amalgamate(const EvtModel& m1, const EvtModel& m2, const EvtSignature& base, const EvtMorphism& s1,
                   const EvtMorphism& s2, const EvtPushout& po);

EvtSignature comorphism_sign(const FopeqSignature& fs);
std::vector<EvtSentence> comorphism_sen(const EvtSignature& target, const Formula& f);
FiniteAlgebra comorphism_mod(const EvtModel& m);

// Symbolic model class: admissible algebras are those with a non-empty L_max;
// a model belongs iff ∅ ≠ L ⊆ L_max and every R.e ⊆ R_max.e.
struct ModelClassRep {
  EvtSignature sig;
  std::vector<EvtSentence> sentences;

  std::vector<FiniteAlgebra> candidate_algebras(const Bounds& b) const;
  bool admissible(const FiniteAlgebra& a, const Bounds& b) const;
  std::vector<FiniteAlgebra> admissible_algebras(const Bounds& b) const;
  MaximalModel maxima(const FiniteAlgebra& a, const EnumOptions& opts = {}) const;
  std::vector<EvtSentence> sentences_for(const std::string& event) const;
};

ModelClassRep class_of_presentation(const EvtSignature& sig, std::vector<EvtSentence> sentences);
ModelClassRep class_translate(const ModelClassRep& c, const EvtMorphism& m, const EvtSignature& target);
ModelClassRep class_sum(const ModelClassRep& a, const ModelClassRep& b);
// `sub` must be a sub-signature with the same FOPEQ part and an injective
// inclusion; hidden variables are existentially quantified per event.
ModelClassRep class_hide(const ModelClassRep& c, const EvtSignature& sub);

}  // namespace evtforge
