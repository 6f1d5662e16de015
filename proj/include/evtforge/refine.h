#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evtforge/specalg.h"

namespace evtforge {

// `refinement NAME : A to C = e ↦ e′, v ↦ w, … end`; maps run abstract → concrete.
struct RefinementDecl {
  std::string name;
  std::string abstract;
  std::string concrete;
  std::vector<Maplet> maplets;
  bool operator==(const RefinementDecl&) const = default;
};

struct RefinementFile {
  SpecLibrary specs;
  std::vector<RefinementDecl> decls;
  std::vector<RefinementDecl> morphisms;  // `morphism NAME : A to B = … end`, same shape
};

RefinementDecl parse_refinement(std::string_view text);
// Any mix of `spec`, `refinement` and `morphism` blocks.
RefinementFile parse_refinement_file(std::string_view text);

struct Counterexample {
  enum class Kind : std::uint8_t { Algebra, Init, Event };
  Kind kind = Kind::Event;
  FiniteAlgebra algebra;  // concrete algebra
  std::string event;      // abstract event name, Init for initial states
  State before;           // concrete states; `before` is unused for Init
  State after;
  std::string algebra_text;
  std::string before_text;
  std::string after_text;
};

struct RefinementVerdict {
  bool holds = true;
  std::optional<Counterexample> counterexample;
  std::uint64_t algebras = 0;
  std::uint64_t states = 0;
  std::uint64_t pairs = 0;
  std::vector<std::string> warnings;

  std::string to_text() const;
  std::string to_json() const;  // fields: holds, algebra, event, before, after
};

// σ from the declaration; unmapped symbols map to themselves.
EvtMorphism decl_morphism(const RefinementDecl& d, const EvtSignature& abstract, const EvtSignature& concrete);

RefinementVerdict check_refinement_same_sig(const ModelClassRep& a, const ModelClassRep& c, const Bounds& b);
// Mod(σ)(Mod[C]) ⊆ Mod[A] via maxima of every admissible concrete algebra.
RefinementVerdict check_refinement_morphism(const ModelClassRep& a, const ModelClassRep& c, const EvtMorphism& sigma,
                                            const Bounds& b, StatusRule rule = StatusRule::Enforce);
RefinementVerdict check_refinement(const RefinementDecl& d, const SpecLibrary& lib, const Bounds& b,
                                   StatusRule rule = StatusRule::Enforce);

// True when the reduct of the counterexample is a model fragment that breaks
// some abstract sentence.
bool replay_counterexample(const ModelClassRep& a, const EvtMorphism& sigma, const EvtSignature& concrete,
                           const Counterexample& cx, const Bounds& b);

}  // namespace evtforge
