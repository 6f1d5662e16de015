#pragma once

#include <map>
#include <string>
#include <vector>

#include "evtforge/specalg.h"

namespace evtforge {

// Spec names are the unit names in upper case.
std::string spec_name(const std::string& unit);

struct TranslationOutput {
  SpecLibrary lib;                       // every unit, in environment order
  std::map<std::string, SpecPtr> units;  // unit name → its translation
  std::vector<std::string> diagnostics;
};

// 𝔸: abstract invariants and typing families of every ancestor machine,
// paired with the events of the concrete signature.
std::vector<EvtSentence> abstract_invariants(const MachineEnv& m, const Environment& env);

// ℝ for one concrete event: (A hide via σ_h{refined}) with σ_m{refined ↦ e}.
StructuredSpec refines_import(const std::string& abstract, SpecPtr abstract_def, const std::vector<std::string>& refined,
                              const std::string& concrete, const EvtSignature& target);

StructuredSpec translate_context(const std::string& name, const Environment& env,
                                 const std::map<std::string, SpecPtr>& done);
StructuredSpec translate_machine(const std::string& name, const Environment& env,
                                 const std::map<std::string, SpecPtr>& done);

// 𝔹 over the whole environment.
TranslationOutput translate_all(const Environment& env);

}  // namespace evtforge
