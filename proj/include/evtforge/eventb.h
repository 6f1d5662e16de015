#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "evtforge/evt.h"

namespace evtforge {

class TokenStream;

struct Labelled {
  std::string label;
  Formula pred;
  bool theorem = false;
  bool operator==(const Labelled&) const = default;
};

// `x, y := E, F`, or `x :| P` / `x :∈ S` (stored as the predicate over x′).
struct Action {
  std::string label;
  std::vector<std::string> vars;
  std::vector<Term> exprs;
  std::optional<Formula> such_that;
  bool operator==(const Action&) const = default;
};

struct EventDef {
  std::string name;
  Status status = Status::Ordinary;
  bool extended = false;
  std::vector<std::string> refines;
  std::vector<std::string> params;
  std::vector<Labelled> guards;
  std::vector<Labelled> witnesses;
  std::vector<Action> actions;
  bool operator==(const EventDef&) const = default;
};

struct MachineDef {
  std::string name;
  std::optional<std::string> refines;
  std::vector<std::string> sees;
  std::vector<std::string> variables;
  std::vector<Labelled> invariants;  // theorems included, flagged
  std::optional<Term> variant;
  EventDef init;
  std::vector<EventDef> events;
  bool operator==(const MachineDef&) const = default;
};

struct ContextDef {
  std::string name;
  std::vector<std::string> extends;
  std::vector<std::string> sets;
  std::vector<std::string> constants;
  std::vector<Labelled> axioms;  // theorems included, flagged
  bool operator==(const ContextDef&) const = default;
};

using EbUnit = std::variant<ContextDef, MachineDef>;

struct EbSpecification {
  std::vector<EbUnit> units;
  bool operator==(const EbSpecification&) const = default;
};

const std::string& unit_name(const EbUnit& u);

// `check` runs validate_spec; turn it off when units span several files.
EbSpecification parse_text(std::string_view source, bool check = true);
// (file name, XML text) pairs of .buc/.bum documents; names come from the file stem.
EbSpecification parse_rodin(const std::vector<std::pair<std::string, std::string>>& files);
// One action, without a label: `x := E`, `x :| P` or `x :∈ S`.
Action parse_action(std::string_view text);
// Reads one action, optionally labelled, from a token stream.
Action parse_action(TokenStream& ts);
std::string pretty_print_eb(const EbSpecification& spec);

// Duplicate names, forward references, labels, assigned variables.
void validate_spec(const EbSpecification& spec);

// A declared constant or variable with its display type and sort.
struct Typed {
  std::string name;
  TypeExpr type;
  std::string sort;
  bool operator==(const Typed&) const = default;
};

struct ContextEnv {
  FopeqSignature sig;
  std::vector<std::string> extends;
  std::vector<std::string> sets;
  std::vector<Typed> constants;  // declaration order
  std::vector<Labelled> axioms;  // non-typing, resolved
  std::vector<Formula> typing;   // membership atoms of typed constants
};

struct MachineEnv {
  EvtSignature sig;
  std::optional<std::string> refines;
  std::vector<std::string> sees;
  std::vector<Typed> vars;                 // every variable of sig, declared ones first
  std::vector<std::string> declared;       // this machine's variables clause
  std::vector<Labelled> invariants;        // non-typing, resolved
  std::vector<Labelled> typing;            // typing invariants, resolved
  std::optional<Term> variant;             // resolved
  EventDef init;
  std::vector<EventDef> events;
  std::set<std::string> refined;           // abstract events removed from r(ξ⟦a⟧)
  std::set<std::string> inherited;         // variables of the abstract machine
};

struct Environment {
  std::map<std::string, ContextEnv> contexts;
  std::map<std::string, MachineEnv> machines;
  std::vector<std::string> order;
  std::vector<std::string> diagnostics;  // ignored theorems

  bool has(const std::string& name) const { return contexts.count(name) || machines.count(name); }
};

// Left fold over the units, extending `base`.
Environment build_env(const EbSpecification& spec, Environment base = {});

}  // namespace evtforge
