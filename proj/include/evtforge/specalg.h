#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "evtforge/sentences.h"

namespace evtforge {

class TokenStream;

// `a ↦ b`, or `⟨e, st⟩ ↦ ⟨e′, st′⟩` when statuses are given.
struct Maplet {
  std::string from;
  std::string to;
  std::optional<Status> from_status;
  std::optional<Status> to_status;
  bool operator==(const Maplet&) const = default;
};

struct MorphSpec {
  enum class Kind : std::uint8_t {
    Map,     // {maplets}; unlisted symbols map to themselves
    HideEv,  // σ_h{E…}: the sub-signature keeping only the listed events
    Rename,  // σ_m{e ↦ e′}: event renaming, identity elsewhere
  };
  Kind kind = Kind::Map;
  std::string name;  // set when written as a where-bound name
  std::vector<Maplet> maplets;
  std::vector<std::string> events;  // HideEv
  bool operator==(const MorphSpec&) const = default;
};

struct StructuredSpec;
using SpecPtr = std::shared_ptr<const StructuredSpec>;

struct StructuredSpec {
  enum class Kind : std::uint8_t { Named, Flat, Presentation, Translate, Sum, Enrich, Hide, Embed };
  Kind kind = Kind::Flat;
  std::string name;  // Named
  SpecPtr def;       // Named: definition carried along, else looked up by name
  Body body;         // Flat
  EvtSignature sig;  // Presentation
  std::vector<EvtSentence> sentences;
  std::vector<StructuredSpec> children;  // Translate/Hide/Embed: 1, Enrich: 2, Sum: any
  MorphSpec morph;
  std::optional<EvtSignature> target;  // Translate: explicit target signature
  bool relaxed = false;                // Translate: status decreases allowed
  bool elidable = false;               // an import that printing may omit
  bool operator==(const StructuredSpec&) const = default;

  static StructuredSpec named(std::string n, SpecPtr def = nullptr);
  static StructuredSpec flat(Body b);
  static StructuredSpec presentation(EvtSignature sig, std::vector<EvtSentence> sentences);
  static StructuredSpec translate(StructuredSpec child, MorphSpec m);
  static StructuredSpec sum(std::vector<StructuredSpec> parts);
  static StructuredSpec enrich(StructuredSpec base, StructuredSpec ext);
  static StructuredSpec hide(StructuredSpec child, MorphSpec m);
  static StructuredSpec embed(StructuredSpec child);
};

struct SpecDef {
  std::string name;
  StructuredSpec spec;
  std::vector<std::pair<std::string, MorphSpec>> where;
  bool operator==(const SpecDef&) const = default;
};

struct SpecLibrary {
  std::map<std::string, SpecDef> specs;
  std::vector<std::string> order;

  void add(SpecDef d);
  const SpecDef& get(const std::string& name) const;
  bool has(const std::string& name) const { return specs.count(name) > 0; }
};

// Morphisms denoted by a morph literal applied to `source`.
EvtMorphism morphism_of(const MorphSpec& m, const EvtSignature& source);
// Image of `source` under `m`; maplet statuses win over the source status.
EvtSignature image_signature(const MorphSpec& spec, const EvtMorphism& m, const EvtSignature& source);
// Sub-signature selected by a hide morphism (σ_h or an identity map literal).
EvtSignature hidden_signature(const MorphSpec& m, const EvtSignature& source);

EvtSignature sig_of(const StructuredSpec& sp, const SpecLibrary& lib);
ModelClassRep mod_of(const StructuredSpec& sp, const SpecLibrary& lib);

struct PrintOptions {
  bool elide = true;
};
std::string pretty_print(const SpecDef& d, const PrintOptions& opts = {});
std::string pretty_print(const StructuredSpec& sp, const PrintOptions& opts = {});
std::string pretty_print(const SpecLibrary& lib, const PrintOptions& opts = {});
std::string to_string(const MorphSpec& m);

// `spec NAME = … end [where σ = {…}, …]`, starting at the `spec` keyword.
SpecDef parse_spec_def(TokenStream& ts);
MorphSpec parse_morph(TokenStream& ts);
Maplet parse_maplet(TokenStream& ts);
SpecLibrary parse_spec(std::string_view text);

}  // namespace evtforge
