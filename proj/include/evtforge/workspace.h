#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "evtforge/refine.h"
#include "evtforge/translate.h"

namespace evtforge {

// Everything loaded from a set of input files. Event-B units (.eb text,
// Rodin .buc/.bum) are translated first; .spec/.ref files are read after
// and may refer to the translated specs by name.
struct Workspace {
  Environment env;
  TranslationOutput translation;
  std::vector<std::string> eb_specs;  // names of translated units, environment order
  SpecLibrary lib;                    // translated units followed by .spec/.ref specs
  std::vector<RefinementDecl> decls;
  std::vector<RefinementDecl> morphisms;
};

struct Source {
  std::string name;  // file name; the extension picks the reader
  std::string text;
};

Workspace load_sources(const std::vector<Source>& sources);
Workspace load_files(const std::vector<std::filesystem::path>& paths);

}  // namespace evtforge
