#include <fstream>
#include <sstream>

#include "evtforge/workspace.h"

namespace evtforge {

namespace {

std::string extension(const std::string& name) { return std::filesystem::path(name).extension().string(); }

}  // namespace

Workspace load_sources(const std::vector<Source>& sources) {
  Workspace w;
  EbSpecification eb;
  std::vector<std::pair<std::string, std::string>> rodin;
  std::vector<RefinementFile> files;
  for (const auto& src : sources) {
    std::string ext = extension(src.name);
    if (ext == ".buc" || ext == ".bum") {
      rodin.emplace_back(src.name, src.text);
    } else if (ext == ".spec" || ext == ".ref") {
      files.push_back(parse_refinement_file(src.text));
    } else {
      EbSpecification s = parse_text(src.text, false);
      eb.units.insert(eb.units.end(), s.units.begin(), s.units.end());
    }
  }
  if (!rodin.empty()) {
    EbSpecification s = parse_rodin(rodin);
    eb.units.insert(eb.units.end(), s.units.begin(), s.units.end());
  }
  bool empty = eb.units.empty();
  for (const auto& f : files) empty = empty && f.specs.order.empty() && f.decls.empty() && f.morphisms.empty();
  if (empty) throw ParseError("no specifications in input", 1, 1);

  if (!eb.units.empty()) {
    validate_spec(eb);
    w.env = build_env(eb);
    w.translation = translate_all(w.env);
    w.lib = w.translation.lib;
    w.eb_specs = w.translation.lib.order;
  }
  for (auto& f : files) {
    for (const auto& n : f.specs.order) w.lib.add(f.specs.get(n));
    w.decls.insert(w.decls.end(), f.decls.begin(), f.decls.end());
    w.morphisms.insert(w.morphisms.end(), f.morphisms.begin(), f.morphisms.end());
  }
  return w;
}

Workspace load_files(const std::vector<std::filesystem::path>& paths) {
  std::vector<Source> sources;
  for (const auto& p : paths) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    sources.push_back({p.filename().string(), ss.str()});
  }
  return load_sources(sources);
}

}  // namespace evtforge
