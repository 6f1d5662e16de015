#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "evtforge/error.h"
#include "evtforge/workspace.h"

namespace py = pybind11;
using namespace evtforge;

namespace {

using Sources = std::vector<std::pair<std::string, std::string>>;

Workspace load(const Sources& sources) {
  std::vector<Source> ss;
  for (const auto& [name, text] : sources) ss.push_back({name, text});
  return load_sources(ss);
}

Bounds make_bounds(Value bound, const std::map<std::string, std::int64_t>& carriers,
                   const std::map<std::string, std::string>& pins, std::uint64_t ceiling) {
  Bounds b;
  b.bound = bound;
  b.carriers = carriers;
  b.pins = pins;
  b.ceiling = ceiling;
  return b;
}

py::tuple state_tuple(const State& s) {
  py::tuple t(s.size());
  for (size_t i = 0; i < s.size(); ++i) t[i] = s[i];
  return t;
}

py::list translate(const Sources& sources, bool elide) {
  Workspace w = load(sources);
  py::list out;
  for (const auto& n : w.eb_specs.empty() ? w.lib.order : w.eb_specs) {
    const SpecDef& d = w.lib.get(n);
    ModelClassRep rep = mod_of(d.spec, w.lib);
    py::list sens;
    for (const auto& s : rep.sentences) sens.append(to_string(s));
    py::dict item;
    item["name"] = n;
    item["text"] = pretty_print(d, PrintOptions{elide});
    item["signature"] = describe(rep.sig);
    item["sentences"] = sens;
    out.append(item);
  }
  return out;
}

py::dict models(const Sources& sources, const std::string& spec, Value bound,
                const std::map<std::string, std::int64_t>& carriers, const std::map<std::string, std::string>& pins,
                std::uint64_t ceiling) {
  Workspace w = load(sources);
  std::string name = spec.empty() ? w.lib.order.back() : spec;
  ModelClassRep rep = mod_of(w.lib.get(name).spec, w.lib);
  Bounds b = make_bounds(bound, carriers, pins, ceiling);
  EnumOptions opts;
  opts.ceiling = ceiling;
  py::list algebras;
  for (const auto& a : rep.admissible_algebras(b)) {
    MaximalModel m = rep.maxima(a, opts);
    py::list init;
    for (const auto& s : m.init) init.append(state_tuple(s));
    py::dict rel;
    for (const auto& [e, pairs] : m.rel) {
      py::list ps;
      for (const auto& [s, t] : pairs) ps.append(py::make_tuple(state_tuple(s), state_tuple(t)));
      rel[py::str(e)] = ps;
    }
    py::dict item;
    item["algebra"] = a.describe();
    item["init"] = init;
    item["events"] = rel;
    algebras.append(item);
  }
  py::dict out;
  out["spec"] = name;
  out["vars"] = rep.sig.var_names();
  out["algebras"] = algebras;
  return out;
}

py::list refine(const Sources& sources, Value bound, const std::map<std::string, std::int64_t>& carriers,
                const std::map<std::string, std::string>& pins, std::uint64_t ceiling, bool status_warn) {
  Workspace w = load(sources);
  Bounds b = make_bounds(bound, carriers, pins, ceiling);
  py::object loads = py::module_::import("json").attr("loads");
  py::list out;
  for (const auto& d : w.decls) {
    RefinementVerdict v = check_refinement(d, w.lib, b, status_warn ? StatusRule::Warn : StatusRule::Enforce);
    py::dict item = loads(v.to_json());
    item["name"] = d.name;
    item["abstract"] = d.abstract;
    item["concrete"] = d.concrete;
    item["text"] = v.to_text();
    out.append(item);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_evtforge, m) {
  m.doc() = "Event-B to EVT translation, model enumeration and refinement checking";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<SemanticError>(m, "SemanticError", PyExc_ValueError);
  py::register_exception<StructuralError>(m, "StructuralError", PyExc_ValueError);
  py::register_exception<CeilingError>(m, "CeilingError", PyExc_RuntimeError);

  m.def("translate", &translate, py::arg("sources"), py::arg("elide") = true,
        "Translate Event-B sources. `sources` is a list of (file name, text); the extension picks the reader.");
  m.def("models", &models, py::arg("sources"), py::arg("spec") = "", py::arg("bound") = 3,
        py::arg("carriers") = std::map<std::string, std::int64_t>{}, py::arg("pins") = std::map<std::string, std::string>{},
        py::arg("ceiling") = std::uint64_t{1} << 20,
        "Maximal models of one spec (the last one by default), per admissible algebra.");
  m.def("refine", &refine, py::arg("sources"), py::arg("bound") = 3,
        py::arg("carriers") = std::map<std::string, std::int64_t>{}, py::arg("pins") = std::map<std::string, std::string>{},
        py::arg("ceiling") = std::uint64_t{1} << 20, py::arg("status_warn") = false,
        "Check every refinement declaration in the sources.");
}
