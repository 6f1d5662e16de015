#include "evtforge/refine.h"
#include "evtforge/syntax.h"

namespace evtforge {

namespace {

RefinementDecl decl(TokenStream& ts, const char* keyword = "refinement") {
  ts.expect_word(keyword);
  RefinementDecl d;
  d.name = ts.ident();
  ts.expect(":");
  d.abstract = ts.ident();
  ts.expect_word("to");
  d.concrete = ts.ident();
  ts.expect("=");
  while (!ts.at_word("end")) {
    d.maplets.push_back(parse_maplet(ts));
    if (!ts.accept(",")) break;
  }
  ts.expect_word("end");
  return d;
}

}  // namespace

RefinementDecl parse_refinement(std::string_view text) {
  TokenStream ts(text);
  RefinementDecl d = decl(ts);
  if (!ts.at_end()) ts.fail("trailing input after refinement");
  return d;
}

RefinementFile parse_refinement_file(std::string_view text) {
  TokenStream ts(text);
  RefinementFile f;
  while (!ts.at_end()) {
    if (ts.at_word("spec")) f.specs.add(parse_spec_def(ts));
    else if (ts.at_word("refinement")) f.decls.push_back(decl(ts));
    else if (ts.at_word("morphism")) f.morphisms.push_back(decl(ts, "morphism"));
    else ts.fail("expected 'spec', 'refinement' or 'morphism'");
  }
  return f;
}

}  // namespace evtforge
