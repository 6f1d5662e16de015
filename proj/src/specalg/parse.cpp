#include <set>

#include "evtforge/specalg.h"
#include "evtforge/syntax.h"

namespace evtforge {

namespace {

const std::set<std::string> kStop{"end",  "Events", "variant", "any", "when", "where",  "with",  "thenAct",
                                  "then", "and",    "hide",    "ops", "sort", "sorts", "INITIALISATION", "spec",
                                  "refinement", "morphism"};
const std::set<std::string> kSections{"any", "when", "where", "with", "thenAct", "begin", "status"};
const std::set<std::string> kPseudoSorts{"ℕ", "ℤ", "NAT", "INT", "BOOL"};

std::string event_from(const std::string& n) { return n == "INITIALISATION" ? kInit : n; }

class SpecParser {
 public:
  explicit SpecParser(TokenStream& ts) : ts_(ts) {}

  SpecDef def() {
    ts_.expect_word("spec");
    SpecDef d;
    d.name = ts_.ident();
    ts_.expect("=");
    if (ts_.at_word("end")) d.spec = StructuredSpec::flat({});
    else d.spec = expr();
    ts_.expect_word("end");
    if (ts_.accept_word("where")) {
      do {
        std::string n = ts_.ident();
        ts_.expect("=");
        MorphSpec m = parse_morph(ts_);
        d.where.emplace_back(n, std::move(m));
      } while (ts_.accept(","));
    }
    bind(d.spec, d.where);
    return d;
  }

  MorphSpec morph() {
    MorphSpec m;
    if (ts_.at_word("σ_h") && ts_.peek(1).text == "{") {
      ts_.next();
      ts_.next();
      m.kind = MorphSpec::Kind::HideEv;
      while (!ts_.at("}")) {
        m.events.push_back(event_from(ts_.ident()));
        if (!ts_.accept(",")) break;
      }
      ts_.expect("}");
      return m;
    }
    if (ts_.at_word("σ_m") && ts_.peek(1).text == "{") {
      ts_.next();
      m.kind = MorphSpec::Kind::Rename;
    } else if (!ts_.at("{")) {
      m.name = ts_.ident();
      return m;
    }
    ts_.expect("{");
    while (!ts_.at("}")) {
      m.maplets.push_back(maplet());
      if (!ts_.accept(",")) break;
    }
    ts_.expect("}");
    return m;
  }

  Maplet maplet() {
    Maplet mp;
    auto side = [&](std::string& name, std::optional<Status>& st) {
      if (ts_.accept("⟨")) {
        name = event_from(ts_.ident());
        if (ts_.accept(",")) {
          std::string s = ts_.ident();
          st = parse_status(s);
          if (!st) ts_.fail("unknown status " + s);
        }
        ts_.expect("⟩");
      } else {
        name = event_from(ts_.ident());
      }
    };
    side(mp.from, mp.from_status);
    ts_.expect("↦");
    side(mp.to, mp.to_status);
    return mp;
  }

 private:
  bool at_body_start() const {
    return ts_.at(".") || ts_.at_word("sort") || ts_.at_word("sorts") || ts_.at_word("ops") ||
           ts_.at_word("variant") || ts_.at_word("Events");
  }

  bool at_stop() const {
    const auto& t = ts_.peek();
    if (t.kind == Token::Kind::End || ts_.at(")")) return true;
    return t.kind == Token::Kind::Ident && !t.primed && kStop.count(t.text);
  }

  bool at_event_header() const {
    if (ts_.at_word("INITIALISATION")) return true;
    const auto& t = ts_.peek();
    if (t.kind != Token::Kind::Ident || t.primed || kStop.count(t.text)) return false;
    const auto& n = ts_.peek(1);
    if (n.kind != Token::Kind::Ident || n.primed) return false;
    return parse_status(n.text).has_value() || kSections.count(n.text) > 0;
  }

  bool at_action() const {
    const auto& t = ts_.peek();
    if (t.kind != Token::Kind::Ident || t.primed || kStop.count(t.text)) return false;
    auto sym = [&](size_t k, std::string_view s) {
      return ts_.peek(k).kind == Token::Kind::Symbol && ts_.peek(k).text == s;
    };
    if (sym(1, "≔") || sym(1, ",") || sym(1, ":∣") || (sym(1, ":") && sym(2, "∈"))) return true;
    // labelled: `lbl: x := E`
    return sym(1, ":") && ts_.peek(2).kind == Token::Kind::Ident && (sym(3, "≔") || sym(3, ",") || sym(3, ":∣"));
  }

  StructuredSpec expr() {
    StructuredSpec lhs = at_body_start() ? StructuredSpec::flat(body()) : sum();
    while (ts_.accept_word("then")) {
      StructuredSpec ext = at_body_start() ? StructuredSpec::flat(body()) : sum();
      lhs = StructuredSpec::enrich(std::move(lhs), std::move(ext));
    }
    return lhs;
  }

  StructuredSpec sum() {
    std::vector<StructuredSpec> parts{postfix()};
    while (ts_.accept_word("and")) parts.push_back(postfix());
    return StructuredSpec::sum(std::move(parts));
  }

  StructuredSpec postfix() {
    StructuredSpec p = primary();
    for (;;) {
      if (ts_.accept_word("with")) {
        if (ts_.accept_word("ρ")) p = StructuredSpec::embed(std::move(p));
        else p = StructuredSpec::translate(std::move(p), morph());
      } else if (ts_.at_word("hide") && ts_.at_word("via", 1)) {
        ts_.next();
        ts_.next();
        p = StructuredSpec::hide(std::move(p), morph());
      } else {
        return p;
      }
    }
  }

  StructuredSpec primary() {
    if (ts_.accept("(")) {
      StructuredSpec e = expr();
      ts_.expect(")");
      return e;
    }
    return StructuredSpec::named(ts_.ident());
  }

  std::vector<Formula> formulas() {
    std::vector<Formula> out;
    while (!at_stop() && !at_event_header()) out.push_back(ExprParser(ts_).formula());
    return out;
  }

  TypeExpr type() {
    TypeExpr t;
    if (ts_.accept("{")) {
      t.kind = TypeExpr::Kind::Set;
      while (!ts_.at("}")) {
        t.elems.push_back(ExprParser(ts_).term());
        if (!ts_.accept(",")) break;
      }
      ts_.expect("}");
      return t;
    }
    std::string n = ts_.ident();
    if (n == "ℕ" || n == "NAT") t.kind = TypeExpr::Kind::Nat;
    else if (n == "ℤ" || n == "INT") t.kind = TypeExpr::Kind::Integer;
    else if (n == "BOOL") t.kind = TypeExpr::Kind::Boolean;
    else t = TypeExpr{TypeExpr::Kind::Sort, n, {}};
    return t;
  }

  Body body() {
    Body b;
    for (;;) {
      if (ts_.accept_word("sort") || ts_.accept_word("sorts")) {
        while (ts_.peek().kind == Token::Kind::Ident && !at_stop()) {
          std::string s = ts_.ident();
          if (!kPseudoSorts.count(s)) b.sorts.push_back(s);
          ts_.accept(",");
        }
      } else if (ts_.accept_word("ops")) {
        while (ts_.peek().kind == Token::Kind::Ident && !at_stop()) {
          std::vector<std::string> names{ts_.ident()};
          while (ts_.accept(",")) names.push_back(ts_.ident());
          ts_.expect(":");
          TypeExpr t = type();
          for (auto& n : names) b.ops.push_back({n, t, ""});
        }
      } else if (ts_.accept(".")) {
        for (auto& f : formulas()) b.axioms.push_back({"", std::move(f), false});
      } else if (ts_.accept_word("variant")) {
        b.variant = ExprParser(ts_).term();
        b.dynamic = true;
      } else if (ts_.accept_word("Events")) {
        b.dynamic = true;
        while (at_event_header()) b.events.push_back(event());
      } else {
        return b;
      }
    }
  }

  EventDef event() {
    EventDef e;
    e.name = event_from(ts_.ident());
    ts_.accept_word("status");
    if (ts_.peek().kind == Token::Kind::Ident)
      if (auto st = parse_status(ts_.peek().text)) {
        e.status = *st;
        ts_.next();
      }
    for (;;) {
      if (ts_.accept_word("any")) {
        while (ts_.peek().kind == Token::Kind::Ident && !at_stop() && !at_event_header()) {
          e.params.push_back(ts_.ident());
          ts_.accept(",");
        }
      } else if (ts_.accept_word("when") || ts_.accept_word("where")) {
        for (auto& f : formulas()) e.guards.push_back({"", std::move(f), false});
      } else if (ts_.accept_word("with")) {
        for (auto& f : formulas()) e.witnesses.push_back({"", std::move(f), false});
      } else if (ts_.accept_word("thenAct") || ts_.accept_word("begin")) {
        while (at_action()) e.actions.push_back(parse_action(ts_));
      } else {
        return e;
      }
    }
  }

  void bind(StructuredSpec& sp, const std::vector<std::pair<std::string, MorphSpec>>& where) {
    if ((sp.kind == StructuredSpec::Kind::Translate || sp.kind == StructuredSpec::Kind::Hide) && !sp.morph.name.empty() &&
        sp.morph.maplets.empty() && sp.morph.events.empty()) {
      bool found = false;
      for (const auto& [n, m] : where)
        if (n == sp.morph.name) {
          sp.morph = m;
          sp.morph.name = n;
          found = true;
        }
      if (!found) throw SemanticError("morphism " + sp.morph.name + " is not defined in a where clause");
    }
    for (auto& c : sp.children) bind(c, where);
  }

  TokenStream& ts_;
};

}  // namespace

SpecDef parse_spec_def(TokenStream& ts) { return SpecParser(ts).def(); }
MorphSpec parse_morph(TokenStream& ts) { return SpecParser(ts).morph(); }
Maplet parse_maplet(TokenStream& ts) { return SpecParser(ts).maplet(); }

SpecLibrary parse_spec(std::string_view text) {
  TokenStream ts(text);
  SpecLibrary lib;
  while (!ts.at_end()) {
    if (!ts.at_word("spec")) ts.fail("expected 'spec'");
    lib.add(parse_spec_def(ts));
  }
  return lib;
}

}  // namespace evtforge
