#include <set>

#include "evtforge/eventb.h"
#include "evtforge/syntax.h"

namespace evtforge {

const std::string& unit_name(const EbUnit& u) {
  return std::visit([](const auto& x) -> const std::string& { return x.name; }, u);
}

namespace {

const std::set<std::string> kKeywords{
    "machine", "context", "refines", "sees",   "variables", "invariants", "theorems", "variant",
    "events",  "event",   "end",     "sets",   "constants", "axioms",     "extends",  "INITIALISATION",
    "status",  "any",     "when",    "where",  "with",      "then",       "thenAct",  "begin",
    "extended", "theorem"};

class EbParser {
 public:
  explicit EbParser(std::string_view src) : ts_(src) {}

  Action single_action() {
    Action a = action();
    if (!ts_.at_end()) ts_.fail("trailing input after action");
    return a;
  }

  EbSpecification parse() {
    EbSpecification spec;
    while (!ts_.at_end()) {
      if (ts_.accept_word("context")) {
        spec.units.emplace_back(context());
      } else if (ts_.accept_word("machine")) {
        spec.units.emplace_back(machine());
      } else {
        ts_.fail("expected 'machine' or 'context'");
      }
    }
    return spec;
  }

 private:
  bool at_keyword(size_t k = 0) const {
    const auto& t = ts_.peek(k);
    return t.kind == Token::Kind::End || (t.kind == Token::Kind::Ident && !t.primed && kKeywords.count(t.text));
  }

  std::vector<std::string> names() {
    std::vector<std::string> out;
    while (!at_keyword() && ts_.peek().kind == Token::Kind::Ident) {
      out.push_back(ts_.ident());
      ts_.accept(",");
    }
    return out;
  }

  bool at_label() const {
    return ts_.peek().kind == Token::Kind::Ident && !ts_.peek().primed && ts_.peek(1).kind == Token::Kind::Symbol &&
           ts_.peek(1).text == ":";
  }

  std::vector<Labelled> predicates() {
    std::vector<Labelled> out;
    while (!at_keyword() || ts_.at_word("theorem")) {
      Labelled l;
      if (ts_.accept_word("theorem")) l.theorem = true;
      if (at_label()) {
        l.label = ts_.ident();
        ts_.expect(":");
      }
      l.pred = ExprParser(ts_).formula();
      if (ts_.accept_word("theorem")) l.theorem = true;
      out.push_back(std::move(l));
    }
    return out;
  }

  Action action() { return parse_action(ts_); }

  EventDef event(bool init) {
    EventDef e;
    if (init) {
      e.name = kInit;
    } else {
      e.name = ts_.ident();
      ts_.accept_word("status");
      if (ts_.peek().kind == Token::Kind::Ident) {
        if (auto st = parse_status(ts_.peek().text)) {
          e.status = *st;
          ts_.next();
        }
      }
      if (ts_.accept_word("extended")) e.extended = true;
    }
    for (;;) {
      if (ts_.accept_word("refines")) {
        auto ns = names();
        e.refines.insert(e.refines.end(), ns.begin(), ns.end());
      } else if (ts_.accept_word("any")) {
        e.params = names();
      } else if (ts_.accept_word("when") || ts_.accept_word("where")) {
        auto ps = predicates();
        e.guards.insert(e.guards.end(), ps.begin(), ps.end());
      } else if (ts_.accept_word("with")) {
        auto ps = predicates();
        e.witnesses.insert(e.witnesses.end(), ps.begin(), ps.end());
      } else if (ts_.accept_word("thenAct") || ts_.accept_word("then") || ts_.accept_word("begin")) {
        while (!at_keyword()) e.actions.push_back(action());
      } else {
        break;
      }
    }
    // An event may close with `end` when another event or the machine's `end` follows.
    if (ts_.at_word("end") && (ts_.at_word("event", 1) || ts_.at_word("end", 1) || ts_.at_word("INITIALISATION", 1)))
      ts_.next();
    return e;
  }

  ContextDef context() {
    ContextDef c;
    c.name = ts_.ident();
    for (;;) {
      if (ts_.accept_word("extends")) {
        auto ns = names();
        c.extends.insert(c.extends.end(), ns.begin(), ns.end());
      } else if (ts_.accept_word("sets")) {
        auto ns = names();
        c.sets.insert(c.sets.end(), ns.begin(), ns.end());
      } else if (ts_.accept_word("constants")) {
        auto ns = names();
        c.constants.insert(c.constants.end(), ns.begin(), ns.end());
      } else if (ts_.accept_word("axioms")) {
        auto ps = predicates();
        c.axioms.insert(c.axioms.end(), ps.begin(), ps.end());
      } else if (ts_.accept_word("theorems")) {
        auto ps = predicates();
        for (auto& p : ps) p.theorem = true;
        c.axioms.insert(c.axioms.end(), ps.begin(), ps.end());
      } else {
        break;
      }
    }
    ts_.expect_word("end");
    return c;
  }

  MachineDef machine() {
    MachineDef m;
    m.name = ts_.ident();
    bool have_init = false;
    bool have_variant = false;
    for (;;) {
      if (ts_.accept_word("refines")) {
        if (m.refines) ts_.fail("a machine refines at most one machine");
        m.refines = ts_.ident();
      } else if (ts_.accept_word("sees")) {
        auto ns = names();
        m.sees.insert(m.sees.end(), ns.begin(), ns.end());
      } else if (ts_.accept_word("variables")) {
        auto ns = names();
        m.variables.insert(m.variables.end(), ns.begin(), ns.end());
      } else if (ts_.accept_word("invariants")) {
        auto ps = predicates();
        m.invariants.insert(m.invariants.end(), ps.begin(), ps.end());
      } else if (ts_.accept_word("theorems")) {
        auto ps = predicates();
        for (auto& p : ps) p.theorem = true;
        m.invariants.insert(m.invariants.end(), ps.begin(), ps.end());
      } else if (ts_.accept_word("variant")) {
        if (have_variant) ts_.fail("a machine has at most one variant");
        have_variant = true;
        m.variant = ExprParser(ts_).term();
      } else if (ts_.accept_word("events")) {
        for (;;) {
          bool kw = ts_.accept_word("event");
          if (ts_.accept_word("INITIALISATION")) {
            if (have_init) ts_.fail("duplicate INITIALISATION");
            have_init = true;
            m.init = event(true);
          } else if (kw) {
            m.events.push_back(event(false));
          } else {
            break;
          }
        }
      } else {
        break;
      }
    }
    if (!have_init) ts_.fail("machine " + m.name + " has no INITIALISATION");
    ts_.expect_word("end");
    return m;
  }

  TokenStream ts_;
};

}  // namespace

EbSpecification parse_text(std::string_view source, bool check) {
  EbSpecification spec = EbParser(source).parse();
  if (check) validate_spec(spec);
  return spec;
}

Action parse_action(TokenStream& ts) {
  Action a;
  if (ts.peek().kind == Token::Kind::Ident && !ts.peek().primed && ts.peek(1).kind == Token::Kind::Symbol &&
      ts.peek(1).text == ":" && !(ts.peek(2).kind == Token::Kind::Symbol && ts.peek(2).text == "∈")) {
    a.label = ts.ident();
    ts.expect(":");
  }
  a.vars.push_back(ts.ident());
  while (ts.accept(",")) a.vars.push_back(ts.ident());
  if (ts.accept("≔")) {
    ExprParser p(ts);
    a.exprs.push_back(p.term());
    while (ts.accept(",")) a.exprs.push_back(ExprParser(ts).term());
    if (a.exprs.size() != a.vars.size()) ts.fail("assignment arity mismatch");
  } else if (ts.accept(":∣")) {
    a.such_that = ExprParser(ts).formula();
  } else if (ts.at(":") && ts.peek(1).kind == Token::Kind::Symbol && ts.peek(1).text == "∈") {
    if (a.vars.size() != 1) ts.fail("':∈' takes one variable");
    ts.next();
    ts.next();
    Term x = Term::var(a.vars[0], true);
    if (ts.accept("{")) {
      std::vector<Term> elems;
      if (!ts.at("}")) {
        elems.push_back(ExprParser(ts).term());
        while (ts.accept(",")) elems.push_back(ExprParser(ts).term());
      }
      ts.expect("}");
      a.such_that = Formula::in_set(x, std::move(elems));
    } else {
      std::string set = ts.ident();
      if (set == "ℕ") set = "NAT";
      if (set == "ℤ") set = "INT";
      a.such_that = Formula::in_sort(x, set);
    }
  } else {
    ts.fail("expected ':=' or ':|'");
  }
  return a;
}

Action parse_action(std::string_view text) { return EbParser(text).single_action(); }

void validate_spec(const EbSpecification& spec) {
  std::set<std::string> machines, contexts;
  auto known_ctx = [&](const std::string& n, const std::string& who) {
    if (!contexts.count(n)) throw SemanticError(who + " references undefined context " + n);
  };
  for (const auto& u : spec.units) {
    const auto& name = unit_name(u);
    if (machines.count(name) || contexts.count(name)) throw SemanticError("duplicate name " + name);
    if (const auto* c = std::get_if<ContextDef>(&u)) {
      for (const auto& e : c->extends) known_ctx(e, name);
      std::set<std::string> seen;
      for (const auto& s : c->sets)
        if (!seen.insert(s).second) throw SemanticError("duplicate set or constant " + s + " in " + name);
      for (const auto& s : c->constants)
        if (!seen.insert(s).second) throw SemanticError("duplicate set or constant " + s + " in " + name);
      contexts.insert(name);
      continue;
    }
    const auto& m = std::get<MachineDef>(u);
    for (const auto& s : m.sees) known_ctx(s, name);
    if (m.refines && !machines.count(*m.refines))
      throw SemanticError(name + " refines undefined machine " + *m.refines);
    std::set<std::string> vars(m.variables.begin(), m.variables.end());
    if (vars.size() != m.variables.size()) throw SemanticError("duplicate variable in " + name);
    std::set<std::string> event_names{kInit};
    auto check_event = [&](const EventDef& e) {
      std::set<std::string> labels;
      auto lab = [&](const std::string& l) {
        if (!l.empty() && !labels.insert(l).second)
          throw SemanticError("duplicate label " + l + " in event " + e.name + " of " + name);
      };
      for (const auto& g : e.guards) lab(g.label);
      for (const auto& w : e.witnesses) lab(w.label);
      for (const auto& a : e.actions) {
        lab(a.label);
        for (const auto& v : a.vars)
          if (!vars.count(v)) throw SemanticError("event " + e.name + " of " + name + " assigns undeclared variable " + v);
      }
    };
    check_event(m.init);
    for (const auto& e : m.events) {
      if (!event_names.insert(e.name).second) throw SemanticError("duplicate event " + e.name + " in " + name);
      check_event(e);
    }
    machines.insert(name);
  }
}

}  // namespace evtforge
