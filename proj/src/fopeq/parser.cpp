#include "evtforge/syntax.h"

namespace evtforge {

namespace {

const Token kEnd{};

bool is_arith_op(const Token& t) {
  return t.kind == Token::Kind::Symbol && (t.text == "+" || t.text == "-" || t.text == "*");
}

}  // namespace

bool is_relop(const Token& t) {
  if (t.kind != Token::Kind::Symbol) return false;
  static const std::set<std::string> ops{"=", "≠", "<", "≤", ">", "≥", "∈", "∉"};
  return ops.count(t.text) > 0;
}

const Token& ExprParser::cur() {
  const Token& t = ts_.peek();
  if (single_line_ && depth_ == 0 && start_line_ >= 0 && t.kind != Token::Kind::End && t.line != start_line_)
    return kEnd;
  return t;
}

bool ExprParser::at(std::string_view sym) {
  const auto& t = cur();
  return t.kind == Token::Kind::Symbol && t.text == sym;
}

bool ExprParser::at_word(std::string_view w) {
  const auto& t = cur();
  return t.kind == Token::Kind::Ident && !t.primed && t.text == w;
}

void ExprParser::advance() { ts_.next(); }

void ExprParser::expect(std::string_view sym) {
  if (!at(sym)) ts_.fail("expected '" + std::string(sym) + "'");
  advance();
}

Formula ExprParser::formula() {
  if (start_line_ < 0) start_line_ = ts_.peek().line;
  return iff();
}

Term ExprParser::term() {
  if (start_line_ < 0) start_line_ = ts_.peek().line;
  return additive();
}

Formula ExprParser::iff() {
  Formula f = implies();
  while (at("⇔")) {
    advance();
    f = Formula::iff(std::move(f), implies());
  }
  return f;
}

Formula ExprParser::implies() {
  Formula f = disj();
  if (at("⇒")) {
    advance();
    return Formula::implies(std::move(f), implies());
  }
  return f;
}

Formula ExprParser::disj() {
  std::vector<Formula> fs{conj()};
  while (at("∨")) {
    advance();
    fs.push_back(conj());
  }
  return fs.size() == 1 ? std::move(fs[0]) : Formula::disj(std::move(fs));
}

Formula ExprParser::conj() {
  std::vector<Formula> fs{unary()};
  while (at("∧")) {
    advance();
    fs.push_back(unary());
  }
  return fs.size() == 1 ? std::move(fs[0]) : Formula::conj(std::move(fs));
}

Formula ExprParser::unary() {
  if (at("¬")) {
    advance();
    return Formula::negate(unary());
  }
  if (at("∀") || at("∃")) {
    auto kind = at("∀") ? Formula::Kind::Forall : Formula::Kind::Exists;
    advance();
    std::vector<Binder> bs;
    do {
      if (cur().kind != Token::Kind::Ident) ts_.fail("expected bound variable");
      Binder b{ts_.next().text, ""};
      if (at(":")) {
        advance();
        if (cur().kind != Token::Kind::Ident) ts_.fail("expected sort");
        b.sort = ts_.next().text;
        if (b.sort == "ℕ") b.sort = "NAT";
        if (b.sort == "ℤ") b.sort = "INT";
      }
      bs.push_back(std::move(b));
    } while (at(",") && (advance(), true));
    if (!at("·") && !at(".")) ts_.fail("expected '·'");
    advance();
    return Formula::quant(kind, std::move(bs), iff());
  }
  return atom();
}

Formula ExprParser::atom() {
  const Token& t = cur();
  bool word_true = t.kind == Token::Kind::Ident && !t.primed && t.text == "true";
  bool word_false = t.kind == Token::Kind::Ident && !t.primed && t.text == "false";
  if (at("⊤") || at("⊥") || word_true || word_false) {
    bool value = at("⊤") || word_true;
    size_t save = ts_.pos();
    advance();
    if (!is_relop(cur())) return value ? Formula::truth() : Formula::falsity();
    ts_.seek(save);
  }
  if (at("(")) {
    size_t save = ts_.pos();
    int depth = depth_;
    try {
      advance();
      ++depth_;
      Formula f = formula();
      expect(")");
      --depth_;
      if (!is_relop(cur()) && !is_arith_op(cur())) return f;
    } catch (const ParseError&) {
    }
    ts_.seek(save);
    depth_ = depth;
  }
  return relation();
}

Formula ExprParser::relation() {
  Term lhs = term();
  const Token& op = cur();
  if (!is_relop(op)) {
    if (lhs.kind == Term::Kind::Var && !lhs.primed) return Formula::pred(lhs.name, {});
    if (lhs.kind == Term::Kind::Var) return Formula::eq(lhs, Term::boolean(true));
    if (lhs.kind == Term::Kind::App && lhs.name != "+" && lhs.name != "-" && lhs.name != "*" && lhs.name != "neg")
      return Formula::pred(lhs.name, lhs.args);
    ts_.fail("expected a predicate");
  }
  std::string sym = op.text;
  advance();
  if (sym == "∈" || sym == "∉") {
    Formula f;
    if (at("{")) {
      advance();
      ++depth_;
      f = Formula::in_set(std::move(lhs), term_list("}"));
      --depth_;
    } else {
      if (cur().kind != Token::Kind::Ident) ts_.fail("expected a set");
      std::string s = ts_.next().text;
      if (s == "ℕ" || s == "NAT") s = "NAT";
      else if (s == "ℤ" || s == "INT") s = "INT";
      f = Formula::in_sort(std::move(lhs), s);
    }
    return sym == "∉" ? Formula::negate(std::move(f)) : f;
  }
  if (sym == "=" && at("{")) {
    if (lhs.kind != Term::Kind::Var || lhs.primed) ts_.fail("set equality needs a sort name on the left");
    advance();
    ++depth_;
    auto elems = term_list("}");
    --depth_;
    return Formula::sort_eq(lhs.name, std::move(elems));
  }
  Term rhs = term();
  using K = Formula::Kind;
  K k = sym == "=" ? K::Eq : sym == "≠" ? K::Ne : sym == "<" ? K::Lt : sym == "≤" ? K::Le : sym == ">" ? K::Gt : K::Ge;
  return Formula::cmp(k, std::move(lhs), std::move(rhs));
}

std::vector<Term> ExprParser::term_list(std::string_view close) {
  std::vector<Term> out;
  if (at(close)) {
    advance();
    return out;
  }
  out.push_back(term());
  while (at(",")) {
    advance();
    out.push_back(term());
  }
  expect(close);
  return out;
}

Term ExprParser::additive() {
  Term t = multiplicative();
  while (at("+") || at("-")) {
    std::string op = ts_.next().text;
    t = Term::app(op, {std::move(t), multiplicative()});
  }
  return t;
}

Term ExprParser::multiplicative() {
  Term t = unary_term();
  while (at("*")) {
    advance();
    t = Term::app("*", {std::move(t), unary_term()});
  }
  return t;
}

Term ExprParser::unary_term() {
  if (at("-")) {
    advance();
    Term t = unary_term();
    if (t.kind == Term::Kind::Int) {
      t.value = -t.value;
      return t;
    }
    return Term::app("neg", {std::move(t)});
  }
  return primary();
}

Term ExprParser::primary() {
  const Token& t = cur();
  if (t.kind == Token::Kind::Number) {
    Value v = std::stoll(t.text);
    advance();
    return Term::integer(v);
  }
  if (t.kind == Token::Kind::Ident) {
    if (!t.primed && (t.text == "TRUE" || t.text == "true")) {
      advance();
      return Term::boolean(true);
    }
    if (!t.primed && (t.text == "FALSE" || t.text == "false")) {
      advance();
      return Term::boolean(false);
    }
    Token id = ts_.next();
    const Token& after = cur();
    if (!id.primed && after.kind == Token::Kind::Symbol && after.text == "(" && after.line == id.line) {
      advance();
      ++depth_;
      auto args = term_list(")");
      --depth_;
      return Term::app(id.text, std::move(args));
    }
    return Term::var(id.text, id.primed);
  }
  if (at("(")) {
    advance();
    ++depth_;
    Term inner = term();
    expect(")");
    --depth_;
    return inner;
  }
  ts_.fail("expected an expression");
}

Formula parse_formula(std::string_view src) {
  TokenStream ts(src);
  ExprParser p(ts);
  Formula f = p.formula();
  if (!ts.at_end()) ts.fail("trailing input after predicate");
  return f;
}

Term parse_term(std::string_view src) {
  TokenStream ts(src);
  ExprParser p(ts);
  Term t = p.term();
  if (!ts.at_end()) ts.fail("trailing input after expression");
  return t;
}

}  // namespace evtforge
