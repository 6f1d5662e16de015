#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "evtforge/fopeq.h"

namespace evtforge {

// Shared lexer for the Event-B text format, the sugar and refinement
// declarations. ASCII spellings are normalised to their Unicode symbol.
struct Token {
  enum class Kind : std::uint8_t { Ident, Number, Symbol, End };
  Kind kind = Kind::End;
  std::string text;
  bool primed = false;
  int line = 0;
  int col = 0;
};

std::vector<Token> tokenize(std::string_view src);

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}
  explicit TokenStream(std::string_view src) : toks_(tokenize(src)) {}

  const Token& peek(size_t k = 0) const;
  const Token& next();
  bool at_end() const { return peek().kind == Token::Kind::End; }
  bool at(std::string_view sym) const;
  bool at_word(std::string_view w, size_t k = 0) const;
  bool accept(std::string_view sym);
  bool accept_word(std::string_view w);
  void expect(std::string_view sym);
  void expect_word(std::string_view w);
  std::string ident();
  [[noreturn]] void fail(const std::string& msg) const;

  size_t pos() const { return pos_; }
  void seek(size_t p) { pos_ = p; }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
};

// Expressions and predicates of the supported fragment. With `single_line`,
// a predicate ends at the first token on a later line outside parentheses.
class ExprParser {
 public:
  explicit ExprParser(TokenStream& ts, bool single_line = false) : ts_(ts), single_line_(single_line) {}

  Formula formula();
  Term term();

 private:
  const Token& cur();
  bool at(std::string_view sym);
  bool at_word(std::string_view w);
  void advance();
  void expect(std::string_view sym);

  Formula iff();
  Formula implies();
  Formula disj();
  Formula conj();
  Formula unary();
  Formula atom();
  Formula relation();
  Term additive();
  Term multiplicative();
  Term unary_term();
  Term primary();
  std::vector<Term> term_list(std::string_view close);

  TokenStream& ts_;
  bool single_line_;
  int depth_ = 0;
  int start_line_ = -1;
};

Formula parse_formula(std::string_view src);
Term parse_term(std::string_view src);

bool is_relop(const Token& t);

}  // namespace evtforge
