#include <array>
#include <cctype>

#include "evtforge/syntax.h"

namespace evtforge {

namespace {

struct Spelling {
  std::string_view src;
  std::string_view canon;
};

// Longest spellings first so that prefixes never shadow them.
constexpr std::array kSymbols{
    Spelling{"#forall", "∀"}, Spelling{"#exists", "∃"}, Spelling{"<=>", "⇔"}, Spelling{"|->", "↦"},
    Spelling{"/\\", "∧"},     Spelling{"\\/", "∨"},     Spelling{"=>", "⇒"},  Spelling{"<=", "≤"},
    Spelling{">=", "≥"},      Spelling{"/=", "≠"},      Spelling{":=", "≔"},  Spelling{":|", ":∣"},
    Spelling{":∣", ":∣"},     Spelling{"∧", "∧"},       Spelling{"∨", "∨"},   Spelling{"¬", "¬"},
    Spelling{"⇒", "⇒"},       Spelling{"⇔", "⇔"},       Spelling{"≤", "≤"},   Spelling{"≥", "≥"},
    Spelling{"≠", "≠"},       Spelling{"↦", "↦"},       Spelling{"≔", "≔"},   Spelling{"∀", "∀"},
    Spelling{"∃", "∃"},       Spelling{"·", "·"},       Spelling{"∈", "∈"},   Spelling{"∉", "∉"},
    Spelling{"⟨", "⟨"},       Spelling{"⟩", "⟩"},       Spelling{"−", "-"},   Spelling{"⊤", "⊤"},
    Spelling{"⊥", "⊥"},       Spelling{"!", "¬"},       Spelling{"(", "("},   Spelling{")", ")"},
    Spelling{"{", "{"},       Spelling{"}", "}"},       Spelling{"[", "["},   Spelling{"]", "]"},
    Spelling{",", ","},       Spelling{":", ":"},       Spelling{";", ";"},   Spelling{"=", "="},
    Spelling{"<", "<"},       Spelling{">", ">"},       Spelling{"+", "+"},   Spelling{"-", "-"},
    Spelling{"*", "*"},       Spelling{"∗", "*"},       Spelling{".", "."},       Spelling{"|", "|"},
};

bool starts_with(std::string_view s, size_t i, std::string_view p) { return s.substr(i, p.size()) == p; }

size_t utf8_len(unsigned char c) {
  if (c < 0x80) return 1;
  if ((c >> 5) == 0x6) return 2;
  if ((c >> 4) == 0xe) return 3;
  return 4;
}

bool ident_start_ascii(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_cont_ascii(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '@'; }

const Spelling* symbol_at(std::string_view s, size_t i) {
  for (const auto& sp : kSymbols) {
    if (starts_with(s, i, sp.src)) return &sp;
  }
  return nullptr;
}

}  // namespace

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  int line = 1;
  size_t line_start = 0;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c == '\n') {
      ++line;
      line_start = ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (starts_with(s, i, "//")) {
      while (i < s.size() && s[i] != '\n') ++i;
      continue;
    }
    Token t;
    t.line = line;
    t.col = int(i - line_start) + 1;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      t.kind = Token::Kind::Number;
      t.text = std::string(s.substr(i, j - i));
      out.push_back(t);
      i = j;
      continue;
    }
    // A non-ASCII character that is not a known symbol is an identifier character,
    // which admits names such as σ_h, ρ and ℕ.
    auto is_ident_char = [&](size_t k, bool first) {
      unsigned char u = static_cast<unsigned char>(s[k]);
      if (u >= 0x80) return !symbol_at(s, k) && !starts_with(s, k, "′");
      if (first) return ident_start_ascii(s[k]);
      if (s[k] == '#') return k + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[k + 1]));
      return ident_cont_ascii(s[k]);
    };
    if (is_ident_char(i, true)) {
      size_t j = i;
      while (j < s.size() && is_ident_char(j, j == i)) j += utf8_len(static_cast<unsigned char>(s[j]));
      t.kind = Token::Kind::Ident;
      t.text = std::string(s.substr(i, j - i));
      if (starts_with(s, j, "'")) {
        t.primed = true;
        j += 1;
      } else if (starts_with(s, j, "′")) {
        t.primed = true;
        j += std::string_view("′").size();
      }
      out.push_back(t);
      i = j;
      continue;
    }
    if (const Spelling* sp = symbol_at(s, i)) {
      t.kind = Token::Kind::Symbol;
      t.text = std::string(sp->canon);
      out.push_back(t);
      i += sp->src.size();
      continue;
    }
    throw ParseError("unexpected character '" + std::string(s.substr(i, utf8_len(static_cast<unsigned char>(c)))) + "'",
                     t.line, t.col);
  }
  Token end;
  end.line = line;
  end.col = int(i - line_start) + 1;
  out.push_back(end);
  return out;
}

const Token& TokenStream::peek(size_t k) const {
  size_t p = std::min(pos_ + k, toks_.size() - 1);
  return toks_[p];
}

const Token& TokenStream::next() {
  const Token& t = toks_[pos_];
  if (pos_ + 1 < toks_.size()) ++pos_;
  return t;
}

bool TokenStream::at(std::string_view sym) const {
  const auto& t = peek();
  return t.kind == Token::Kind::Symbol && t.text == sym;
}

bool TokenStream::at_word(std::string_view w, size_t k) const {
  const auto& t = peek(k);
  return t.kind == Token::Kind::Ident && !t.primed && t.text == w;
}

bool TokenStream::accept(std::string_view sym) {
  if (!at(sym)) return false;
  next();
  return true;
}

bool TokenStream::accept_word(std::string_view w) {
  if (!at_word(w)) return false;
  next();
  return true;
}

void TokenStream::expect(std::string_view sym) {
  if (!accept(sym)) fail("expected '" + std::string(sym) + "'");
}

void TokenStream::expect_word(std::string_view w) {
  if (!accept_word(w)) fail("expected '" + std::string(w) + "'");
}

std::string TokenStream::ident() {
  const auto& t = peek();
  if (t.kind != Token::Kind::Ident || t.primed) fail("expected identifier");
  return next().text;
}

void TokenStream::fail(const std::string& msg) const {
  const auto& t = peek();
  std::string got = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
  throw ParseError(msg + ", got " + got, t.line, t.col);
}

}  // namespace evtforge
