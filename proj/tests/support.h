#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "evtforge/syntax.h"
#include "evtforge/workspace.h"

namespace evtforge::test {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(EVTFORGE_FIXTURE_DIR) / name;
}

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture(name), std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Workspace load(const std::vector<std::string>& names) {
  std::vector<std::filesystem::path> ps;
  for (const auto& n : names) ps.push_back(fixture(n));
  return load_files(ps);
}

inline std::vector<std::string> token_texts(const std::string& text) {
  std::vector<std::string> out;
  for (const auto& t : tokenize(text)) {
    if (t.kind == Token::Kind::End) break;
    out.push_back(t.primed ? t.text + "'" : t.text);
  }
  return out;
}

// Index of the first differing token, or -1.
inline long first_token_diff(const std::string& a, const std::string& b) {
  auto ta = token_texts(a);
  auto tb = token_texts(b);
  size_t n = std::min(ta.size(), tb.size());
  for (size_t i = 0; i < n; ++i)
    if (ta[i] != tb[i]) return long(i);
  return ta.size() == tb.size() ? -1 : long(n);
}

inline std::string token_context(const std::string& text, long at) {
  auto t = token_texts(text);
  std::string out;
  for (long i = std::max(0L, at - 3); i < std::min(long(t.size()), at + 4); ++i) out += t[size_t(i)] + " ";
  return out;
}

// Seeded generator shared by the property tests.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  int below(int n) { return std::uniform_int_distribution<int>(0, n - 1)(g_); }
  bool coin() { return below(2) == 1; }

 private:
  std::mt19937_64 g_;
};

}  // namespace evtforge::test
