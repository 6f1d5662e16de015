#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace evtforge {

// Malformed input to an operation: unknown symbol, bad sort, missing binding.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line_(line), col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

// Well-formed but meaningless: dangling reference, signature clash, bad morphism.
class SemanticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CeilingError : public std::runtime_error {
 public:
  CeilingError(const std::string& what, std::uint64_t size)
      : std::runtime_error(what + " exceeds ceiling (" + std::to_string(size) + "+)"), size_(size) {}
  std::uint64_t size() const { return size_; }

 private:
  std::uint64_t size_;
};

}  // namespace evtforge
