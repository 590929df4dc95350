#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace psim {

// Malformed formula, program, table or proof text. `position` is a byte
// offset into the input (or a 1-based line number for line-oriented files).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : std::runtime_error(what), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// A configured cap (variables, antecedents, rows, bit budget, clauses) was
// exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace psim
