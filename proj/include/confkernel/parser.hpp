#pragma once

// Recursive-descent parser for the ASCII polynomial grammar:
//
//   expr     := ['+'|'-'] term (('+'|'-') term)*
//   term     := factor ('*' factor)*
//   factor   := atom ('^' uint)?
//   atom     := rational | ident | '(' expr ')'
//   rational := int ('/' posint)?

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "confkernel/polynomial.hpp"

namespace confkernel {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::runtime_error(message + " at column " + std::to_string(position + 1)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

inline constexpr unsigned kMaxExponent = 4096;

Polynomial parse(std::string_view text, const RingPtr& ring);

}  // namespace confkernel
