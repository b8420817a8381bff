#pragma once

// Shared helpers for the line-oriented algebra / map / bimap / module files.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "confkernel/algebra.hpp"

namespace confkernel {

class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& source, std::size_t line, const std::string& message)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct SourceLine {
  std::size_t number;
  std::vector<std::string> words;  // whitespace split, before any '='
  std::string rhs;                 // text after '=', trimmed; empty if no '='
};

/// Splits text into non-empty lines with '#' comments removed.
std::vector<SourceLine> split_lines(std::string_view text);

std::string trim(std::string_view s);

/// Parses "<expr> * <name> (+ <expr> * <name>)* | 0" into a coefficient
/// vector over names. Every term must be linear in exactly one name.
PolyVec parse_linear(std::string_view rhs, const std::vector<std::string>& names,
                     const RingPtr& ring);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace confkernel
