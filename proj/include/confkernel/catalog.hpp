#pragma once

// Built-in algebras and the algebra text format.

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "confkernel/algebra.hpp"

namespace confkernel {

using ParamValues = std::map<std::string, Rational>;

class SchemaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ParamSchema {
  std::string name;
  bool nonzero = false;
  std::optional<Rational> default_value;
  /// Generic coefficient (p0, q1, ...): stays symbolic unless given a value.
  bool generic = false;
};

struct BuildOptions {
  ParamValues values;
  /// Leave parameters without an explicit value symbolic (defaults ignored).
  bool symbolic = false;
  /// Degree of the generic polynomials p(del), q(lam) in the rank-(1+1) families.
  unsigned generic_degree = 3;
};

struct CatalogEntry {
  std::string key;
  std::string description;
  std::function<std::vector<ParamSchema>(unsigned generic_degree)> schema;
  /// The entry in the algebra text format.
  std::function<std::string(unsigned generic_degree)> source;
};

const std::vector<CatalogEntry>& algebra_catalog();
const CatalogEntry& algebra_entry(const std::string& key);

LcsAlgebra build_algebra(const std::string& key, const BuildOptions& options = {});

/// Substitutes the given parameter values and drops them from the ring.
/// Enforces nonzero flags and applies defaults unless symbolic is set.
LcsAlgebra instantiate(const LcsAlgebra& alg, const std::vector<ParamSchema>& schema,
                       const BuildOptions& options);

LcsAlgebra parse_algebra(std::string_view text, const std::string& source = "<text>");
std::string format_algebra(const LcsAlgebra& alg);
LcsAlgebra load_algebra(const std::string& path);
void save_algebra(const LcsAlgebra& alg, const std::string& path);

/// Substitutes parameter values into a polynomial and re-embeds it into target.
Polynomial specialize(const Polynomial& p, const ParamValues& values, const RingPtr& target);

}  // namespace confkernel
