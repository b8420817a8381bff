#pragma once

#include <random>
#include <string>

#include "confkernel/algebra.hpp"
#include "confkernel/catalog.hpp"
#include "confkernel/parser.hpp"

namespace testing {

using namespace confkernel;

inline Polynomial P(const std::string& text, const RingPtr& ring) { return parse(text, ring); }

inline Rational small_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

inline Rational nonzero_rational(std::mt19937_64& rng) {
  Rational r;
  do r = small_rational(rng);
  while (r == 0);
  return r;
}

// random polynomial in the given variables, few terms, low degree
inline Polynomial random_poly(std::mt19937_64& rng, const RingPtr& ring, const std::vector<std::size_t>& vars,
                              unsigned max_deg = 3, int max_terms = 4) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<unsigned> deg(0, max_deg);
  Polynomial p(ring);
  int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    Exponents e(ring->size(), 0);
    for (auto v : vars) e[v] = deg(rng);
    p += Polynomial::monomial(ring, e, small_rational(rng));
  }
  return p;
}

inline ParamValues values(std::initializer_list<std::pair<const char*, Rational>> kv) {
  ParamValues v;
  for (const auto& [k, x] : kv) v[k] = x;
  return v;
}

inline LcsAlgebra algebra(const std::string& key, ParamValues v = {}, bool symbolic = false) {
  BuildOptions o;
  o.values = std::move(v);
  o.symbolic = symbolic;
  return build_algebra(key, o);
}

}  // namespace testing
