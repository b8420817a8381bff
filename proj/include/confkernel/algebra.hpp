#pragma once

// Finite free Z2-graded Lie conformal superalgebras given by structure
// polynomials, the sesquilinear lambda-bracket, and the axiom checkers.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "confkernel/polynomial.hpp"

namespace confkernel {

enum class Parity : std::uint8_t { Even = 0, Odd = 1 };

inline Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}

/// (-1)^{|a||b|}
inline int sign(Parity a, Parity b) { return (a == Parity::Odd && b == Parity::Odd) ? -1 : 1; }

std::string to_string(Parity p);
Parity parse_parity(const std::string& text);

using PolyVec = std::vector<Polynomial>;
/// table[i][j][k]: coefficient of e_k in the product of e_i and e_j.
using Table = std::vector<std::vector<PolyVec>>;

Table zero_table(const RingPtr& ring, std::size_t rows, std::size_t cols, std::size_t out);

struct ParameterSpec {
  std::string name;
  bool nonzero = false;

  bool operator==(const ParameterSpec&) const = default;
};

class LcsAlgebra {
 public:
  /// Table entries may only involve del, lam and parameters. Parity closure
  /// is not enforced here; check_parity_closure reports it.
  LcsAlgebra(std::string name, RingPtr ring, std::vector<std::string> generators,
             std::vector<Parity> parities, std::vector<ParameterSpec> params, Table table);

  const std::string& name() const { return name_; }
  const RingPtr& ring() const { return ring_; }
  std::size_t size() const { return generators_.size(); }
  const std::vector<std::string>& generators() const { return generators_; }
  const std::string& generator(std::size_t i) const { return generators_.at(i); }
  std::size_t index(const std::string& generator) const;
  Parity parity(std::size_t i) const { return parities_.at(i); }
  const std::vector<Parity>& parities() const { return parities_; }
  const std::vector<ParameterSpec>& params() const { return params_; }
  const Table& table() const { return table_; }
  const Polynomial& structure(std::size_t i, std::size_t j, std::size_t k) const {
    return table_[i][j][k];
  }

  /// True when some table entry still involves a parameter.
  bool is_symbolic() const;

  /// Same presentation re-expressed in a larger ring (extra parameters).
  LcsAlgebra embed(const RingPtr& target) const;

  /// Structural equality: generators, parities, tables.
  bool operator==(const LcsAlgebra& other) const;

 private:
  std::string name_;
  RingPtr ring_;
  std::vector<std::string> generators_;
  std::vector<Parity> parities_;
  std::vector<ParameterSpec> params_;
  Table table_;
};

/// p(del) e_i combinations; coefficients must not involve lambda variables.
struct Element {
  PolyVec coeffs;

  static Element generator(const LcsAlgebra& alg, std::size_t i);
  static Element generator(const RingPtr& ring, std::size_t n, std::size_t i);
  /// Parity of the support, or throws if the element is not homogeneous.
  Parity parity(const std::vector<Parity>& parities) const;
};

/// Values in C[lambda-vars] (x) R: coefficients may involve any indeterminate.
struct LambdaElement {
  PolyVec coeffs;

  bool is_zero() const;
  std::string to_string(const std::vector<std::string>& names) const;
  bool operator==(const LambdaElement&) const = default;
};

/// Sesquilinear extension of a structure table:
///   sum_{i,j} x_i(-L) * y_j(del + L) * T[i][j][.](del, L)
/// where L is any polynomial (typically a lambda variable or a sum of them).
/// x and y may carry other lambda variables; only del is shifted.
PolyVec sesquilinear(const Table& table, const PolyVec& x, const Polynomial& lam,
                     const PolyVec& y, const RingPtr& ring, std::size_t out_dim);

/// [x_{lv} y] for elements of the algebra; lv names a lambda variable.
LambdaElement bracket(const LcsAlgebra& alg, const Element& x, const std::string& lv,
                      const Element& y);

/// Bracket with an arbitrary lambda expression and lambda-valued operands.
PolyVec bracket(const LcsAlgebra& alg, const PolyVec& x, const Polynomial& lam, const PolyVec& y);

/// Renders a vector over named generators: "(del + 2*lam)*L + lam*H".
std::string format_vector(const PolyVec& v, const std::vector<std::string>& names);

struct Violation {
  std::vector<std::string> where;  // generator names of the pair/triple/tuple
  std::string component;           // output generator (or note)
  Polynomial residual;
};

struct CheckReport {
  std::string check;
  std::size_t cases = 0;
  std::vector<Violation> violations;

  bool passed() const { return violations.empty(); }
};

/// B[i][j](del, lam) + (-1)^{|i||j|} B[j][i](del, -del-lam) == 0 for all i, j.
CheckReport check_skew_symmetry(const LcsAlgebra& alg);

/// [e_i lam [e_j mu e_k]] - [[e_i lam e_j]_{lam+mu} e_k]
///   - (-1)^{|i||j|} [e_j mu [e_i lam e_k]] == 0 for all triples.
CheckReport check_jacobi(const LcsAlgebra& alg);

/// B[i][j][k] != 0 only when parity(k) = parity(i) + parity(j).
CheckReport check_parity_closure(const LcsAlgebra& alg);

/// Element-level residuals used by the property tests.
PolyVec skew_residual(const LcsAlgebra& alg, const PolyVec& x, Parity px, const PolyVec& y,
                      Parity py);
PolyVec jacobi_residual(const LcsAlgebra& alg, const PolyVec& x, Parity px, const PolyVec& y,
                        Parity py, const PolyVec& z);

/// Convenience handles for the standard ring's variables.
struct StdVars {
  explicit StdVars(const RingPtr& ring);
  Polynomial del, lam, mu, nu, one;
};

}  // namespace confkernel
