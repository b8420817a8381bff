#pragma once

// Bounded-degree ansatz solving: unknown polynomials, linear functional
// equations in them, and their exact nullspace over Q.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "confkernel/algebra.hpp"
#include "confkernel/biderivations.hpp"
#include "confkernel/maps.hpp"

namespace confkernel {

class SolverError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------- sparse rows

using SparseVec = std::vector<std::pair<std::size_t, Rational>>;  // sorted by column

/// Incremental row echelon form over Q with unit pivots.
class RowEchelon {
 public:
  /// Reduces v against the stored rows (leading entries only unless full).
  SparseVec reduce(SparseVec v, bool full = false) const;
  /// Adds v if it is independent; returns true when the rank grew.
  bool insert(SparseVec v);
  std::size_t rank() const { return rows_.size(); }
  /// Back-substitutes to reduced row echelon form, rows sorted by pivot.
  std::vector<SparseVec> rref() const;
  const std::vector<std::size_t>& pivots() const { return pivot_cols_; }

 private:
  std::vector<SparseVec> rows_;
  std::vector<std::size_t> pivot_cols_;
  std::map<std::size_t, std::size_t> pivot_row_;  // column -> row
};

/// RREF of a list of vectors (zero rows dropped).
std::vector<SparseVec> rref(const std::vector<SparseVec>& rows);

// ---------------------------------------------------------------- systems

struct UnknownPoly {
  std::string name;
  std::vector<std::size_t> vars;   // ambient ring indices of the formal variables
  std::vector<unsigned> bounds;    // per-variable degree bound
  std::optional<unsigned> total;   // optional total-degree bound

  /// Exponent vectors over the ambient ring, highest grlex first.
  std::vector<Exponents> monomials(const RingPtr& ring) const;
};

/// coefficient * unknown(subst[0], subst[1], ...)
struct LinearTermRef {
  std::size_t unknown;
  std::vector<Polynomial> subst;
  Polynomial coefficient;
};

struct Equation {
  std::string label;
  std::vector<LinearTermRef> terms;  // sum == 0
};

struct LinearSystem {
  RingPtr ring;
  std::vector<UnknownPoly> unknowns;
  std::vector<Equation> equations;
};

/// One assignment per basis element: unknown index -> polynomial.
struct SolutionBasis {
  std::vector<std::vector<Polynomial>> basis;
  std::size_t dim() const { return basis.size(); }
};

/// Column layout of a system: unknowns in order, monomials highest first.
struct ColumnLayout {
  std::vector<std::size_t> offset;
  std::vector<std::vector<Exponents>> monomials;
  std::size_t size = 0;

  ColumnLayout(const LinearSystem& system);
  std::vector<Polynomial> assignment(const SparseVec& v, const RingPtr& ring) const;
  SparseVec vector(const std::vector<Polynomial>& assignment) const;
};

/// Residual of each equation under the assignment.
std::vector<Polynomial> evaluate(const LinearSystem& system, const std::vector<Polynomial>& assignment);

SolutionBasis solve(const LinearSystem& system);

/// Solution vectors in column coordinates, RREF.
std::vector<SparseVec> nullspace(const LinearSystem& system);

// ---------------------------------------------------------------- front ends

struct DerivationResult {
  Parity parity;
  unsigned bound_del, bound_lam;
  std::vector<ConformalEnd> basis;
  std::size_t dim = 0, inner_dim = 0, outer_dim = 0;
  std::vector<ConformalEnd> outer;
  std::optional<bool> stable;
};

DerivationResult solve_derivations(const LcsAlgebra& alg, Parity parity, unsigned bound_del,
                                   unsigned bound_lam, bool check_stability = true);

/// The derivation system on its own (unknown D[i][j] for admissible pairs).
LinearSystem derivation_system(const LcsAlgebra& alg, Parity parity, unsigned bound_del,
                               unsigned bound_lam, std::vector<std::pair<std::size_t, std::size_t>>* slots = nullptr);

struct BiderivationResult {
  unsigned bound_del, bound_lam;
  std::vector<ConformalBiMap> basis;  // even part first, then odd
  std::size_t dim = 0, even_dim = 0, odd_dim = 0, inner_dim = 0, outer_dim = 0;
  std::vector<ConformalBiMap> outer;
  std::optional<bool> stable;
};

BiderivationResult solve_biderivations(const LcsAlgebra& alg, unsigned bound_del, unsigned bound_lam,
                                       bool check_stability = true);

struct KeyEqResult {
  Rational a, b, c;
  unsigned bound;
  RingPtr ring;  // x, y, z
  std::vector<Polynomial> basis;
  std::size_t dim() const { return basis.size(); }
};

/// (x+by)f(x+y,z) - (x+ay+z)f(x,z) = (cy-z)f(x,y+z), deg f <= bound.
KeyEqResult solve_keyeq(const Rational& a, const Rational& b, const Rational& c, unsigned bound);
RingPtr keyeq_ring();

/// Refuses systems or algebras with parameters left symbolic.
void require_numeric(const LcsAlgebra& alg);

}  // namespace confkernel
