#include "confkernel/solver.hpp"

#include <algorithm>
#include <array>
#include <functional>

#include "confkernel/parallel.hpp"

namespace confkernel {

// ---------------------------------------------------------------- elimination

namespace {

using Acc = std::map<std::size_t, Rational>;

Acc to_acc(const SparseVec& v) {
  Acc a;
  for (const auto& [c, x] : v)
    if (x != 0) a.emplace(c, x);
  return a;
}

SparseVec from_acc(const Acc& a) {
  SparseVec v;
  v.reserve(a.size());
  for (const auto& [c, x] : a)
    if (x != 0) v.emplace_back(c, x);
  return v;
}

void axpy(Acc& acc, const Rational& c, const SparseVec& row) {
  for (const auto& [col, x] : row) {
    auto [it, fresh] = acc.try_emplace(col, 0);
    it->second -= c * x;
    if (it->second == 0) acc.erase(it);
  }
}

}  // namespace

SparseVec RowEchelon::reduce(SparseVec v, bool full) const {
  Acc acc = to_acc(v);
  auto it = acc.begin();
  while (it != acc.end()) {
    auto p = pivot_row_.find(it->first);
    if (p == pivot_row_.end()) {
      if (!full) break;
      ++it;
      continue;
    }
    std::size_t col = it->first;
    Rational c = it->second;
    axpy(acc, c, rows_[p->second]);
    it = acc.upper_bound(col);
    if (!full) it = acc.begin();
  }
  return from_acc(acc);
}

bool RowEchelon::insert(SparseVec v) {
  SparseVec r = reduce(std::move(v), false);
  if (r.empty()) return false;
  Rational lead = r.front().second;
  if (lead != 1)
    for (auto& [c, x] : r) x /= lead;
  pivot_row_[r.front().first] = rows_.size();
  pivot_cols_.push_back(r.front().first);
  rows_.push_back(std::move(r));
  return true;
}

std::vector<SparseVec> RowEchelon::rref() const {
  std::vector<std::size_t> order(rows_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return pivot_cols_[a] < pivot_cols_[b]; });
  std::vector<SparseVec> out(order.size());
  std::map<std::size_t, std::size_t> done;  // pivot column -> index in out
  for (std::size_t k = order.size(); k-- > 0;) {
    Acc acc = to_acc(rows_[order[k]]);
    std::size_t own = pivot_cols_[order[k]];
    for (auto it = acc.upper_bound(own); it != acc.end();) {
      auto p = done.find(it->first);
      if (p == done.end()) {
        ++it;
        continue;
      }
      std::size_t col = it->first;
      Rational c = it->second;
      axpy(acc, c, out[p->second]);
      it = acc.upper_bound(col);
    }
    out[k] = from_acc(acc);
    done[own] = k;
  }
  return out;
}

std::vector<SparseVec> rref(const std::vector<SparseVec>& rows) {
  RowEchelon e;
  for (const auto& r : rows) e.insert(r);
  return e.rref();
}

// ---------------------------------------------------------------- systems

std::vector<Exponents> UnknownPoly::monomials(const RingPtr& ring) const {
  if (bounds.size() != vars.size()) throw SolverError("unknown '" + name + "': bounds do not match variables");
  std::vector<Exponents> out;
  Exponents e(ring->size(), 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t k, unsigned used) {
    if (k == vars.size()) {
      out.push_back(e);
      return;
    }
    for (unsigned d = 0; d <= bounds[k]; ++d) {
      if (total && used + d > *total) break;
      e[vars[k]] = d;
      rec(k + 1, used + d);
    }
    e[vars[k]] = 0;
  };
  rec(0, 0);
  std::sort(out.begin(), out.end(), GrlexGreater{});
  return out;
}

ColumnLayout::ColumnLayout(const LinearSystem& system) {
  for (const auto& u : system.unknowns) {
    offset.push_back(size);
    monomials.push_back(u.monomials(system.ring));
    size += monomials.back().size();
  }
}

std::vector<Polynomial> ColumnLayout::assignment(const SparseVec& v, const RingPtr& ring) const {
  std::vector<Polynomial> out(offset.size(), Polynomial(ring));
  for (const auto& [col, x] : v) {
    std::size_t u = std::upper_bound(offset.begin(), offset.end(), col) - offset.begin() - 1;
    out[u] += Polynomial::monomial(ring, monomials[u][col - offset[u]], x);
  }
  return out;
}

SparseVec ColumnLayout::vector(const std::vector<Polynomial>& assignment) const {
  SparseVec v;
  for (std::size_t u = 0; u < assignment.size(); ++u) {
    std::size_t matched = 0;
    for (std::size_t m = 0; m < monomials[u].size(); ++m) {
      Rational c = assignment[u].coefficient(monomials[u][m]);
      if (c != 0) {
        v.emplace_back(offset[u] + m, c);
        ++matched;
      }
    }
    if (matched != assignment[u].terms().size())
      throw SolverError("assignment exceeds the degree bounds of its unknown");
  }
  return v;
}

namespace {

void validate(const LinearSystem& system) {
  if (system.unknowns.empty()) throw SolverError("the system has no unknowns");
  auto numeric = [](const Polynomial& p) {
    if (p.uses_role(Role::Parameter))
      throw SolverError("symbolic parameter in the system; instantiate all parameters first");
  };
  for (const auto& eq : system.equations)
    for (const auto& t : eq.terms) {
      if (t.unknown >= system.unknowns.size()) throw SolverError("equation references an undeclared unknown");
      if (t.subst.size() != system.unknowns[t.unknown].vars.size())
        throw SolverError("substitution arity does not match unknown '" + system.unknowns[t.unknown].name + "'");
      numeric(t.coefficient);
      for (const auto& s : t.subst) numeric(s);
    }
}

Bindings bindings_for(const UnknownPoly& u, const LinearTermRef& t) {
  Bindings b;
  for (std::size_t k = 0; k < u.vars.size(); ++k) b.emplace_back(u.vars[k], t.subst[k]);
  return b;
}

// Rows of one equation: one per ambient monomial.
std::vector<SparseVec> equation_rows(const LinearSystem& system, const ColumnLayout& layout,
                                     const Equation& eq) {
  std::map<Exponents, Acc, GrlexGreater> rows;
  for (const auto& t : eq.terms) {
    if (t.coefficient.is_zero()) continue;
    const UnknownPoly& u = system.unknowns[t.unknown];
    std::vector<std::vector<Polynomial>> powers(u.vars.size());
    for (std::size_t k = 0; k < u.vars.size(); ++k) {
      powers[k].push_back(Polynomial(system.ring, 1));
      for (unsigned d = 1; d <= u.bounds[k]; ++d) powers[k].push_back(powers[k].back() * t.subst[k]);
    }
    const auto& monos = layout.monomials[t.unknown];
    for (std::size_t m = 0; m < monos.size(); ++m) {
      Polynomial image = t.coefficient;
      for (std::size_t k = 0; k < u.vars.size(); ++k) image *= powers[k][monos[m][u.vars[k]]];
      std::size_t col = layout.offset[t.unknown] + m;
      for (const auto& [e, c] : image.terms()) {
        auto [it, fresh] = rows[e].try_emplace(col, 0);
        it->second += c;
      }
    }
  }
  std::vector<SparseVec> out;
  for (const auto& [e, acc] : rows) {
    SparseVec v = from_acc(acc);
    if (!v.empty()) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

std::vector<Polynomial> evaluate(const LinearSystem& system, const std::vector<Polynomial>& assignment) {
  std::vector<Polynomial> out;
  for (const auto& eq : system.equations) {
    Polynomial r(system.ring);
    for (const auto& t : eq.terms)
      r += t.coefficient * substitute(assignment.at(t.unknown), bindings_for(system.unknowns[t.unknown], t));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<SparseVec> nullspace(const LinearSystem& system) {
  validate(system);
  ColumnLayout layout(system);
  auto blocks = parallel_map<std::vector<SparseVec>>(
      system.equations.size(), [&](std::size_t i) { return equation_rows(system, layout, system.equations[i]); });
  RowEchelon echelon;
  for (const auto& rows : blocks)
    for (const auto& r : rows) echelon.insert(r);
  auto reduced = echelon.rref();
  std::vector<bool> is_pivot(layout.size, false);
  for (const auto& r : reduced) is_pivot[r.front().first] = true;
  std::vector<SparseVec> basis;
  for (std::size_t f = 0; f < layout.size; ++f) {
    if (is_pivot[f]) continue;
    Acc v;
    v[f] = 1;
    for (const auto& r : reduced)
      for (const auto& [c, x] : r)
        if (c == f) v[r.front().first] = -x;
    basis.push_back(from_acc(v));
  }
  return rref(basis);
}

SolutionBasis solve(const LinearSystem& system) {
  ColumnLayout layout(system);
  SolutionBasis out;
  for (const auto& v : nullspace(system)) {
    auto a = layout.assignment(v, system.ring);
    for (const auto& r : evaluate(system, a))
      if (!r.is_zero()) throw std::logic_error("solution failed re-verification");
    out.basis.push_back(std::move(a));
  }
  return out;
}

void require_numeric(const LcsAlgebra& alg) {
  if (alg.is_symbolic())
    throw SolverError("algebra '" + alg.name() + "' has symbolic parameters; give rational values");
}

// ---------------------------------------------------------------- derivations

namespace {

Polynomial shifted(const Polynomial& p, const Bindings& b) { return p.is_zero() ? p : substitute(p, b); }

bool fits(const Polynomial& p, std::size_t del, std::size_t lam, unsigned bd, unsigned bl) {
  return p.degree(del) <= bd && p.degree(lam) <= bl;
}

}  // namespace

LinearSystem derivation_system(const LcsAlgebra& alg, Parity parity, unsigned bound_del, unsigned bound_lam,
                               std::vector<std::pair<std::size_t, std::size_t>>* slots_out) {
  const std::size_t n = alg.size();
  const RingPtr& ring = alg.ring();
  StdVars v(ring);
  const std::size_t del = ring->partial(), lam = ring->index("lam");
  LinearSystem sys{ring, {}, {}};
  std::vector<std::vector<long>> slot(n, std::vector<long>(n, -1));
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (alg.parity(j) == alg.parity(i) + parity) {
        slot[i][j] = static_cast<long>(sys.unknowns.size());
        slots.emplace_back(i, j);
        sys.unknowns.push_back({"D_" + alg.generator(i) + "_" + alg.generator(j), {del, lam}, {bound_del, bound_lam}, {}});
      }
  Bindings lhs_b{{del, v.del + v.lam}, {lam, v.mu}};
  Bindings r1_b{{lam, v.lam + v.mu}};
  Bindings r2_b{{lam, v.mu}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      int s = sign(alg.parity(i), parity);
      for (std::size_t l = 0; l < n; ++l) {
        Equation eq{alg.generator(i) + "," + alg.generator(j) + ":" + alg.generator(l), {}};
        for (std::size_t k = 0; k < n; ++k)
          if (slot[k][l] >= 0 && !alg.structure(i, j, k).is_zero())
            eq.terms.push_back({static_cast<std::size_t>(slot[k][l]), {v.del, v.lam},
                                shifted(alg.structure(i, j, k), lhs_b)});
        for (std::size_t m = 0; m < n; ++m) {
          if (slot[i][m] >= 0 && !alg.structure(m, j, l).is_zero())
            eq.terms.push_back({static_cast<std::size_t>(slot[i][m]), {-v.lam - v.mu, v.lam},
                                -shifted(alg.structure(m, j, l), r1_b)});
          if (slot[j][m] >= 0 && !alg.structure(i, m, l).is_zero()) {
            Polynomial c = shifted(alg.structure(i, m, l), r2_b);
            eq.terms.push_back({static_cast<std::size_t>(slot[j][m]), {v.del + v.mu, v.lam}, s > 0 ? -c : c});
          }
        }
        if (!eq.terms.empty()) sys.equations.push_back(std::move(eq));
      }
    }
  if (slots_out) *slots_out = slots;
  return sys;
}

DerivationResult solve_derivations(const LcsAlgebra& alg, Parity parity, unsigned bound_del, unsigned bound_lam,
                                   bool check_stability) {
  require_numeric(alg);
  const std::size_t n = alg.size();
  const RingPtr& ring = alg.ring();
  const std::size_t del = ring->partial(), lam = ring->index("lam");
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  LinearSystem sys = derivation_system(alg, parity, bound_del, bound_lam, &slots);
  ColumnLayout layout(sys);
  auto vectors = nullspace(sys);

  auto to_end = [&](const SparseVec& vec) {
    auto a = layout.assignment(vec, ring);
    ConformalEnd d = ConformalEnd::zero(alg, parity);
    for (std::size_t u = 0; u < slots.size(); ++u) d.matrix[slots[u].first][slots[u].second] = a[u];
    return d;
  };

  DerivationResult out{parity, bound_del, bound_lam, {}, vectors.size(), 0, 0, {}, {}};
  for (const auto& vec : vectors) {
    ConformalEnd d = to_end(vec);
    if (!is_derivation(alg, d).passed()) throw std::logic_error("derivation basis element failed verification");
    out.basis.push_back(std::move(d));
  }

  RowEchelon inner;
  StdVars v(ring);
  for (std::size_t g = 0; g < n; ++g) {
    if (alg.parity(g) != parity) continue;
    ConformalEnd base = ad(alg, Element::generator(alg, g));
    Polynomial factor(ring, 1);
    for (unsigned k = 0;; ++k) {
      bool nonzero = false, ok = true;
      std::vector<Polynomial> a(slots.size());
      for (std::size_t u = 0; u < slots.size(); ++u) {
        a[u] = base.matrix[slots[u].first][slots[u].second] * factor;
        nonzero = nonzero || !a[u].is_zero();
        ok = ok && fits(a[u], del, lam, bound_del, bound_lam);
      }
      if (!nonzero || !ok) break;
      inner.insert(layout.vector(a));
      factor *= -v.lam;
    }
  }
  out.inner_dim = inner.rank();
  out.outer_dim = out.dim - out.inner_dim;

  RowEchelon inner_rref;
  for (const auto& r : inner.rref()) inner_rref.insert(r);
  std::vector<SparseVec> residuals;
  for (const auto& vec : vectors) residuals.push_back(inner_rref.reduce(vec, true));
  for (const auto& r : rref(residuals)) out.outer.push_back(to_end(r));
  if (out.outer.size() != out.outer_dim)
    throw std::logic_error("bounded inner derivations are not contained in the solution space");

  if (check_stability)
    out.stable = solve_derivations(alg, parity, bound_del, bound_lam + 1, false).outer_dim == out.outer_dim;
  return out;
}

// ---------------------------------------------------------------- biderivations

namespace {

struct BiderSolve {
  std::vector<ConformalBiMap> basis;
  std::vector<ConformalBiMap> outer;
  std::size_t inner_dim = 0;
};

BiderSolve solve_biderivations_parity(const LcsAlgebra& alg, Parity theta, unsigned bd, unsigned bl) {
  const std::size_t n = alg.size();
  const RingPtr& ring = alg.ring();
  StdVars v(ring);
  const std::size_t del = ring->partial(), lam = ring->index("lam");
  LinearSystem sys{ring, {}, {}};
  std::vector<std::vector<std::vector<long>>> slot(n, std::vector<std::vector<long>>(n, std::vector<long>(n, -1)));
  std::vector<std::array<std::size_t, 3>> slots;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (alg.parity(k) == alg.parity(i) + alg.parity(j) + theta) {
          slot[i][j][k] = static_cast<long>(sys.unknowns.size());
          slots.push_back({i, j, k});
          sys.unknowns.push_back(
              {"F_" + alg.generator(i) + "_" + alg.generator(j) + "_" + alg.generator(k), {del, lam}, {bd, bl}, {}});
        }
  auto id = [&](long s) { return static_cast<std::size_t>(s); };

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      int s = sign(alg.parity(i), alg.parity(j));
      for (std::size_t k = 0; k < n; ++k) {
        if (slot[i][j][k] < 0) continue;
        Equation eq{"skew " + alg.generator(i) + "," + alg.generator(j) + ":" + alg.generator(k), {}};
        eq.terms.push_back({id(slot[i][j][k]), {v.del, v.lam}, v.one});
        eq.terms.push_back({id(slot[j][i][k]), {v.del, -v.del - v.lam}, s > 0 ? v.one : -v.one});
        sys.equations.push_back(std::move(eq));
      }
    }

  Bindings lhs_b{{del, v.del + v.lam}, {lam, v.mu}};
  Bindings r1_b{{lam, v.lam + v.mu}};
  Bindings r2_b{{lam, v.mu}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        int s = sign(alg.parity(i), alg.parity(j));
        for (std::size_t l = 0; l < n; ++l) {
          Equation eq{"leibniz " + alg.generator(i) + "," + alg.generator(j) + "," + alg.generator(k) + ":" +
                          alg.generator(l),
                      {}};
          for (std::size_t m = 0; m < n; ++m) {
            if (slot[i][m][l] >= 0 && !alg.structure(j, k, m).is_zero())
              eq.terms.push_back({id(slot[i][m][l]), {v.del, v.lam}, shifted(alg.structure(j, k, m), lhs_b)});
            if (slot[i][j][m] >= 0 && !alg.structure(m, k, l).is_zero())
              eq.terms.push_back(
                  {id(slot[i][j][m]), {-v.lam - v.mu, v.lam}, -shifted(alg.structure(m, k, l), r1_b)});
            if (slot[i][k][m] >= 0 && !alg.structure(j, m, l).is_zero()) {
              Polynomial c = shifted(alg.structure(j, m, l), r2_b);
              eq.terms.push_back({id(slot[i][k][m]), {v.del + v.mu, v.lam}, s > 0 ? -c : c});
            }
          }
          if (!eq.terms.empty()) sys.equations.push_back(std::move(eq));
        }
      }

  ColumnLayout layout(sys);
  auto vectors = nullspace(sys);
  auto to_map = [&](const SparseVec& vec) {
    auto a = layout.assignment(vec, ring);
    ConformalBiMap f = ConformalBiMap::zero(alg, theta);
    for (std::size_t u = 0; u < slots.size(); ++u) f.F[slots[u][0]][slots[u][1]][slots[u][2]] = a[u];
    return f;
  };
  BiderSolve out;
  for (const auto& vec : vectors) {
    ConformalBiMap f = to_map(vec);
    if (!is_biderivation(alg, f).passed()) throw std::logic_error("biderivation basis element failed verification");
    out.basis.push_back(std::move(f));
  }

  RowEchelon inner;
  if (theta == Parity::Even) {
    std::vector<Polynomial> a(slots.size());
    bool ok = true, nonzero = false;
    for (std::size_t u = 0; u < slots.size(); ++u) {
      a[u] = alg.structure(slots[u][0], slots[u][1], slots[u][2]);
      nonzero = nonzero || !a[u].is_zero();
      ok = ok && fits(a[u], del, lam, bd, bl);
    }
    if (nonzero && ok) inner.insert(layout.vector(a));
  }
  out.inner_dim = inner.rank();
  std::vector<SparseVec> residuals;
  for (const auto& vec : vectors) residuals.push_back(inner.reduce(vec, true));
  for (const auto& r : rref(residuals)) out.outer.push_back(to_map(r));
  if (out.outer.size() + out.inner_dim != out.basis.size())
    throw std::logic_error("inner biderivation is not contained in the solution space");
  return out;
}

}  // namespace

BiderivationResult solve_biderivations(const LcsAlgebra& alg, unsigned bound_del, unsigned bound_lam,
                                       bool check_stability) {
  require_numeric(alg);
  BiderivationResult out{bound_del, bound_lam, {}, 0, 0, 0, 0, 0, {}, {}};
  for (Parity theta : {Parity::Even, Parity::Odd}) {
    BiderSolve part = solve_biderivations_parity(alg, theta, bound_del, bound_lam);
    (theta == Parity::Even ? out.even_dim : out.odd_dim) = part.basis.size();
    out.inner_dim += part.inner_dim;
    for (auto& f : part.basis) out.basis.push_back(std::move(f));
    for (auto& f : part.outer) out.outer.push_back(std::move(f));
  }
  out.dim = out.even_dim + out.odd_dim;
  out.outer_dim = out.dim - out.inner_dim;
  if (check_stability)
    out.stable = solve_biderivations(alg, bound_del, bound_lam + 1, false).dim == out.dim;
  return out;
}

// ---------------------------------------------------------------- key equation

RingPtr keyeq_ring() {
  static const RingPtr ring = std::make_shared<const Ring>(std::vector<Indeterminate>{
      {"x", Role::Partial}, {"y", Role::LambdaVar}, {"z", Role::LambdaVar}});
  return ring;
}

KeyEqResult solve_keyeq(const Rational& a, const Rational& b, const Rational& c, unsigned bound) {
  RingPtr ring = keyeq_ring();
  Polynomial x = Polynomial::variable(ring, 0), y = Polynomial::variable(ring, 1), z = Polynomial::variable(ring, 2);
  LinearSystem sys{ring, {{"f", {0, 1}, {bound, bound}, bound}}, {}};
  Equation eq{"keyeq", {}};
  eq.terms.push_back({0, {x + y, z}, x + b * y});
  eq.terms.push_back({0, {x, z}, -(x + a * y + z)});
  eq.terms.push_back({0, {x, y + z}, -(c * y - z)});
  sys.equations.push_back(std::move(eq));
  KeyEqResult out{a, b, c, bound, ring, {}};
  for (auto& s : solve(sys).basis) out.basis.push_back(std::move(s[0]));
  return out;
}

}  // namespace confkernel
