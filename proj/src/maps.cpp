#include "confkernel/maps.hpp"

#include <numeric>
#include <stdexcept>

#include "confkernel/parallel.hpp"
#include "confkernel/textio.hpp"

namespace confkernel {

ConformalEnd ConformalEnd::zero(const LcsAlgebra& alg, Parity parity) {
  return {parity, std::vector<PolyVec>(alg.size(), PolyVec(alg.size(), Polynomial(alg.ring())))};
}

PartialEndo PartialEndo::identity(const LcsAlgebra& alg) {
  PartialEndo s{std::vector<PolyVec>(alg.size(), PolyVec(alg.size(), Polynomial(alg.ring())))};
  for (std::size_t i = 0; i < alg.size(); ++i) s.matrix[i][i] = Polynomial(alg.ring(), 1);
  return s;
}

namespace {

void require_square(const std::vector<PolyVec>& m, std::size_t n, const char* what) {
  if (m.size() != n) throw std::invalid_argument(std::string(what) + ": shape mismatch");
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument(std::string(what) + ": shape mismatch");
}

PolyVec unit(const LcsAlgebra& alg, std::size_t i) { return Element::generator(alg, i).coeffs; }

void collect(CheckReport& report, const std::vector<std::string>& where, const PolyVec& residual,
             const std::vector<std::string>& names) {
  for (std::size_t k = 0; k < residual.size(); ++k)
    if (!residual[k].is_zero()) report.violations.push_back({where, names.at(k), residual[k]});
}

// sum_i x_i(del + L) * rows[i](del, lam -> L)
PolyVec apply_rows(const std::vector<PolyVec>& rows, const PolyVec& x, const Polynomial& l,
                   const RingPtr& ring) {
  const std::size_t n = rows.empty() ? 0 : rows[0].size();
  PolyVec out(n, Polynomial(ring));
  Polynomial del = Polynomial::variable(ring, ring->partial());
  Bindings shift{{ring->partial(), del + l}};
  Bindings rename{{ring->index("lam"), l}};
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    Polynomial c = substitute(x[i], shift);
    for (std::size_t j = 0; j < n; ++j)
      if (!rows[i][j].is_zero()) out[j] += c * substitute(rows[i][j], rename);
  }
  return out;
}

}  // namespace

LambdaElement apply(const LcsAlgebra& alg, const ConformalEnd& phi, const std::string& lv,
                    const Element& x) {
  require_square(phi.matrix, alg.size(), "apply");
  if (x.coeffs.size() != alg.size()) throw std::invalid_argument("apply: element size mismatch");
  std::size_t idx = alg.ring()->index(lv);
  if (alg.ring()->var(idx).role != Role::LambdaVar)
    throw std::invalid_argument("'" + lv + "' is not a lambda variable");
  return {apply_rows(phi.matrix, x.coeffs, Polynomial::variable(alg.ring(), idx), alg.ring())};
}

ConformalEnd ad(const LcsAlgebra& alg, const Element& x) {
  Parity p = x.parity(alg.parities());
  ConformalEnd out = ConformalEnd::zero(alg, p);
  StdVars v(alg.ring());
  for (std::size_t j = 0; j < alg.size(); ++j) out.matrix[j] = bracket(alg, x.coeffs, v.lam, unit(alg, j));
  return out;
}

CheckReport check_map_parity(const LcsAlgebra& alg, const ConformalEnd& d) {
  require_square(d.matrix, alg.size(), "map parity");
  CheckReport report{"map-parity", alg.size(), {}};
  for (std::size_t i = 0; i < alg.size(); ++i)
    for (std::size_t j = 0; j < alg.size(); ++j)
      if (!d.matrix[i][j].is_zero() && alg.parity(j) != alg.parity(i) + d.parity)
        report.violations.push_back({{alg.generator(i)}, alg.generator(j), d.matrix[i][j]});
  return report;
}

CheckReport is_derivation(const LcsAlgebra& alg, const ConformalEnd& d) {
  require_square(d.matrix, alg.size(), "is_derivation");
  const std::size_t n = alg.size();
  const RingPtr& ring = alg.ring();
  StdVars v(ring);
  auto residuals = parallel_map<PolyVec>(n * n, [&](std::size_t t) {
    std::size_t i = t / n, j = t % n;
    // d_lam [e_i mu e_j]
    PolyVec lhs = apply_rows(d.matrix, bracket(alg, unit(alg, i), v.mu, unit(alg, j)), v.lam, ring);
    PolyVec r1 = bracket(alg, d.matrix[i], v.lam + v.mu, unit(alg, j));
    PolyVec r2 = bracket(alg, unit(alg, i), v.mu, d.matrix[j]);
    int s = sign(alg.parity(i), d.parity);
    for (std::size_t k = 0; k < n; ++k) {
      lhs[k] -= r1[k];
      if (s > 0)
        lhs[k] -= r2[k];
      else
        lhs[k] += r2[k];
    }
    return lhs;
  });
  CheckReport report{"derivation", n * n, {}};
  for (std::size_t t = 0; t < residuals.size(); ++t)
    collect(report, {alg.generator(t / n), alg.generator(t % n)}, residuals[t], alg.generators());
  for (auto& viol : check_map_parity(alg, d).violations) {
    viol.component = "parity:" + viol.component;
    report.violations.push_back(std::move(viol));
  }
  return report;
}

CheckReport is_homomorphism(const PartialEndo& sigma, const LcsAlgebra& source,
                            const LcsAlgebra& target) {
  const std::size_t n = target.size();
  if (source.size() != n) throw std::invalid_argument("is_homomorphism: generator count mismatch");
  if (source.parities() != target.parities())
    throw std::invalid_argument("is_homomorphism: generator parities differ");
  require_square(sigma.matrix, n, "is_homomorphism");
  const RingPtr& ring = target.ring();
  LcsAlgebra src = same_ring(source.ring(), ring) ? source : source.embed(ring);
  StdVars v(ring);
  CheckReport report{"homomorphism", n * n, {}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Polynomial& s = sigma.matrix[i][j];
      if (s.uses_role(Role::LambdaVar))
        throw std::invalid_argument("homomorphism entries must not involve lambda variables");
      if (!s.is_zero() && target.parity(j) != target.parity(i))
        report.violations.push_back({{target.generator(i)}, "parity:" + target.generator(j), s});
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      PolyVec lhs(n, Polynomial(ring));
      for (std::size_t k = 0; k < n; ++k) {
        const Polynomial& b = src.structure(i, j, k);
        if (b.is_zero()) continue;
        for (std::size_t l = 0; l < n; ++l) lhs[l] += b * sigma.matrix[k][l];
      }
      PolyVec rhs = bracket(target, sigma.matrix[i], v.lam, sigma.matrix[j]);
      for (std::size_t l = 0; l < n; ++l) lhs[l] -= rhs[l];
      collect(report, {target.generator(i), target.generator(j)}, lhs, target.generators());
    }
  return report;
}

namespace {

Polynomial determinant(const std::vector<PolyVec>& m, const std::vector<std::size_t>& idx,
                       const RingPtr& ring) {
  const std::size_t k = idx.size();
  if (k == 0) return Polynomial(ring, 1);
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  Polynomial det(ring);
  do {
    int inversions = 0;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a + 1; b < k; ++b)
        if (perm[a] > perm[b]) ++inversions;
    Polynomial term(ring, 1);
    for (std::size_t a = 0; a < k && !term.is_zero(); ++a) term *= m[idx[a]][idx[perm[a]]];
    if (inversions % 2)
      det -= term;
    else
      det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

std::vector<std::size_t> block(const LcsAlgebra& alg, Parity p) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < alg.size(); ++i)
    if (alg.parity(i) == p) out.push_back(i);
  return out;
}

}  // namespace

Polynomial block_determinant(const LcsAlgebra& alg, const PartialEndo& sigma, Parity p) {
  require_square(sigma.matrix, alg.size(), "block_determinant");
  return determinant(sigma.matrix, block(alg, p), alg.ring());
}

CheckReport is_automorphism(const PartialEndo& sigma, const LcsAlgebra& alg) {
  CheckReport report = is_homomorphism(sigma, alg, alg);
  report.check = "automorphism";
  for (Parity p : {Parity::Even, Parity::Odd}) {
    if (block(alg, p).empty()) continue;
    Polynomial det = block_determinant(alg, sigma, p);
    if (det.is_zero() || !det.is_constant())
      report.violations.push_back({{to_string(p) + "-block"}, "determinant", det});
  }
  return report;
}

PartialEndo compose(const PartialEndo& sigma1, const PartialEndo& sigma2) {
  const std::size_t n = sigma1.matrix.size();
  if (sigma2.matrix.size() != n) throw std::invalid_argument("compose: shape mismatch");
  PartialEndo out{std::vector<PolyVec>(n, PolyVec(n))};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t m = 0; m < n; ++m) {
      const Polynomial& a = sigma2.matrix[i][m];
      if (a.is_zero()) continue;
      for (std::size_t l = 0; l < n; ++l) out.matrix[i][l] += a * sigma1.matrix[m][l];
    }
  for (auto& row : out.matrix)
    for (auto& p : row)
      if (!p.ring()) p = Polynomial(sigma1.matrix[0][0].ring() ? sigma1.matrix[0][0].ring()
                                                                : sigma2.matrix[0][0].ring());
  return out;
}

PartialEndo inverse(const LcsAlgebra& alg, const PartialEndo& sigma) {
  const std::size_t n = alg.size();
  require_square(sigma.matrix, n, "inverse");
  PartialEndo out{std::vector<PolyVec>(n, PolyVec(n, Polynomial(alg.ring())))};
  for (Parity p : {Parity::Even, Parity::Odd}) {
    auto idx = block(alg, p);
    if (idx.empty()) continue;
    Polynomial det = determinant(sigma.matrix, idx, alg.ring());
    if (det.is_zero() || !det.is_constant())
      throw std::domain_error("inverse: block determinant is not a nonzero constant");
    Rational inv = 1 / det.constant_term();
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b) {
        // adj[a][b] = (-1)^{a+b} minor(b, a)
        std::vector<std::size_t> rows, cols;
        for (std::size_t r = 0; r < idx.size(); ++r)
          if (r != b) rows.push_back(idx[r]);
        for (std::size_t c = 0; c < idx.size(); ++c)
          if (c != a) cols.push_back(idx[c]);
        std::vector<PolyVec> sub(rows.size(), PolyVec(cols.size()));
        std::vector<std::size_t> local(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
          local[r] = r;
          for (std::size_t c = 0; c < cols.size(); ++c) sub[r][c] = sigma.matrix[rows[r]][cols[c]];
        }
        Polynomial minor = determinant(sub, local, alg.ring());
        if ((a + b) % 2) minor = -minor;
        out.matrix[idx[a]][idx[b]] = minor * inv;
      }
  }
  return out;
}

ConformalEnd compose_end(const LcsAlgebra& alg, const ConformalEnd& phi, const ConformalEnd& psi) {
  const std::size_t n = alg.size();
  require_square(phi.matrix, n, "compose_end");
  require_square(psi.matrix, n, "compose_end");
  const RingPtr& ring = alg.ring();
  StdVars v(ring);
  Bindings to_mu{{ring->index("lam"), v.mu}};
  ConformalEnd out = ConformalEnd::zero(alg, phi.parity + psi.parity);
  for (std::size_t i = 0; i < n; ++i) {
    PolyVec row(n);
    for (std::size_t m = 0; m < n; ++m) row[m] = substitute(psi.matrix[i][m], to_mu);
    out.matrix[i] = apply_rows(phi.matrix, row, v.lam, ring);
  }
  return out;
}

ConformalEnd compose_end(const PartialEndo& sigma, const ConformalEnd& phi) {
  const std::size_t n = phi.matrix.size();
  ConformalEnd out{phi.parity, std::vector<PolyVec>(n, PolyVec(n))};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t m = 0; m < n; ++m) {
      if (phi.matrix[i][m].is_zero()) continue;
      for (std::size_t l = 0; l < n; ++l) out.matrix[i][l] += phi.matrix[i][m] * sigma.matrix[m][l];
    }
  return out;
}

ConformalEnd compose_end(const LcsAlgebra& alg, const ConformalEnd& phi, const PartialEndo& sigma) {
  const std::size_t n = alg.size();
  ConformalEnd out = ConformalEnd::zero(alg, phi.parity);
  StdVars v(alg.ring());
  for (std::size_t i = 0; i < n; ++i) out.matrix[i] = apply_rows(phi.matrix, sigma.matrix[i], v.lam, alg.ring());
  return out;
}

// ---------------------------------------------------------------- files

MapFile parse_map(std::string_view text, const LcsAlgebra& alg, const std::string& source) {
  auto lines = split_lines(text);
  MapFile out{"", ConformalEnd::zero(alg, Parity::Even)};
  std::vector<bool> seen(alg.size(), false);
  bool header = false;
  for (const auto& l : lines) {
    const auto& w = l.words;
    if (w.empty()) throw FormatError(source, l.number, "missing keyword");
    if (w[0] == "map") {
      if (header) throw FormatError(source, l.number, "duplicate 'map' header");
      if (w.size() != 4 || w[2] != "parity" || !l.rhs.empty())
        throw FormatError(source, l.number, "expected 'map <name> parity even|odd'");
      out.name = w[1];
      try {
        out.map.parity = parse_parity(w[3]);
      } catch (const std::exception& e) {
        throw FormatError(source, l.number, e.what());
      }
      header = true;
    } else if (w[0] == "image") {
      if (!header) throw FormatError(source, l.number, "'image' before 'map' header");
      if (w.size() != 2 || l.rhs.empty())
        throw FormatError(source, l.number, "expected 'image <gen> = ...'");
      std::size_t i;
      try {
        i = alg.index(w[1]);
      } catch (const std::exception& e) {
        throw FormatError(source, l.number, e.what());
      }
      if (seen[i]) throw FormatError(source, l.number, "image of " + w[1] + " given twice");
      seen[i] = true;
      try {
        out.map.matrix[i] = parse_linear(l.rhs, alg.generators(), alg.ring());
      } catch (const std::exception& e) {
        throw FormatError(source, l.number, e.what());
      }
      const std::size_t mu = alg.ring()->index("mu"), nu = alg.ring()->index("nu");
      for (const auto& p : out.map.matrix[i])
        if (p.uses(mu) || p.uses(nu))
          throw FormatError(source, l.number, "map entries may only use del, lam");
    } else {
      throw FormatError(source, l.number, "unknown keyword '" + w[0] + "'");
    }
  }
  if (!header) throw FormatError(source, 1, "missing 'map <name> parity ...' header");
  auto parity = check_map_parity(alg, out.map);
  if (!parity.passed())
    throw FormatError(source, 1, "image of " + parity.violations[0].where[0] + " has a " +
                                     parity.violations[0].component +
                                     " component of the wrong parity");
  return out;
}

std::string format_map(const std::string& name, const LcsAlgebra& alg, const ConformalEnd& map) {
  std::string s = "map " + name + " parity " + to_string(map.parity) + "\n";
  for (std::size_t i = 0; i < alg.size(); ++i)
    s += "image " + alg.generator(i) + " = " + format_vector(map.matrix[i], alg.generators()) + "\n";
  return s;
}

PartialEndo to_partial_endo(const MapFile& file, const std::string& source) {
  if (file.map.parity != Parity::Even)
    throw FormatError(source, 1, "a homomorphism must have parity even");
  for (const auto& row : file.map.matrix)
    for (const auto& p : row)
      if (p.uses_role(Role::LambdaVar))
        throw FormatError(source, 1, "homomorphism images must not use lam");
  return {file.map.matrix};
}

ConformalEnd to_conformal_end(const PartialEndo& sigma) { return {Parity::Even, sigma.matrix}; }

}  // namespace confkernel
