#include "confkernel/biderivations.hpp"

#include <optional>

#include "confkernel/parallel.hpp"
#include "confkernel/textio.hpp"

namespace confkernel {

ConformalBiMap ConformalBiMap::zero(const LcsAlgebra& alg, Parity parity) {
  return {parity, zero_table(alg.ring(), alg.size(), alg.size(), alg.size())};
}

namespace {

PolyVec unit(const LcsAlgebra& alg, std::size_t i) { return Element::generator(alg, i).coeffs; }

void require_shape(const LcsAlgebra& alg, const ConformalBiMap& phi) {
  const std::size_t n = alg.size();
  bool ok = phi.F.size() == n;
  for (const auto& row : phi.F) {
    ok = ok && row.size() == n;
    for (const auto& v : row) ok = ok && v.size() == n;
  }
  if (!ok) throw std::invalid_argument("bilinear map shape does not match the algebra");
}

void collect(CheckReport& report, std::vector<std::string> where, const PolyVec& residual,
             const LcsAlgebra& alg) {
  for (std::size_t k = 0; k < residual.size(); ++k)
    if (!residual[k].is_zero()) report.violations.push_back({where, alg.generator(k), residual[k]});
}

}  // namespace

CheckReport is_biderivation(const LcsAlgebra& alg, const ConformalBiMap& phi) {
  require_shape(alg, phi);
  const std::size_t n = alg.size();
  const RingPtr& ring = alg.ring();
  StdVars v(ring);
  CheckReport report{"biderivation", n * n + n * n * n, {}};

  Bindings flip{{ring->index("lam"), -v.del - v.lam}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      int s = sign(alg.parity(i), alg.parity(j));
      PolyVec r(n);
      for (std::size_t k = 0; k < n; ++k) {
        Polynomial t = substitute(phi.F[j][i][k], flip);
        r[k] = s > 0 ? phi.F[i][j][k] + t : phi.F[i][j][k] - t;
      }
      collect(report, {"skew", alg.generator(i), alg.generator(j)}, r, alg);
      for (std::size_t k = 0; k < n; ++k)
        if (!phi.F[i][j][k].is_zero() && alg.parity(k) != alg.parity(i) + alg.parity(j) + phi.parity)
          report.violations.push_back(
              {{"parity", alg.generator(i), alg.generator(j)}, alg.generator(k), phi.F[i][j][k]});
    }

  Bindings shift{{ring->partial(), v.del + v.lam}, {ring->index("lam"), v.mu}};
  auto residuals = parallel_map<PolyVec>(n * n * n, [&](std::size_t t) {
    std::size_t i = t / (n * n), j = (t / n) % n, k = t % n;
    PolyVec lhs(n, Polynomial(ring));
    for (std::size_t m = 0; m < n; ++m) {
      const Polynomial& b = alg.structure(j, k, m);
      if (b.is_zero()) continue;
      Polynomial c = substitute(b, shift);
      for (std::size_t l = 0; l < n; ++l) lhs[l] += c * phi.F[i][m][l];
    }
    PolyVec r1 = bracket(alg, phi.F[i][j], v.lam + v.mu, unit(alg, k));
    PolyVec r2 = bracket(alg, unit(alg, j), v.mu, phi.F[i][k]);
    int s = sign(alg.parity(i), alg.parity(j));
    for (std::size_t l = 0; l < n; ++l) {
      lhs[l] -= r1[l];
      if (s > 0)
        lhs[l] -= r2[l];
      else
        lhs[l] += r2[l];
    }
    return lhs;
  });
  for (std::size_t t = 0; t < residuals.size(); ++t)
    collect(report,
            {"leibniz", alg.generator(t / (n * n)), alg.generator((t / n) % n), alg.generator(t % n)},
            residuals[t], alg);
  return report;
}

ConformalBiMap inner_bider(const LcsAlgebra& alg, const Rational& eps) {
  ConformalBiMap out = ConformalBiMap::zero(alg, Parity::Even);
  for (std::size_t i = 0; i < alg.size(); ++i)
    for (std::size_t j = 0; j < alg.size(); ++j)
      for (std::size_t k = 0; k < alg.size(); ++k) out.F[i][j][k] = alg.structure(i, j, k) * eps;
  return out;
}

FourTupleReport check_four_tuple(const LcsAlgebra& alg, const ConformalBiMap& phi) {
  require_shape(alg, phi);
  const std::size_t n = alg.size();
  const RingPtr& ring = alg.ring();
  StdVars v(ring);
  FourTupleReport out;
  out.report = {"four_tuple", n * n * n * n, {}};
  if (!is_biderivation(alg, phi).passed()) {
    out.precondition = false;
    out.notes.push_back("precondition violated: the map is not a biderivation");
  }
  Bindings to_mu{{ring->index("lam"), v.mu}};
  auto residuals = parallel_map<PolyVec>(n * n * n * n, [&](std::size_t t) {
    std::size_t a = t / (n * n * n), b = (t / (n * n)) % n, c = (t / n) % n, d = t % n;
    PolyVec cd(n), fcd(n);
    for (std::size_t k = 0; k < n; ++k) {
      cd[k] = substitute(alg.structure(c, d, k), to_mu);
      fcd[k] = substitute(phi.F[c][d][k], to_mu);
    }
    PolyVec lhs = bracket(alg, phi.F[a][b], v.lam + v.nu, cd);
    PolyVec rhs = bracket(alg, alg.table()[a][b], v.lam + v.nu, fcd);
    for (std::size_t k = 0; k < n; ++k) lhs[k] -= rhs[k];
    return lhs;
  });
  for (std::size_t t = 0; t < residuals.size(); ++t)
    collect(out.report,
            {alg.generator(t / (n * n * n)), alg.generator((t / (n * n)) % n),
             alg.generator((t / n) % n), alg.generator(t % n)},
            residuals[t], alg);
  return out;
}

BiMapFile parse_bimap(std::string_view text, const LcsAlgebra& alg, const std::string& source) {
  const std::size_t n = alg.size();
  BiMapFile out{"", ConformalBiMap::zero(alg, Parity::Even)};
  std::optional<Parity> declared;
  std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
  bool header = false;
  const std::size_t mu = alg.ring()->index("mu"), nu = alg.ring()->index("nu");
  for (const auto& l : split_lines(text)) {
    const auto& w = l.words;
    if (w.empty()) throw FormatError(source, l.number, "missing keyword");
    if (w[0] == "bimap") {
      if (header) throw FormatError(source, l.number, "duplicate 'bimap' header");
      if (!l.rhs.empty() || !(w.size() == 2 || (w.size() == 4 && w[2] == "parity")))
        throw FormatError(source, l.number, "expected 'bimap <name> [parity even|odd]'");
      out.name = w[1];
      if (w.size() == 4) {
        try {
          declared = parse_parity(w[3]);
        } catch (const std::exception& e) {
          throw FormatError(source, l.number, e.what());
        }
      }
      header = true;
    } else if (w[0] == "value") {
      if (!header) throw FormatError(source, l.number, "'value' before 'bimap' header");
      if (w.size() != 3 || l.rhs.empty())
        throw FormatError(source, l.number, "expected 'value <gen> <gen> = ...'");
      std::size_t i, j;
      PolyVec val;
      try {
        i = alg.index(w[1]);
        j = alg.index(w[2]);
        val = parse_linear(l.rhs, alg.generators(), alg.ring());
      } catch (const std::exception& e) {
        throw FormatError(source, l.number, e.what());
      }
      if (seen[i][j]) throw FormatError(source, l.number, "value of (" + w[1] + ", " + w[2] + ") given twice");
      seen[i][j] = true;
      for (std::size_t k = 0; k < n; ++k) {
        if (val[k].uses(mu) || val[k].uses(nu))
          throw FormatError(source, l.number, "values may only use del, lam and parameters");
        if (val[k].is_zero()) continue;
        Parity p = alg.parity(k) + alg.parity(i) + alg.parity(j);
        if (!declared) declared = p;
        if (p != *declared)
          throw FormatError(source, l.number, "component " + alg.generator(k) + " has the wrong parity");
      }
      out.map.F[i][j] = std::move(val);
    } else {
      throw FormatError(source, l.number, "unknown keyword '" + w[0] + "'");
    }
  }
  if (!header) throw FormatError(source, 1, "missing 'bimap <name>' header");
  out.map.parity = declared.value_or(Parity::Even);
  return out;
}

std::string format_bimap(const std::string& name, const LcsAlgebra& alg, const ConformalBiMap& map) {
  std::string s = "bimap " + name + " parity " + to_string(map.parity) + "\n";
  for (std::size_t i = 0; i < alg.size(); ++i)
    for (std::size_t j = 0; j < alg.size(); ++j) {
      bool nonzero = false;
      for (const auto& p : map.F[i][j]) nonzero = nonzero || !p.is_zero();
      if (nonzero)
        s += "value " + alg.generator(i) + " " + alg.generator(j) + " = " +
             format_vector(map.F[i][j], alg.generators()) + "\n";
    }
  return s;
}

}  // namespace confkernel
