#include "confkernel/algebra.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "confkernel/parallel.hpp"

namespace confkernel {

std::string to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

Parity parse_parity(const std::string& text) {
  if (text == "even" || text == "0") return Parity::Even;
  if (text == "odd" || text == "1") return Parity::Odd;
  throw std::invalid_argument("bad parity '" + text + "' (expected even|odd)");
}

Table zero_table(const RingPtr& ring, std::size_t rows, std::size_t cols, std::size_t out) {
  return Table(rows, std::vector<PolyVec>(cols, PolyVec(out, Polynomial(ring))));
}

LcsAlgebra::LcsAlgebra(std::string name, RingPtr ring, std::vector<std::string> generators,
                       std::vector<Parity> parities, std::vector<ParameterSpec> params,
                       Table table)
    : name_(std::move(name)),
      ring_(std::move(ring)),
      generators_(std::move(generators)),
      parities_(std::move(parities)),
      params_(std::move(params)),
      table_(std::move(table)) {
  const std::size_t n = generators_.size();
  if (parities_.size() != n) throw std::invalid_argument("parity list size mismatch");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (generators_[i] == generators_[j])
        throw std::invalid_argument("duplicate generator '" + generators_[i] + "'");
  if (table_.size() != n) throw std::invalid_argument("bracket table has wrong row count");
  const std::size_t lam = ring_->index("lam");
  for (auto& row : table_) {
    if (row.size() != n) throw std::invalid_argument("bracket table has wrong column count");
    for (auto& vec : row) {
      if (vec.size() != n) throw std::invalid_argument("bracket vector has wrong length");
      for (auto& p : vec) {
        p = p.ring() ? p : Polynomial(ring_);
        if (!same_ring(p.ring(), ring_)) throw RingError("table entry in a foreign ring");
        for (auto v : ring_->lambda_vars())
          if (v != lam && p.uses(v))
            throw std::invalid_argument("table entry uses '" + ring_->var(v).name +
                                        "'; only del, lam and parameters are allowed");
      }
    }
  }
  for (const auto& ps : params_)
    if (!ring_->find(ps.name)) throw RingError("parameter '" + ps.name + "' not in ring");
}

std::size_t LcsAlgebra::index(const std::string& generator) const {
  auto it = std::find(generators_.begin(), generators_.end(), generator);
  if (it == generators_.end()) throw std::invalid_argument("unknown generator '" + generator + "'");
  return static_cast<std::size_t>(it - generators_.begin());
}

bool LcsAlgebra::is_symbolic() const {
  for (const auto& row : table_)
    for (const auto& vec : row)
      for (const auto& p : vec)
        if (p.uses_role(Role::Parameter)) return true;
  return false;
}

LcsAlgebra LcsAlgebra::embed(const RingPtr& target) const {
  Table t = table_;
  for (auto& row : t)
    for (auto& vec : row)
      for (auto& p : vec) p = p.embed(target);
  return LcsAlgebra(name_, target, generators_, parities_, params_, std::move(t));
}

bool LcsAlgebra::operator==(const LcsAlgebra& other) const {
  return generators_ == other.generators_ && parities_ == other.parities_ &&
         table_ == other.table_;
}

Element Element::generator(const LcsAlgebra& alg, std::size_t i) {
  return generator(alg.ring(), alg.size(), i);
}

Element Element::generator(const RingPtr& ring, std::size_t n, std::size_t i) {
  Element e{PolyVec(n, Polynomial(ring))};
  e.coeffs.at(i) = Polynomial(ring, 1);
  return e;
}

Parity Element::parity(const std::vector<Parity>& parities) const {
  bool seen = false;
  Parity p = Parity::Even;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].is_zero()) continue;
    if (seen && parities.at(i) != p) throw std::invalid_argument("element is not homogeneous");
    p = parities.at(i);
    seen = true;
  }
  return p;
}

bool LambdaElement::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Polynomial& p) { return p.is_zero(); });
}

std::string LambdaElement::to_string(const std::vector<std::string>& names) const {
  return format_vector(coeffs, names);
}

PolyVec sesquilinear(const Table& table, const PolyVec& x, const Polynomial& lam,
                     const PolyVec& y, const RingPtr& ring, std::size_t out_dim) {
  const std::size_t del = ring->partial();
  const std::size_t lv = ring->index("lam");
  PolyVec out(out_dim, Polynomial(ring));
  Polynomial delv = Polynomial::variable(ring, del);
  Polynomial minus_l = -lam;
  Polynomial shifted = delv + lam;
  std::vector<Polynomial> xs(x.size()), ys(y.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) xs[i] = substitute(x[i], Bindings{{del, minus_l}});
  for (std::size_t j = 0; j < y.size(); ++j)
    if (!y[j].is_zero()) ys[j] = substitute(y[j], Bindings{{del, shifted}});
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (xs[i].is_zero()) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      if (ys[j].is_zero()) continue;
      Polynomial scale = xs[i] * ys[j];
      for (std::size_t k = 0; k < out_dim; ++k) {
        const Polynomial& t = table[i][j][k];
        if (t.is_zero()) continue;
        out[k] += scale * substitute(t, Bindings{{lv, lam}});
      }
    }
  }
  return out;
}

static void require_size(const LcsAlgebra& alg, std::size_t got) {
  if (got != alg.size())
    throw std::invalid_argument("element has " + std::to_string(got) + " components, algebra " +
                                alg.name() + " has " + std::to_string(alg.size()) + " generators");
}

LambdaElement bracket(const LcsAlgebra& alg, const Element& x, const std::string& lv,
                      const Element& y) {
  require_size(alg, x.coeffs.size());
  require_size(alg, y.coeffs.size());
  std::size_t idx = alg.ring()->index(lv);
  if (alg.ring()->var(idx).role != Role::LambdaVar)
    throw std::invalid_argument("'" + lv + "' is not a lambda variable");
  for (const auto* e : {&x, &y})
    for (const auto& p : e->coeffs)
      if (p.uses_role(Role::LambdaVar))
        throw std::invalid_argument("element coefficients must not involve lambda variables");
  return {bracket(alg, x.coeffs, Polynomial::variable(alg.ring(), idx), y.coeffs)};
}

PolyVec bracket(const LcsAlgebra& alg, const PolyVec& x, const Polynomial& lam, const PolyVec& y) {
  require_size(alg, x.size());
  require_size(alg, y.size());
  return sesquilinear(alg.table(), x, lam, y, alg.ring(), alg.size());
}

std::string format_vector(const PolyVec& v, const std::vector<std::string>& names) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Polynomial& p = v[i];
    if (p.is_zero()) continue;
    std::string body;
    bool negative = false;
    if (p.terms().size() == 1) {
      const auto& [e, c] = *p.terms().begin();
      negative = c < 0;
      Polynomial mag = negative ? -p : p;
      body = (mag.is_constant() && mag.constant_term() == 1) ? names.at(i)
                                                             : mag.to_string() + "*" + names.at(i);
    } else {
      body = "(" + p.to_string() + ")*" + names.at(i);
    }
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    os << body;
    first = false;
  }
  return first ? "0" : os.str();
}

// ---------------------------------------------------------------- checkers

namespace {

PolyVec unit(const LcsAlgebra& alg, std::size_t i) { return Element::generator(alg, i).coeffs; }

void collect(CheckReport& report, const std::vector<std::string>& where, const PolyVec& residual,
             const std::vector<std::string>& names) {
  for (std::size_t k = 0; k < residual.size(); ++k)
    if (!residual[k].is_zero()) report.violations.push_back({where, names.at(k), residual[k]});
}

}  // namespace

CheckReport check_skew_symmetry(const LcsAlgebra& alg) {
  CheckReport report{"skew-symmetry", 0, {}};
  const RingPtr& ring = alg.ring();
  const std::size_t n = alg.size();
  StdVars v(ring);
  Bindings flip{{ring->index("lam"), -v.del - v.lam}};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      ++report.cases;
      int s = sign(alg.parity(i), alg.parity(j));
      PolyVec res(n);
      for (std::size_t k = 0; k < n; ++k) {
        res[k] = alg.structure(i, j, k);
        Polynomial t = substitute(alg.structure(j, i, k), flip);
        if (s > 0)
          res[k] += t;
        else
          res[k] -= t;
      }
      collect(report, {alg.generator(i), alg.generator(j)}, res, alg.generators());
    }
  }
  return report;
}

PolyVec jacobi_residual(const LcsAlgebra& alg, const PolyVec& x, Parity px, const PolyVec& y,
                        Parity py, const PolyVec& z) {
  StdVars v(alg.ring());
  PolyVec lhs = bracket(alg, x, v.lam, bracket(alg, y, v.mu, z));
  PolyVec r1 = bracket(alg, bracket(alg, x, v.lam, y), v.lam + v.mu, z);
  PolyVec r2 = bracket(alg, y, v.mu, bracket(alg, x, v.lam, z));
  int s = sign(px, py);
  for (std::size_t k = 0; k < lhs.size(); ++k) {
    lhs[k] -= r1[k];
    if (s > 0)
      lhs[k] -= r2[k];
    else
      lhs[k] += r2[k];
  }
  return lhs;
}

PolyVec skew_residual(const LcsAlgebra& alg, const PolyVec& x, Parity px, const PolyVec& y,
                      Parity py) {
  StdVars v(alg.ring());
  PolyVec a = bracket(alg, x, v.lam, y);
  PolyVec b = bracket(alg, y, v.lam, x);
  Bindings flip{{alg.ring()->index("lam"), -v.del - v.lam}};
  int s = sign(px, py);
  for (std::size_t k = 0; k < a.size(); ++k) {
    Polynomial t = substitute(b[k], flip);
    if (s > 0)
      a[k] += t;
    else
      a[k] -= t;
  }
  return a;
}

CheckReport check_jacobi(const LcsAlgebra& alg) {
  const std::size_t n = alg.size();
  auto residuals = parallel_map<PolyVec>(n * n * n, [&](std::size_t t) {
    std::size_t i = t / (n * n), j = (t / n) % n, k = t % n;
    return jacobi_residual(alg, unit(alg, i), alg.parity(i), unit(alg, j), alg.parity(j),
                           unit(alg, k));
  });
  CheckReport report{"jacobi", n * n * n, {}};
  for (std::size_t t = 0; t < residuals.size(); ++t) {
    std::size_t i = t / (n * n), j = (t / n) % n, k = t % n;
    collect(report, {alg.generator(i), alg.generator(j), alg.generator(k)}, residuals[t],
            alg.generators());
  }
  return report;
}

CheckReport check_parity_closure(const LcsAlgebra& alg) {
  CheckReport report{"parity-closure", 0, {}};
  const std::size_t n = alg.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      ++report.cases;
      for (std::size_t k = 0; k < n; ++k)
        if (!alg.structure(i, j, k).is_zero() &&
            alg.parity(k) != alg.parity(i) + alg.parity(j))
          report.violations.push_back(
              {{alg.generator(i), alg.generator(j)}, alg.generator(k), alg.structure(i, j, k)});
    }
  return report;
}

StdVars::StdVars(const RingPtr& ring)
    : del(Polynomial::variable(ring, ring->partial())),
      lam(Polynomial::variable(ring, "lam")),
      mu(Polynomial::variable(ring, "mu")),
      nu(Polynomial::variable(ring, "nu")),
      one(ring, 1) {}

}  // namespace confkernel
