#include "confkernel/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace confkernel {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return std::invalid_argument("not a rational: '" + s + "'"); };
  if (s.empty()) throw bad();
  std::size_t slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  auto digits = [](const std::string& t, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !t.empty() && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i >= t.size()) return false;
    return std::all_of(t.begin() + static_cast<long>(i), t.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
  };
  if (!digits(num, true) || !digits(den, false)) throw bad();
  if (num[0] == '+') num.erase(0, 1);
  mpz_class d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  Rational r(mpz_class(num), d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_str();
}

// ---------------------------------------------------------------- Ring

Ring::Ring(std::vector<Indeterminate> vars) {
  std::set<std::string> seen;
  std::size_t partials = 0;
  for (const auto& v : vars) {
    if (v.name.empty()) throw RingError("empty indeterminate name");
    if (!seen.insert(v.name).second) throw RingError("duplicate indeterminate '" + v.name + "'");
    if (v.role == Role::Partial) ++partials;
  }
  if (partials != 1) throw RingError("a ring needs exactly one Partial indeterminate");
  auto rank = [](Role r) { return r == Role::Partial ? 0 : r == Role::LambdaVar ? 1 : 2; };
  std::stable_sort(vars.begin(), vars.end(), [&](const Indeterminate& a, const Indeterminate& b) {
    return rank(a.role) < rank(b.role);
  });
  vars_ = std::move(vars);
}

std::shared_ptr<const Ring> Ring::standard(const std::vector<std::string>& params) {
  std::vector<Indeterminate> vars{{"del", Role::Partial},
                                  {"lam", Role::LambdaVar},
                                  {"mu", Role::LambdaVar},
                                  {"nu", Role::LambdaVar}};
  for (const auto& p : params) vars.push_back({p, Role::Parameter});
  return std::make_shared<const Ring>(std::move(vars));
}

std::optional<std::size_t> Ring::find(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].name == name) return i;
  return std::nullopt;
}

std::size_t Ring::index(std::string_view name) const {
  if (auto i = find(name)) return *i;
  throw RingError("unknown indeterminate '" + std::string(name) + "'");
}

std::vector<std::string> Ring::parameters() const {
  std::vector<std::string> out;
  for (const auto& v : vars_)
    if (v.role == Role::Parameter) out.push_back(v.name);
  return out;
}

std::vector<std::size_t> Ring::lambda_vars() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i].role == Role::LambdaVar) out.push_back(i);
  return out;
}

std::shared_ptr<const Ring> Ring::with_parameters(const std::vector<std::string>& params) const {
  std::vector<Indeterminate> vars = vars_;
  for (const auto& p : params)
    if (!find(p)) vars.push_back({p, Role::Parameter});
  return std::make_shared<const Ring>(std::move(vars));
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

bool GrlexGreater::operator()(const Exponents& a, const Exponents& b) const {
  std::uint64_t da = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
  std::uint64_t db = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
  if (da != db) return da > db;
  return a > b;
}

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

Polynomial::Polynomial(RingPtr ring, const Rational& constant) : ring_(std::move(ring)) {
  if (!ring_) throw RingError("constant polynomial needs a ring");
  if (constant != 0) terms_.emplace(Exponents(ring_->size(), 0), constant);
}

Polynomial Polynomial::variable(const RingPtr& ring, std::size_t index) {
  Exponents e(ring->size(), 0);
  e.at(index) = 1;
  return monomial(ring, std::move(e));
}

Polynomial Polynomial::variable(const RingPtr& ring, std::string_view name) {
  return variable(ring, ring->index(name));
}

Polynomial Polynomial::monomial(const RingPtr& ring, Exponents exps, const Rational& coeff) {
  if (exps.size() != ring->size()) throw RingError("exponent vector arity mismatch");
  Polynomial p(ring);
  if (coeff != 0) p.terms_.emplace(std::move(exps), coeff);
  return p;
}

bool Polynomial::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
}

Rational Polynomial::constant_term() const {
  if (terms_.empty()) return 0;
  const auto& [e, c] = *terms_.rbegin();
  return std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; }) ? c : Rational(0);
}

Rational Polynomial::coefficient(const Exponents& exps) const {
  auto it = terms_.find(exps);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::uint32_t Polynomial::degree(std::size_t var) const {
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

std::uint32_t Polynomial::total_degree() const {
  return terms_.empty() ? 0
                        : std::accumulate(terms_.begin()->first.begin(),
                                          terms_.begin()->first.end(), std::uint32_t{0});
}

bool Polynomial::uses(std::size_t var) const { return degree(var) > 0; }

bool Polynomial::uses_role(Role role) const {
  if (!ring_) return false;
  for (std::size_t i = 0; i < ring_->size(); ++i)
    if (ring_->var(i).role == role && uses(i)) return true;
  return false;
}

void Polynomial::check_ring(const Polynomial& other) {
  if (!other.ring_) return;
  if (!ring_) {
    ring_ = other.ring_;
    return;
  }
  if (!same_ring(ring_, other.ring_)) throw RingError("ring context mismatch");
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_ring(other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  check_ring(other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out(a.ring_ ? a.ring_ : b.ring_);
  if (a.ring_ && b.ring_ && !same_ring(a.ring_, b.ring_))
    throw RingError("ring context mismatch");
  if (a.terms_.empty() || b.terms_.empty()) return out;
  const std::size_t n = out.ring_->size();
  Exponents e(n);
  Rational prod;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
      prod = ca * cb;
      out.add_term(e, prod);
    }
  }
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, coeff] : terms_) coeff *= c;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

bool Polynomial::operator==(const Polynomial& other) const {
  if (terms_.empty() && other.terms_.empty()) return true;
  if (!same_ring(ring_, other.ring_)) return false;
  return terms_ == other.terms_;
}

Polynomial Polynomial::pow(unsigned n) const {
  if (!ring_) return *this;
  Polynomial result(ring_, 1);
  Polynomial base = *this;
  while (n) {
    if (n & 1u) result *= base;
    n >>= 1u;
    if (n) base *= base;
  }
  return result;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    bool negative = c < 0;
    Rational mag = abs(c);
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    bool constant = std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
    bool wrote = false;
    if (constant || mag != 1) {
      os << mag.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << '*';
      os << ring_->var(i).name;
      if (e[i] > 1) os << '^' << e[i];
      wrote = true;
    }
  }
  return os.str();
}

Polynomial Polynomial::embed(const RingPtr& target) const {
  if (same_ring(ring_, target)) {
    Polynomial out = *this;
    out.ring_ = target;
    return out;
  }
  Polynomial out(target);
  if (terms_.empty()) return out;
  std::vector<std::size_t> map(ring_->size());
  for (std::size_t i = 0; i < ring_->size(); ++i) {
    auto j = target->find(ring_->var(i).name);
    if (!j) {
      if (degree(i) == 0) {
        map[i] = SIZE_MAX;
        continue;
      }
      throw RingError("cannot embed: '" + ring_->var(i).name + "' missing in target ring");
    }
    map[i] = *j;
  }
  Exponents e(target->size());
  for (const auto& [src, c] : terms_) {
    std::fill(e.begin(), e.end(), 0);
    for (std::size_t i = 0; i < src.size(); ++i)
      if (src[i]) e[map[i]] = src[i];
    out.add_term(e, c);
  }
  return out;
}

Polynomial add(const Polynomial& p, const Polynomial& q) { return p + q; }
Polynomial mul(const Polynomial& p, const Polynomial& q) { return p * q; }

Polynomial substitute(const Polynomial& p, const Bindings& bindings) {
  if (p.is_zero()) return p;
  const RingPtr& ring = p.ring();
  const std::size_t n = ring->size();
  std::vector<const Polynomial*> bound(n, nullptr);
  for (const auto& [idx, value] : bindings) {
    if (idx >= n) throw RingError("binding index out of range");
    if (value.ring() && !same_ring(value.ring(), ring))
      throw RingError("substitution value lives in a different ring");
    bound[idx] = &value;
  }
  // powers[i][k] = value_i^k, grown on demand
  std::vector<std::vector<Polynomial>> powers(n);
  auto power = [&](std::size_t i, std::uint32_t k) -> const Polynomial& {
    auto& cache = powers[i];
    if (cache.empty()) cache.emplace_back(ring, 1);
    while (cache.size() <= k) {
      cache.push_back(cache.back() * *bound[i]);
    }
    return cache[k];
  };

  Polynomial out(ring);
  Exponents rest(n);
  for (const auto& [e, c] : p.terms()) {
    for (std::size_t i = 0; i < n; ++i) rest[i] = bound[i] ? 0 : e[i];
    Polynomial term = Polynomial::monomial(ring, rest, c);
    for (std::size_t i = 0; i < n && !term.is_zero(); ++i)
      if (bound[i] && e[i]) term *= power(i, e[i]);
    out += term;
  }
  return out;
}

Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& bindings) {
  if (p.is_zero()) return p;
  Bindings b;
  for (const auto& [name, value] : bindings) b.emplace_back(p.ring()->index(name), value);
  return substitute(p, b);
}

std::map<Exponents, Polynomial> coefficients_in(const Polynomial& p,
                                                const std::vector<std::size_t>& vars) {
  std::map<Exponents, Polynomial> out;
  if (p.is_zero()) return out;
  for (auto v : vars)
    if (v >= p.ring()->size()) throw RingError("coefficients_in: variable out of range");
  for (const auto& [e, c] : p.terms()) {
    Exponents key(vars.size());
    Exponents rest = e;
    for (std::size_t k = 0; k < vars.size(); ++k) {
      key[k] = e[vars[k]];
      rest[vars[k]] = 0;
    }
    auto [it, inserted] = out.try_emplace(key, Polynomial(p.ring()));
    it->second += Polynomial::monomial(p.ring(), rest, c);
  }
  for (auto it = out.begin(); it != out.end();) {
    if (it->second.is_zero())
      it = out.erase(it);
    else
      ++it;
  }
  return out;
}

std::pair<Polynomial, Polynomial> divide_in(const Polynomial& p, const Polynomial& g,
                                            std::size_t var) {
  if (g.is_zero()) throw std::domain_error("division by zero polynomial");
  const RingPtr& ring = p.ring() ? p.ring() : g.ring();
  auto gc = coefficients_in(g, {var});
  const auto& [gdeg_key, glead] = *gc.rbegin();
  std::uint32_t gdeg = gdeg_key[0];
  if (!glead.is_constant()) throw std::domain_error("divisor leading coefficient is not a constant");
  Rational lead = glead.constant_term();
  Polynomial quotient(ring);
  Polynomial rem = p.ring() ? p : Polynomial(ring);
  while (!rem.is_zero() && rem.degree(var) >= gdeg) {
    auto rc = coefficients_in(rem, {var});
    const auto& [rkey, rlead] = *rc.rbegin();
    Exponents shift(ring->size(), 0);
    shift[var] = rkey[0] - gdeg;
    Polynomial factor = rlead * Polynomial::monomial(ring, shift, 1 / lead);
    quotient += factor;
    rem -= factor * g;
  }
  return {quotient, rem};
}

}  // namespace confkernel
