#pragma once

// Exact sparse multivariate polynomials over Q with role-tagged indeterminates.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace confkernel {

using Rational = mpq_class;

/// Parses "p" or "p/q" (optional leading sign) into a canonical rational.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

enum class Role { Partial, LambdaVar, Parameter };

struct Indeterminate {
  std::string name;
  Role role;

  bool operator==(const Indeterminate&) const = default;
};

class RingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ordered list of indeterminates. The order is canonical: the single Partial
/// first, then lambda variables in declaration order, then parameters in
/// declaration order.
class Ring {
 public:
  explicit Ring(std::vector<Indeterminate> vars);

  /// del, lam, mu, nu followed by the given parameters.
  static std::shared_ptr<const Ring> standard(const std::vector<std::string>& params = {});

  std::size_t size() const { return vars_.size(); }
  const Indeterminate& var(std::size_t i) const { return vars_.at(i); }
  const std::vector<Indeterminate>& vars() const { return vars_; }

  std::optional<std::size_t> find(std::string_view name) const;
  std::size_t index(std::string_view name) const;  // throws RingError
  std::size_t partial() const { return 0; }

  std::vector<std::string> parameters() const;
  std::vector<std::size_t> lambda_vars() const;

  /// Same ring plus the parameters not already present.
  std::shared_ptr<const Ring> with_parameters(const std::vector<std::string>& params) const;

  bool operator==(const Ring& other) const { return vars_ == other.vars_; }

 private:
  std::vector<Indeterminate> vars_;
};

using RingPtr = std::shared_ptr<const Ring>;

bool same_ring(const RingPtr& a, const RingPtr& b);

using Exponents = std::vector<std::uint32_t>;

/// Graded lexicographic order, highest term first.
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

class Polynomial {
 public:
  using TermMap = std::map<Exponents, Rational, GrlexGreater>;

  /// The zero polynomial without a ring; adopts the ring of the first
  /// operand it is combined with.
  Polynomial() = default;
  explicit Polynomial(RingPtr ring);
  Polynomial(RingPtr ring, const Rational& constant);

  static Polynomial variable(const RingPtr& ring, std::size_t index);
  static Polynomial variable(const RingPtr& ring, std::string_view name);
  static Polynomial monomial(const RingPtr& ring, Exponents exps, const Rational& coeff = 1);

  const RingPtr& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  /// Coefficient of the given monomial (zero if absent).
  Rational coefficient(const Exponents& exps) const;

  std::uint32_t degree(std::size_t var) const;
  std::uint32_t total_degree() const;
  bool uses(std::size_t var) const;
  bool uses_role(Role role) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const;

  bool operator==(const Polynomial& other) const;

  Polynomial pow(unsigned n) const;

  /// ASCII rendering in the parser's grammar; parse(to_string()) round-trips.
  std::string to_string() const;

  /// Re-expresses the polynomial in another ring by indeterminate name.
  Polynomial embed(const RingPtr& target) const;

 private:
  void check_ring(const Polynomial& other);
  void add_term(const Exponents& e, const Rational& c);

  RingPtr ring_;
  TermMap terms_;
};

Polynomial add(const Polynomial& p, const Polynomial& q);
Polynomial mul(const Polynomial& p, const Polynomial& q);

using Bindings = std::vector<std::pair<std::size_t, Polynomial>>;

/// Simultaneous substitution; unbound indeterminates pass through.
Polynomial substitute(const Polynomial& p, const Bindings& bindings);
Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& bindings);

/// Splits p = sum over m of (monomial m in vars) * coefficient(m), where the
/// coefficients do not involve vars. Keys are exponent vectors indexed like
/// vars.
std::map<Exponents, Polynomial> coefficients_in(const Polynomial& p,
                                                const std::vector<std::size_t>& vars);

/// Quotient and remainder of p by g as polynomials in var. g's leading
/// coefficient in var must be a nonzero rational constant.
std::pair<Polynomial, Polynomial> divide_in(const Polynomial& p, const Polynomial& g,
                                            std::size_t var);

}  // namespace confkernel
