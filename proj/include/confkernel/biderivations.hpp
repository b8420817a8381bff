#pragma once

// Conformal bilinear maps phi_lam(e_i, e_j) = sum_k F[i][j][k](del, lam) e_k.

#include <string>
#include <string_view>

#include "confkernel/algebra.hpp"

namespace confkernel {

struct ConformalBiMap {
  Parity parity = Parity::Even;
  Table F;

  static ConformalBiMap zero(const LcsAlgebra& alg, Parity parity);
  bool operator==(const ConformalBiMap&) const = default;
};

/// phi(a, b) = -(-1)^{|a||b|} phi_{-del-lam}(b, a) and
/// phi_lam(a, [b_mu c]) = [phi_lam(a,b)_{lam+mu} c] + (-1)^{|a||b|} [b_mu phi_lam(a,c)].
CheckReport is_biderivation(const LcsAlgebra& alg, const ConformalBiMap& phi);

/// eps times the bracket.
ConformalBiMap inner_bider(const LcsAlgebra& alg, const Rational& eps);

/// [phi_lam(a,b)_{lam+nu} [c_mu d]] = [[a_lam b]_{lam+nu} phi_mu(c,d)] on all 4-tuples.
/// When phi is not a biderivation the report carries a note saying so.
struct FourTupleReport {
  CheckReport report;
  bool precondition = true;
  std::vector<std::string> notes;
};
FourTupleReport check_four_tuple(const LcsAlgebra& alg, const ConformalBiMap& phi);

/// "bimap <name> [parity even|odd]" then "value <g1> <g2> = ..." lines.
/// Without a declared parity it is inferred from the nonzero values.
struct BiMapFile {
  std::string name;
  ConformalBiMap map;
};

BiMapFile parse_bimap(std::string_view text, const LcsAlgebra& alg,
                      const std::string& source = "<text>");
std::string format_bimap(const std::string& name, const LcsAlgebra& alg, const ConformalBiMap& map);

}  // namespace confkernel
