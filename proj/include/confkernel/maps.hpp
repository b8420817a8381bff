#pragma once

// Conformal linear maps: application, adjoint maps, derivations, and
// del-commuting module endomorphisms (homomorphisms / automorphisms).

#include <string>
#include <vector>

#include "confkernel/algebra.hpp"

namespace confkernel {

/// phi_lam e_i = sum_j D[i][j](del, lam) e_j, shifting parity by theta.
struct ConformalEnd {
  Parity parity = Parity::Even;
  std::vector<PolyVec> matrix;

  static ConformalEnd zero(const LcsAlgebra& alg, Parity parity);
  bool operator==(const ConformalEnd&) const = default;
};

/// sigma(e_i) = sum_j S[i][j](del) e_j.
struct PartialEndo {
  std::vector<PolyVec> matrix;

  static PartialEndo identity(const LcsAlgebra& alg);
  bool operator==(const PartialEndo&) const = default;
};

/// phi_lv(sum p_i(del) e_i) = sum p_i(del + lv) phi_lv(e_i).
LambdaElement apply(const LcsAlgebra& alg, const ConformalEnd& phi, const std::string& lv,
                    const Element& x);

/// (ad x)_lam e_j = [x_lam e_j].
ConformalEnd ad(const LcsAlgebra& alg, const Element& x);

/// Leibniz rule on all generator pairs, checked in (del, lam, mu).
CheckReport is_derivation(const LcsAlgebra& alg, const ConformalEnd& d);

/// Parity of the matrix entries against the declared parity.
CheckReport check_map_parity(const LcsAlgebra& alg, const ConformalEnd& d);

CheckReport is_homomorphism(const PartialEndo& sigma, const LcsAlgebra& source,
                            const LcsAlgebra& target);
/// Homomorphism plus: every parity block has a nonzero constant determinant.
CheckReport is_automorphism(const PartialEndo& sigma, const LcsAlgebra& alg);

/// Determinant of the sub-matrix on the generators of the given parity.
Polynomial block_determinant(const LcsAlgebra& alg, const PartialEndo& sigma, Parity block);

/// sigma1 o sigma2 (sigma2 applied first).
PartialEndo compose(const PartialEndo& sigma1, const PartialEndo& sigma2);
/// Inverse of an automorphism (adjugate over the block determinants).
PartialEndo inverse(const LcsAlgebra& alg, const PartialEndo& sigma);

/// phi_lam o psi_mu; the result carries both lam and mu.
ConformalEnd compose_end(const LcsAlgebra& alg, const ConformalEnd& phi, const ConformalEnd& psi);
/// sigma o phi_lam and phi_lam o sigma.
ConformalEnd compose_end(const PartialEndo& sigma, const ConformalEnd& phi);
ConformalEnd compose_end(const LcsAlgebra& alg, const ConformalEnd& phi, const PartialEndo& sigma);

/// Map files: "map <name> parity even|odd" then "image <gen> = ..." lines.
struct MapFile {
  std::string name;
  ConformalEnd map;
};

MapFile parse_map(std::string_view text, const LcsAlgebra& alg, const std::string& source = "<text>");
std::string format_map(const std::string& name, const LcsAlgebra& alg, const ConformalEnd& map);
/// Same format; lam is rejected and parity must be even.
PartialEndo to_partial_endo(const MapFile& file, const std::string& source = "<text>");
ConformalEnd to_conformal_end(const PartialEndo& sigma);

}  // namespace confkernel
