#pragma once

// Free conformal modules C[del]v_1 + ... + C[del]v_m over an algebra.

#include <string>
#include <string_view>
#include <vector>

#include "confkernel/algebra.hpp"
#include "confkernel/catalog.hpp"
#include "confkernel/solver.hpp"

namespace confkernel {

struct ConformalModule {
  std::string name;
  std::string algebra_key;   // catalog key the algebra was built from
  ParamValues algebra_fixed; // values fixed on that algebra
  LcsAlgebra algebra;        // re-expressed in the module ring
  std::vector<ParameterSpec> params;  // module parameters still symbolic
  std::vector<std::string> basis;
  std::vector<Parity> parities;
  /// action[g][p][q]: coefficient of v_q in g_lam v_p
  std::vector<std::vector<PolyVec>> action;

  const RingPtr& ring() const { return algebra.ring(); }
  std::size_t rank() const { return basis.size(); }
};

/// x_L v for x over the algebra generators, v over the basis (sesquilinear).
PolyVec act(const ConformalModule& m, const PolyVec& x, const Polynomial& lam, const PolyVec& v);

/// [a_lam b]_{lam+mu} v = a_lam(b_mu v) - (-1)^{|a||b|} b_mu(a_lam v) on generators
/// and basis vectors, plus parity of the action entries.
CheckReport is_module(const ConformalModule& m);

/// Same module with the parities of all basis vectors swapped.
ConformalModule parity_flip(const ConformalModule& m);

struct ModuleFamily {
  std::string key;
  std::string description;
  std::string algebra;
  std::vector<ParamSchema> schema;
};

const std::vector<ModuleFamily>& module_catalog();
const ModuleFamily& module_family(const std::string& key);

/// Missing parameters are an error unless options.symbolic is set. Some
/// families need a rational beta (M5, M6 of the HVS2 list).
ConformalModule build_module(const std::string& key, const BuildOptions& options = {});

/// module <name> over <algebra-key>
/// set <algebra-param> = <rational>
/// params <ident> [nonzero]
/// basis <ident> even|odd
/// action <gen> <basis> = <expr> * <basis> (+ ...)* | 0
ConformalModule parse_module(std::string_view text, const std::string& source = "<text>");
std::string format_module(const ConformalModule& m);

/// Linear branch of rank (1+1) discovery over HVS / HVS2 at rational
/// parameters: even actions fixed by the weights, odd generator
/// v0 -> h0 v1, v1 -> 0, and h0 solved for.
struct DiscoverResult {
  Rational delta0, delta1, a, b;
  unsigned bound;
  std::vector<Polynomial> basis;  // h0 in (del, lam)
  std::vector<ConformalModule> modules;
  bool admissible = true;  // false when the even part alone already fails
  std::size_t dim() const { return basis.size(); }
};

DiscoverResult discover_rank11(const LcsAlgebra& alg, const Rational& delta0, const Rational& delta1,
                               const Rational& a, const Rational& b, unsigned bound);

/// C[del]-span of p(del)v inside a rank one module.
struct SubmoduleReport {
  bool closed = true;
  std::vector<Polynomial> induced;  // per algebra generator: g_lam (p v) = induced * (p v)
  std::vector<Violation> residuals;
};

SubmoduleReport submodule_check(const ConformalModule& m, const Polynomial& p);

}  // namespace confkernel
