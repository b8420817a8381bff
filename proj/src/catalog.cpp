#include "confkernel/catalog.hpp"

#include <set>
#include <sstream>

#include "confkernel/textio.hpp"

namespace confkernel {
namespace {

const char* kHV =
    "gen L even\n"
    "gen H even\n"
    "bracket L L = (del + 2*lam)*L\n"
    "bracket L H = (del + lam)*H\n";

std::string generic_poly(const std::string& prefix, const std::string& var, unsigned degree) {
  std::string s = prefix + "0";
  for (unsigned i = 1; i <= degree; ++i) {
    s += " + " + prefix + std::to_string(i) + "*" + var;
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s;
}

std::string generic_params(const std::string& prefix, unsigned degree) {
  std::string s;
  for (unsigned i = 0; i <= degree; ++i) s += "params " + prefix + std::to_string(i) + "\n";
  return s;
}

std::vector<ParamSchema> generic_schema(const std::string& prefix, unsigned degree) {
  std::vector<ParamSchema> out;
  for (unsigned i = 0; i <= degree; ++i)
    out.push_back({prefix + std::to_string(i), false, std::nullopt, true});
  return out;
}

std::vector<ParamSchema> none(unsigned) { return {}; }

std::vector<CatalogEntry> make_catalog() {
  std::vector<CatalogEntry> c;
  c.push_back({"Vir", "Virasoro conformal algebra", none, [](unsigned) -> std::string {
                 return "algebra Vir\ngen L even\nbracket L L = (del + 2*lam)*L\n";
               }});
  c.push_back({"HV", "Heisenberg-Virasoro conformal algebra", none,
               [](unsigned) { return std::string("algebra HV\n") + kHV; }});
  c.push_back({"NS", "Neveu-Schwarz conformal superalgebra", none, [](unsigned) -> std::string {
                 return "algebra NS\ngen L even\ngen G odd\n"
                        "bracket L L = (del + 2*lam)*L\n"
                        "bracket L G = (del + 3/2*lam)*G\n"
                        "bracket G G = 2*L\n";
               }});
  auto hvs_source = [](const std::string& name, const std::string& odd) {
    return "algebra " + name + "\nparams alpha nonzero\n" + kHV + "gen " + odd + " odd\n" +
           "bracket L " + odd + " = (del + lam)*" + odd + "\n" + "bracket " + odd + " " + odd +
           " = alpha*H\n";
  };
  c.push_back({"HVS", "HVS(alpha), alpha defaults to 2",
               [](unsigned) { return std::vector<ParamSchema>{{"alpha", true, Rational(2)}}; },
               [hvs_source](unsigned) { return hvs_source("HVS", "G"); }});
  c.push_back({"HVSab", "HVS(alpha) with alpha symbolic",
               [](unsigned) { return std::vector<ParamSchema>{{"alpha", true, std::nullopt}}; },
               [hvs_source](unsigned) { return hvs_source("HVSab", "G"); }});
  auto hvs2_source = [](const std::string& name, const std::string& odd) {
    return "algebra " + name + "\nparams beta\nparams gamma\nparams tau\n" + kHV + "gen " + odd +
           " odd\n" + "bracket L " + odd + " = (del + beta*lam + gamma)*" + odd + "\n" +
           "bracket H " + odd + " = tau*" + odd + "\n";
  };
  c.push_back({"HVS2", "HVS(beta,gamma,tau)",
               [](unsigned) {
                 return std::vector<ParamSchema>{{"beta"}, {"gamma"}, {"tau"}};
               },
               [hvs2_source](unsigned) { return hvs2_source("HVS2", "E"); }});

  // rank (1+1): x even, y odd
  c.push_back({"rank11-R1", "rank (1+1) R1: [y y] = p(del) x",
               [](unsigned d) { return generic_schema("p", d); },
               [](unsigned d) {
                 return "algebra rank11-R1\n" + generic_params("p", d) +
                        "gen x even\ngen y odd\nbracket y y = (" + generic_poly("p", "del", d) +
                        ")*x\n";
               }});
  c.push_back({"rank11-R2", "rank (1+1) R2: [x y] = q(lam) y",
               [](unsigned d) { return generic_schema("q", d); },
               [](unsigned d) {
                 return "algebra rank11-R2\n" + generic_params("q", d) +
                        "gen x even\ngen y odd\nbracket x y = (" + generic_poly("q", "lam", d) +
                        ")*y\n";
               }});
  c.push_back({"rank11-R3", "rank (1+1) R3: Virasoro plus abelian odd part", none,
               [](unsigned) -> std::string {
                 return "algebra rank11-R3\ngen x even\ngen y odd\n"
                        "bracket x x = (del + 2*lam)*x\n";
               }});
  c.push_back({"rank11-R4", "rank (1+1) R4: [x y] = (del + beta lam + gamma) y",
               [](unsigned) { return std::vector<ParamSchema>{{"beta"}, {"gamma"}}; },
               [](unsigned) -> std::string {
                 return "algebra rank11-R4\nparams beta\nparams gamma\ngen x even\ngen y odd\n"
                        "bracket x x = (del + 2*lam)*x\n"
                        "bracket x y = (del + beta*lam + gamma)*y\n";
               }});
  c.push_back({"rank11-R5", "rank (1+1) R5: [y y] = alpha x",
               [](unsigned) { return std::vector<ParamSchema>{{"alpha", true}}; },
               [](unsigned) -> std::string {
                 return "algebra rank11-R5\nparams alpha nonzero\ngen x even\ngen y odd\n"
                        "bracket x x = (del + 2*lam)*x\n"
                        "bracket x y = (del + 3/2*lam)*y\n"
                        "bracket y y = alpha*x\n";
               }});

  // HV extended by one odd generator Y
  c.push_back({"prop31-R1", "HV plus a central odd generator", none,
               [](unsigned) { return std::string("algebra prop31-R1\n") + kHV + "gen Y odd\n"; }});
  c.push_back({"prop31-R2", "HV plus Y with [Y Y] = alpha H",
               [](unsigned) { return std::vector<ParamSchema>{{"alpha", true}}; },
               [hvs_source](unsigned) { return hvs_source("prop31-R2", "Y"); }});
  c.push_back({"prop31-R3", "HV plus Y with [H Y] = tau Y",
               [](unsigned) {
                 return std::vector<ParamSchema>{{"beta"}, {"gamma"}, {"tau"}};
               },
               [hvs2_source](unsigned) { return hvs2_source("prop31-R3", "Y"); }});
  return c;
}

}  // namespace

const std::vector<CatalogEntry>& algebra_catalog() {
  static const std::vector<CatalogEntry> catalog = make_catalog();
  return catalog;
}

const CatalogEntry& algebra_entry(const std::string& key) {
  for (const auto& e : algebra_catalog())
    if (e.key == key) return e;
  throw SchemaError("unknown algebra key '" + key + "'");
}

Polynomial specialize(const Polynomial& p, const ParamValues& values, const RingPtr& target) {
  if (p.is_zero()) return Polynomial(target);
  Bindings b;
  for (const auto& [name, v] : values)
    if (auto idx = p.ring()->find(name)) b.emplace_back(*idx, Polynomial(p.ring(), v));
  return (b.empty() ? p : substitute(p, b)).embed(target);
}

LcsAlgebra instantiate(const LcsAlgebra& alg, const std::vector<ParamSchema>& schema,
                       const BuildOptions& options) {
  std::set<std::string> known;
  for (const auto& s : schema) known.insert(s.name);
  for (const auto& [name, v] : options.values)
    if (!known.count(name))
      throw SchemaError("algebra " + alg.name() + " has no parameter '" + name + "'");
  ParamValues resolved;
  std::vector<std::string> remaining;
  std::vector<ParameterSpec> specs;
  for (const auto& s : schema) {
    auto it = options.values.find(s.name);
    std::optional<Rational> value;
    if (it != options.values.end())
      value = it->second;
    else if (!options.symbolic && !s.generic && s.default_value)
      value = s.default_value;
    if (!value && !options.symbolic && !s.generic)
      throw SchemaError("parameter '" + s.name + "' of " + alg.name() +
                        " needs a value (or build symbolically)");
    if (value) {
      if (s.nonzero && *value == 0)
        throw SchemaError("parameter '" + s.name + "' must be nonzero");
      resolved[s.name] = *value;
    } else {
      remaining.push_back(s.name);
      specs.push_back({s.name, s.nonzero});
    }
  }
  RingPtr ring = Ring::standard(remaining);
  Table t = alg.table();
  for (auto& row : t)
    for (auto& vec : row)
      for (auto& p : vec) p = specialize(p, resolved, ring);
  return LcsAlgebra(alg.name(), ring, alg.generators(), alg.parities(), specs, std::move(t));
}

LcsAlgebra build_algebra(const std::string& key, const BuildOptions& options) {
  const auto& entry = algebra_entry(key);
  LcsAlgebra raw = parse_algebra(entry.source(options.generic_degree), "builtin:" + key);
  return instantiate(raw, entry.schema(options.generic_degree), options);
}

// ---------------------------------------------------------------- text format

LcsAlgebra parse_algebra(std::string_view text, const std::string& source) {
  auto lines = split_lines(text);
  std::string name;
  std::vector<ParameterSpec> params;
  std::vector<std::string> gens;
  std::vector<Parity> parities;
  auto fail = [&](const SourceLine& l, const std::string& msg) -> FormatError {
    return FormatError(source, l.number, msg);
  };
  for (const auto& l : lines) {
    const auto& w = l.words;
    if (w.empty()) throw fail(l, "missing keyword");
    if (w[0] == "algebra") {
      if (w.size() != 2 || !l.rhs.empty()) throw fail(l, "expected 'algebra <name>'");
      if (!name.empty()) throw fail(l, "duplicate 'algebra' header");
      name = w[1];
    } else if (w[0] == "params") {
      if (w.size() < 2 || w.size() > 3 || (w.size() == 3 && w[2] != "nonzero") || !l.rhs.empty())
        throw fail(l, "expected 'params <ident> [nonzero]'");
      params.push_back({w[1], w.size() == 3});
    } else if (w[0] == "gen") {
      if (w.size() != 3 || !l.rhs.empty()) throw fail(l, "expected 'gen <ident> even|odd'");
      if (w[2] != "even" && w[2] != "odd") throw fail(l, "parity must be even or odd");
      if (std::find(gens.begin(), gens.end(), w[1]) != gens.end())
        throw fail(l, "duplicate generator '" + w[1] + "'");
      gens.push_back(w[1]);
      parities.push_back(parse_parity(w[2]));
    } else if (w[0] != "bracket") {
      throw fail(l, "unknown keyword '" + w[0] + "'");
    }
  }
  if (name.empty()) throw FormatError(source, 1, "missing 'algebra <name>' header");
  if (gens.empty()) throw FormatError(source, 1, "no generators declared");
  std::vector<std::string> pnames;
  for (const auto& p : params) pnames.push_back(p.name);
  RingPtr ring;
  try {
    ring = Ring::standard(pnames);
  } catch (const RingError& e) {
    throw FormatError(source, 1, e.what());
  }
  const std::size_t n = gens.size();
  Table t = zero_table(ring, n, n, n);
  std::vector<std::vector<bool>> given(n, std::vector<bool>(n, false));
  std::vector<std::vector<std::size_t>> line_of(n, std::vector<std::size_t>(n, 0));
  auto gen_index = [&](const SourceLine& l, const std::string& g) {
    auto it = std::find(gens.begin(), gens.end(), g);
    if (it == gens.end()) throw fail(l, "unknown generator '" + g + "'");
    return static_cast<std::size_t>(it - gens.begin());
  };
  for (const auto& l : lines) {
    if (l.words[0] != "bracket") continue;
    if (l.words.size() != 3 || l.rhs.empty()) throw fail(l, "expected 'bracket <g1> <g2> = ...'");
    std::size_t i = gen_index(l, l.words[1]), j = gen_index(l, l.words[2]);
    if (given[i][j]) throw fail(l, "bracket given twice");
    PolyVec v;
    try {
      v = parse_linear(l.rhs, gens, ring);
    } catch (const std::exception& e) {
      throw fail(l, e.what());
    }
    const std::size_t mu = ring->index("mu"), nu = ring->index("nu");
    for (std::size_t k = 0; k < n; ++k) {
      if (v[k].uses(mu) || v[k].uses(nu)) throw fail(l, "bracket entries may only use del, lam");
      if (!v[k].is_zero() && parities[k] != parities[i] + parities[j])
        throw fail(l, "parity closure violated: [" + gens[i] + " " + gens[j] + "] has a " +
                          gens[k] + " component");
    }
    t[i][j] = std::move(v);
    given[i][j] = true;
    line_of[i][j] = l.number;
  }
  StdVars vars(ring);
  Bindings flip{{ring->index("lam"), -vars.del - vars.lam}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!given[i][j]) continue;
      int s = sign(parities[i], parities[j]);
      PolyVec derived(n);
      for (std::size_t k = 0; k < n; ++k) {
        derived[k] = substitute(t[i][j][k], flip);
        if (s > 0) derived[k] = -derived[k];
      }
      if (!given[j][i]) {
        t[j][i] = derived;
        given[j][i] = true;
        line_of[j][i] = line_of[i][j];
      } else if (i < j && t[j][i] != derived) {
        throw FormatError(source, std::max(line_of[i][j], line_of[j][i]),
                          "brackets [" + gens[i] + " " + gens[j] + "] and [" + gens[j] + " " +
                              gens[i] + "] are not related by skew-symmetry");
      }
    }
  return LcsAlgebra(name, ring, gens, parities, params, std::move(t));
}

std::string format_algebra(const LcsAlgebra& alg) {
  std::ostringstream os;
  os << "algebra " << alg.name() << "\n";
  for (const auto& p : alg.params()) os << "params " << p.name << (p.nonzero ? " nonzero" : "") << "\n";
  for (std::size_t i = 0; i < alg.size(); ++i)
    os << "gen " << alg.generator(i) << " " << to_string(alg.parity(i)) << "\n";
  for (std::size_t i = 0; i < alg.size(); ++i)
    for (std::size_t j = i; j < alg.size(); ++j) {
      const PolyVec& v = alg.table()[i][j];
      bool zero = std::all_of(v.begin(), v.end(), [](const Polynomial& p) { return p.is_zero(); });
      if (!zero)
        os << "bracket " << alg.generator(i) << " " << alg.generator(j) << " = "
           << format_vector(v, alg.generators()) << "\n";
    }
  return os.str();
}

LcsAlgebra load_algebra(const std::string& path) { return parse_algebra(read_file(path), path); }

void save_algebra(const LcsAlgebra& alg, const std::string& path) {
  write_file(path, format_algebra(alg));
}

}  // namespace confkernel
