#include "confkernel/modules.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>

#include "confkernel/parallel.hpp"
#include "confkernel/textio.hpp"

namespace confkernel {

PolyVec act(const ConformalModule& m, const PolyVec& x, const Polynomial& lam, const PolyVec& v) {
  return sesquilinear(m.action, x, lam, v, m.ring(), m.rank());
}

CheckReport is_module(const ConformalModule& m) {
  const LcsAlgebra& alg = m.algebra;
  const std::size_t n = alg.size(), r = m.rank();
  if (m.action.size() != n) throw std::invalid_argument("module action does not cover the algebra generators");
  for (const auto& g : m.action) {
    if (g.size() != r) throw std::invalid_argument("module action shape mismatch");
    for (const auto& row : g)
      if (row.size() != r) throw std::invalid_argument("module action shape mismatch");
  }
  StdVars v(m.ring());
  auto unit_alg = [&](std::size_t i) { return Element::generator(alg, i).coeffs; };
  auto unit_mod = [&](std::size_t p) { return Element::generator(m.ring(), r, p).coeffs; };
  CheckReport report{"module", n * n * r, {}};
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t p = 0; p < r; ++p)
      for (std::size_t q = 0; q < r; ++q)
        if (!m.action[g][p][q].is_zero() && m.parities[q] != alg.parity(g) + m.parities[p])
          report.violations.push_back({{"parity", alg.generator(g), m.basis[p]}, m.basis[q], m.action[g][p][q]});

  auto residuals = parallel_map<PolyVec>(n * n * r, [&](std::size_t t) {
    std::size_t i = t / (n * r), j = (t / r) % n, p = t % r;
    PolyVec lhs = act(m, bracket(alg, unit_alg(i), v.lam, unit_alg(j)), v.lam + v.mu, unit_mod(p));
    PolyVec r1 = act(m, unit_alg(i), v.lam, act(m, unit_alg(j), v.mu, unit_mod(p)));
    PolyVec r2 = act(m, unit_alg(j), v.mu, act(m, unit_alg(i), v.lam, unit_mod(p)));
    int s = sign(alg.parity(i), alg.parity(j));
    for (std::size_t q = 0; q < r; ++q) {
      lhs[q] -= r1[q];
      if (s > 0)
        lhs[q] += r2[q];
      else
        lhs[q] -= r2[q];
    }
    return lhs;
  });
  for (std::size_t t = 0; t < residuals.size(); ++t)
    for (std::size_t q = 0; q < r; ++q)
      if (!residuals[t][q].is_zero())
        report.violations.push_back(
            {{alg.generator(t / (n * r)), alg.generator((t / r) % n), m.basis[t % r]}, m.basis[q], residuals[t][q]});
  return report;
}

ConformalModule parity_flip(const ConformalModule& m) {
  ConformalModule out = m;
  for (auto& p : out.parities) p = p + Parity::Odd;
  return out;
}

// ---------------------------------------------------------------- catalog

namespace {

struct Ctx {
  RingPtr ring;
  std::map<std::string, Rational> values;
  std::string key;

  Polynomial get(const std::string& name) const {
    if (auto it = values.find(name); it != values.end()) return Polynomial(ring, it->second);
    return Polynomial::variable(ring, name);
  }
  Rational num(const std::string& name) const {
    auto it = values.find(name);
    if (it == values.end()) throw SchemaError(key + " needs a rational value for '" + name + "'");
    return it->second;
  }
};

struct Rank11 {
  Polynomial d0, d1, a0, a1, g0, g1, h0, h1;
};

// Actions of L, H and the odd generator on v0 (even), v1 (odd).
std::vector<std::vector<PolyVec>> rank11_action(const LcsAlgebra& alg, const Rank11& s) {
  const RingPtr& ring = alg.ring();
  StdVars v(ring);
  std::vector<std::vector<PolyVec>> a(alg.size(), std::vector<PolyVec>(2, PolyVec(2, Polynomial(ring))));
  std::size_t L = alg.index("L"), H = alg.index("H");
  std::size_t O = 0;
  for (std::size_t i = 0; i < alg.size(); ++i)
    if (alg.parity(i) == Parity::Odd) O = i;
  a[L][0][0] = v.del + s.d0 * v.lam + s.a0;
  a[L][1][1] = v.del + s.d1 * v.lam + s.a1;
  a[H][0][0] = s.g0;
  a[H][1][1] = s.g1;
  a[O][0][1] = s.h0;
  a[O][1][0] = s.h1;
  return a;
}

struct FamilyDef {
  ModuleFamily info;
  ParamValues fixed;                // algebra parameters fixed by the family
  std::vector<std::string> shared;  // module parameters that are algebra parameters
  std::function<std::vector<std::vector<PolyVec>>(const Ctx&, const LcsAlgebra&)> build;
  std::vector<std::string> basis = {"v0", "v1"};
  std::vector<Parity> parities = {Parity::Even, Parity::Odd};
};

ParamSchema P(const std::string& name, bool nonzero = false) { return {name, nonzero, std::nullopt, false}; }

std::vector<FamilyDef> make_families() {
  std::vector<FamilyDef> f;
  f.push_back({{"Vir-M", "M(Delta, a) over Vir: L v = (del + a + Delta lam) v", "Vir", {P("Delta"), P("a")}},
               {},
               {},
               [](const Ctx& c, const LcsAlgebra& alg) {
                 StdVars v(alg.ring());
                 return std::vector<std::vector<PolyVec>>{{{v.del + c.get("a") + c.get("Delta") * v.lam}}};
               },
               {"v"},
               {Parity::Even}});
  f.push_back({{"HV-M", "M(Delta, a, b) over HV: adds H v = b v", "HV", {P("Delta"), P("a"), P("b")}},
               {},
               {},
               [](const Ctx& c, const LcsAlgebra& alg) {
                 StdVars v(alg.ring());
                 return std::vector<std::vector<PolyVec>>{{{v.del + c.get("a") + c.get("Delta") * v.lam}},
                                                          {{c.get("b")}}};
               },
               {"v"},
               {Parity::Even}});

  // rank (1+1) over HVS (alpha = 2)
  const ParamValues hvs{{"alpha", 2}};
  f.push_back({{"T7.3-Mabc", "M(Delta, a, b, c) over HVS: G v0 = b v1, G v1 = c v0, H acts by bc", "HVS",
                {P("Delta"), P("a"), P("b", true), P("c", true)}},
               hvs,
               {},
               [](const Ctx& c, const LcsAlgebra& alg) {
                 Polynomial d = c.get("Delta"), a = c.get("a"), b = c.get("b"), cc = c.get("c");
                 return rank11_action(alg, {d, d, a, a, b * cc, b * cc, b, cc});
               }});
  struct Row73 {
    std::string key, desc;
    std::vector<ParamSchema> schema;
    std::function<Rank11(const Ctx&, const StdVars&)> row;
  };
  auto zero_h = [](const Ctx& c) { return Polynomial(c.ring); };
  std::vector<Row73> rows73 = {
      {"T7.3-M1", "HVS, Delta1 = Delta0, h = 1", {P("Delta0"), P("a")},
       [=](const Ctx& c, const StdVars& v) {
         Polynomial d0 = c.get("Delta0"), a = c.get("a");
         return Rank11{d0, d0, a, a, zero_h(c), zero_h(c), v.one, zero_h(c)};
       }},
      {"T7.3-M2", "HVS, Delta1 = Delta0 - 1, h = lam", {P("Delta0"), P("a")},
       [=](const Ctx& c, const StdVars& v) {
         Polynomial d0 = c.get("Delta0"), a = c.get("a");
         return Rank11{d0, d0 - v.one, a, a, zero_h(c), zero_h(c), v.lam, zero_h(c)};
       }},
      {"T7.3-M3", "HVS, Delta1 = Delta0 - 2, h = lam (del - Delta1 lam + a)", {P("Delta0"), P("a")},
       [=](const Ctx& c, const StdVars& v) {
         Polynomial d0 = c.get("Delta0"), a = c.get("a"), d1 = d0 - 2 * v.one;
         return Rank11{d0, d1, a, a, zero_h(c), zero_h(c), v.lam * (v.del - d1 * v.lam + a), zero_h(c)};
       }},
      {"T7.3-M4", "HVS, (Delta0, Delta1) = (1, 0), h = del + k lam + a", {P("k"), P("a")},
       [=](const Ctx& c, const StdVars& v) {
         Polynomial a = c.get("a");
         return Rank11{v.one, zero_h(c), a, a, zero_h(c), zero_h(c), v.del + c.get("k") * v.lam + a, zero_h(c)};
       }},
      {"T7.3-M5", "HVS, (Delta0, Delta1) = (1, -2), h = lam (del + lam + a)(del + 2 lam + a)", {P("a")},
       [=](const Ctx& c, const StdVars& v) {
         Polynomial a = c.get("a");
         return Rank11{v.one, -2 * v.one, a, a, zero_h(c), zero_h(c),
                       v.lam * (v.del + v.lam + a) * (v.del + 2 * v.lam + a), zero_h(c)};
       }},
      {"T7.3-M6", "HVS, (Delta0, Delta1) = (3, 0), h = lam (del + a)(del - lam + a)", {P("a")},
       [=](const Ctx& c, const StdVars& v) {
         Polynomial a = c.get("a");
         return Rank11{3 * v.one, zero_h(c), a, a, zero_h(c), zero_h(c), v.lam * (v.del + a) * (v.del - v.lam + a),
                       zero_h(c)};
       }},
  };
  for (auto& r : rows73) {
    auto row = r.row;
    f.push_back({{r.key, r.desc, "HVS", r.schema}, hvs, {}, [row](const Ctx& c, const LcsAlgebra& alg) {
                   return rank11_action(alg, row(c, StdVars(alg.ring())));
                 }});
  }

  // rank (1+1) over HVS2 (tau = 0); dbar = del + a, lbar = lam - gamma
  struct Row74 {
    std::string key, desc;
    std::optional<Rational> beta;  // fixed beta, otherwise a module parameter
    std::vector<ParamSchema> extra;
    bool with_b;
    std::function<Rank11(const Ctx&, const StdVars&, const Polynomial& beta)> row;
  };
  auto bar = [](const Ctx& c, const StdVars& v) {
    return std::pair{v.del + c.get("a"), v.lam - c.get("gamma")};
  };
  auto mk = [](const Ctx& c, const StdVars&, Polynomial d0, Polynomial d1, Polynomial h, bool with_b) {
    Polynomial a = c.get("a"), g = c.get("gamma");
    Polynomial b = with_b ? c.get("b") : Polynomial(c.ring);
    return Rank11{d0, d1, a - g, a, b, b, h, Polynomial(c.ring)};
  };
  std::vector<Row74> rows74 = {
      {"T7.4-M1", "HVS2, Delta1 = Delta0 + beta - 1, h = 1", std::nullopt, {P("Delta0")}, false,
       [=](const Ctx& c, const StdVars& v, const Polynomial& beta) {
         Polynomial d0 = c.get("Delta0");
         return mk(c, v, d0, d0 + beta - v.one, v.one, false);
       }},
      {"T7.4-M2", "HVS2 at beta = 1, Delta1 = Delta0 - 1, h = lbar", Rational(1), {P("Delta0")}, false,
       [=](const Ctx& c, const StdVars& v, const Polynomial&) {
         Polynomial d0 = c.get("Delta0");
         return mk(c, v, d0, d0 - v.one, bar(c, v).second, false);
       }},
      {"T7.4-M3", "HVS2 at beta = 1, Delta1 = Delta0 - 2, h = lbar (dbar - Delta1 lbar)", Rational(1), {P("Delta0")},
       false,
       [=](const Ctx& c, const StdVars& v, const Polynomial&) {
         auto [db, lb] = bar(c, v);
         Polynomial d0 = c.get("Delta0"), d1 = d0 - 2 * v.one;
         return mk(c, v, d0, d1, lb * (db - d1 * lb), false);
       }},
      {"T7.4-M4", "HVS2, Delta0 = k(beta-1) - beta + 2, Delta1 = k(beta-1), h = dbar + k lbar", std::nullopt, {P("k")},
       false,
       [=](const Ctx& c, const StdVars& v, const Polynomial& beta) {
         auto [db, lb] = bar(c, v);
         Polynomial k = c.get("k"), d1 = k * (beta - v.one);
         return mk(c, v, d1 - beta + 2 * v.one, d1, db + k * lb, false);
       }},
      {"T7.4-M5", "HVS2, beta != 1, 2, (Delta0, Delta1) = (1, beta - 2), h = (dbar + lbar)(dbar + (beta-2)/(beta-1) lbar)",
       std::nullopt, {}, false,
       [=](const Ctx& c, const StdVars& v, const Polynomial&) {
         Rational beta = c.num("beta");
         if (beta == 1 || beta == 2) throw SchemaError("T7.4-M5 needs beta different from 1 and 2");
         auto [db, lb] = bar(c, v);
         Rational q = (beta - 2) / (beta - 1);
         return mk(c, v, v.one, (beta - 2) * v.one, (db + lb) * (db + q * lb), false);
       }},
      {"T7.4-M6", "HVS2, beta != 1, (Delta0, Delta1) = (3 - beta, 0), h = dbar (dbar + lbar/(beta-1))", std::nullopt, {},
       false,
       [=](const Ctx& c, const StdVars& v, const Polynomial&) {
         Rational beta = c.num("beta");
         if (beta == 1) throw SchemaError("T7.4-M6 needs beta different from 1");
         auto [db, lb] = bar(c, v);
         Rational q = 1 / (beta - 1);
         return mk(c, v, (3 - beta) * v.one, Polynomial(c.ring), db * (db + q * lb), false);
       }},
      {"T7.4-M7", "HVS2 at beta = 5/3, (Delta0, Delta1) = (5/3, -2/3), h = (dbar - lbar)(dbar + lbar/2)(dbar + 2 lbar)",
       Rational(5, 3), {}, false,
       [=](const Ctx& c, const StdVars& v, const Polynomial&) {
         auto [db, lb] = bar(c, v);
         return mk(c, v, Rational(5, 3) * v.one, Rational(-2, 3) * v.one,
                   (db - lb) * (db + Rational(1, 2) * lb) * (db + 2 * lb), false);
       }},
      {"T7.4-M8", "HVS2 at beta = 3, (Delta0, Delta1) = (1, 0), h = dbar (dbar + lbar/2)(dbar + lbar)", Rational(3), {},
       false,
       [=](const Ctx& c, const StdVars& v, const Polynomial&) {
         auto [db, lb] = bar(c, v);
         return mk(c, v, v.one, Polynomial(c.ring), db * (db + Rational(1, 2) * lb) * (db + lb), false);
       }},
      {"T7.4-M9", "HVS2 at beta = 1, (Delta0, Delta1) = (1, -2), h = lbar (dbar + lbar)(dbar + 2 lbar)", Rational(1), {},
       false,
       [=](const Ctx& c, const StdVars& v, const Polynomial&) {
         auto [db, lb] = bar(c, v);
         return mk(c, v, v.one, -2 * v.one, lb * (db + lb) * (db + 2 * lb), false);
       }},
      {"T7.4-M10", "HVS2 at beta = 1, (Delta0, Delta1) = (3, 0), h = lbar dbar (dbar - lbar)", Rational(1), {}, false,
       [=](const Ctx& c, const StdVars& v, const Polynomial&) {
         auto [db, lb] = bar(c, v);
         return mk(c, v, 3 * v.one, Polynomial(c.ring), lb * db * (db - lb), false);
       }},
      {"T7.4-Mb1", "HVS2, H acts by b, Delta1 = Delta0 + beta - 1, h = 1", std::nullopt, {P("Delta0")}, true,
       [=](const Ctx& c, const StdVars& v, const Polynomial& beta) {
         Polynomial d0 = c.get("Delta0");
         return mk(c, v, d0, d0 + beta - v.one, v.one, true);
       }},
      {"T7.4-Mb2", "HVS2 at beta = 1, H acts by b, Delta1 = Delta0 - 1, h = lam - gamma", Rational(1), {P("Delta0")},
       true,
       [=](const Ctx& c, const StdVars& v, const Polynomial&) {
         Polynomial d0 = c.get("Delta0");
         return mk(c, v, d0, d0 - v.one, v.lam - c.get("gamma"), true);
       }},
  };
  for (auto& r : rows74) {
    std::vector<ParamSchema> schema;
    std::vector<std::string> shared{"gamma"};
    ParamValues fixed{{"tau", 0}};
    if (r.beta)
      fixed["beta"] = *r.beta;
    else {
      schema.push_back(P("beta"));
      shared.push_back("beta");
    }
    schema.push_back(P("gamma"));
    for (auto& e : r.extra) schema.push_back(e);
    schema.push_back(P("a"));
    if (r.with_b) schema.push_back(P("b", true));
    auto row = r.row;
    std::optional<Rational> fixed_beta = r.beta;
    f.push_back({{r.key, r.desc, "HVS2", schema}, fixed, shared,
                 [row, fixed_beta](const Ctx& c, const LcsAlgebra& alg) {
                   StdVars v(alg.ring());
                   Polynomial beta = fixed_beta ? Polynomial(alg.ring(), *fixed_beta) : c.get("beta");
                   return rank11_action(alg, row(c, v, beta));
                 }});
  }
  return f;
}

const std::vector<FamilyDef>& families() {
  static const std::vector<FamilyDef> f = make_families();
  return f;
}

const FamilyDef& family_def(const std::string& key) {
  for (const auto& f : families())
    if (f.info.key == key) return f;
  throw SchemaError("unknown module family '" + key + "'");
}

}  // namespace

const std::vector<ModuleFamily>& module_catalog() {
  static const std::vector<ModuleFamily> out = [] {
    std::vector<ModuleFamily> v;
    for (const auto& f : families()) v.push_back(f.info);
    return v;
  }();
  return out;
}

const ModuleFamily& module_family(const std::string& key) {
  for (const auto& f : module_catalog())
    if (f.key == key) return f;
  throw SchemaError("unknown module family '" + key + "'");
}

ConformalModule build_module(const std::string& key, const BuildOptions& options) {
  const FamilyDef& def = family_def(key);
  std::set<std::string> known;
  for (const auto& s : def.info.schema) known.insert(s.name);
  for (const auto& [name, v] : options.values)
    if (!known.count(name)) throw SchemaError("module family " + key + " has no parameter '" + name + "'");

  Ctx ctx{nullptr, {}, key};
  std::vector<std::string> symbolic;
  std::vector<ParameterSpec> specs;
  for (const auto& s : def.info.schema) {
    auto it = options.values.find(s.name);
    if (it != options.values.end()) {
      if (s.nonzero && it->second == 0) throw SchemaError("parameter '" + s.name + "' must be nonzero");
      ctx.values[s.name] = it->second;
    } else if (options.symbolic) {
      symbolic.push_back(s.name);
      specs.push_back({s.name, s.nonzero});
    } else {
      throw SchemaError("parameter '" + s.name + "' of " + key + " needs a value (or build symbolically)");
    }
  }

  BuildOptions alg_options;
  alg_options.values = def.fixed;
  for (const auto& name : def.shared)
    if (auto it = ctx.values.find(name); it != ctx.values.end()) alg_options.values[name] = it->second;
  alg_options.symbolic = true;
  LcsAlgebra alg = build_algebra(def.info.algebra, alg_options);

  std::vector<std::string> ring_params = alg.ring()->parameters();
  for (const auto& s : symbolic)
    if (std::find(ring_params.begin(), ring_params.end(), s) == ring_params.end()) ring_params.push_back(s);
  RingPtr ring = Ring::standard(ring_params);
  alg = alg.embed(ring);
  ctx.ring = ring;

  ConformalModule m{key, def.info.algebra, def.fixed, alg, specs, def.basis, def.parities, {}};
  for (const auto& name : def.shared)
    if (auto it = ctx.values.find(name); it != ctx.values.end()) m.algebra_fixed[name] = it->second;
  m.action = def.build(ctx, alg);
  return m;
}

// ---------------------------------------------------------------- text format

ConformalModule parse_module(std::string_view text, const std::string& source) {
  auto lines = split_lines(text);
  std::string name, key;
  ParamValues fixed;
  std::vector<ParameterSpec> params;
  std::vector<std::string> basis;
  std::vector<Parity> parities;
  auto fail = [&](const SourceLine& l, const std::string& msg) { return FormatError(source, l.number, msg); };
  for (const auto& l : lines) {
    const auto& w = l.words;
    if (w.empty()) throw fail(l, "missing keyword");
    if (w[0] == "module") {
      if (!name.empty()) throw fail(l, "duplicate 'module' header");
      if (w.size() != 4 || w[2] != "over" || !l.rhs.empty())
        throw fail(l, "expected 'module <name> over <algebra-key>'");
      name = w[1];
      key = w[3];
    } else if (w[0] == "set") {
      if (w.size() != 2 || l.rhs.empty()) throw fail(l, "expected 'set <param> = <rational>'");
      try {
        fixed[w[1]] = parse_rational(l.rhs);
      } catch (const std::exception& e) {
        throw fail(l, e.what());
      }
    } else if (w[0] == "params") {
      if (w.size() < 2 || w.size() > 3 || (w.size() == 3 && w[2] != "nonzero") || !l.rhs.empty())
        throw fail(l, "expected 'params <ident> [nonzero]'");
      params.push_back({w[1], w.size() == 3});
    } else if (w[0] == "basis") {
      if (w.size() != 3 || !l.rhs.empty()) throw fail(l, "expected 'basis <ident> even|odd'");
      if (w[2] != "even" && w[2] != "odd") throw fail(l, "parity must be even or odd");
      if (std::find(basis.begin(), basis.end(), w[1]) != basis.end())
        throw fail(l, "duplicate basis vector '" + w[1] + "'");
      basis.push_back(w[1]);
      parities.push_back(parse_parity(w[2]));
    } else if (w[0] != "action") {
      throw fail(l, "unknown keyword '" + w[0] + "'");
    }
  }
  if (name.empty()) throw FormatError(source, 1, "missing 'module <name> over <algebra-key>' header");
  if (basis.empty()) throw FormatError(source, 1, "no basis vectors declared");

  LcsAlgebra alg = [&] {
    try {
      BuildOptions o;
      o.values = fixed;
      o.symbolic = true;
      return build_algebra(key, o);
    } catch (const std::exception& e) {
      throw FormatError(source, 1, e.what());
    }
  }();
  std::vector<std::string> ring_params = alg.ring()->parameters();
  for (const auto& p : params)
    if (std::find(ring_params.begin(), ring_params.end(), p.name) == ring_params.end()) ring_params.push_back(p.name);
  RingPtr ring;
  try {
    ring = Ring::standard(ring_params);
  } catch (const RingError& e) {
    throw FormatError(source, 1, e.what());
  }
  alg = alg.embed(ring);
  for (const auto& b : basis)
    if (ring->find(b)) throw FormatError(source, 1, "basis name '" + b + "' collides with a ring indeterminate");

  const std::size_t r = basis.size();
  std::vector<std::vector<PolyVec>> action(alg.size(), std::vector<PolyVec>(r, PolyVec(r, Polynomial(ring))));
  std::vector<std::vector<bool>> seen(alg.size(), std::vector<bool>(r, false));
  const std::size_t mu = ring->index("mu"), nu = ring->index("nu");
  for (const auto& l : lines) {
    if (l.words[0] != "action") continue;
    const auto& w = l.words;
    if (w.size() != 3 || l.rhs.empty()) throw fail(l, "expected 'action <gen> <basis> = ...'");
    std::size_t g;
    try {
      g = alg.index(w[1]);
    } catch (const std::exception& e) {
      throw fail(l, e.what());
    }
    auto it = std::find(basis.begin(), basis.end(), w[2]);
    if (it == basis.end()) throw fail(l, "unknown basis vector '" + w[2] + "'");
    std::size_t p = it - basis.begin();
    if (seen[g][p]) throw fail(l, "action of " + w[1] + " on " + w[2] + " given twice");
    seen[g][p] = true;
    try {
      action[g][p] = parse_linear(l.rhs, basis, ring);
    } catch (const std::exception& e) {
      throw fail(l, e.what());
    }
    for (const auto& q : action[g][p])
      if (q.uses(mu) || q.uses(nu)) throw fail(l, "actions may only use del, lam and parameters");
  }
  return ConformalModule{name, key, fixed, alg, params, basis, parities, action};
}

std::string format_module(const ConformalModule& m) {
  std::string s = "module " + m.name + " over " + m.algebra_key + "\n";
  for (const auto& [k, v] : m.algebra_fixed) s += "set " + k + " = " + to_string(v) + "\n";
  for (const auto& p : m.params) s += "params " + p.name + (p.nonzero ? " nonzero" : "") + "\n";
  for (std::size_t p = 0; p < m.rank(); ++p) s += "basis " + m.basis[p] + " " + to_string(m.parities[p]) + "\n";
  for (std::size_t g = 0; g < m.algebra.size(); ++g)
    for (std::size_t p = 0; p < m.rank(); ++p) {
      bool nonzero = false;
      for (const auto& q : m.action[g][p]) nonzero = nonzero || !q.is_zero();
      if (nonzero)
        s += "action " + m.algebra.generator(g) + " " + m.basis[p] + " = " + format_vector(m.action[g][p], m.basis) +
             "\n";
    }
  return s;
}

// ---------------------------------------------------------------- discovery

namespace {

// An action entry is either known or exactly the unknown h0.
struct Entry {
  Polynomial known;
  bool unknown = false;
};

}  // namespace

DiscoverResult discover_rank11(const LcsAlgebra& alg, const Rational& delta0, const Rational& delta1,
                               const Rational& a, const Rational& b, unsigned bound) {
  require_numeric(alg);
  std::optional<std::size_t> L, H, O;
  for (std::size_t i = 0; i < alg.size(); ++i) {
    if (alg.generator(i) == "L") L = i;
    if (alg.generator(i) == "H") H = i;
    if (alg.parity(i) == Parity::Odd) O = i;
  }
  if (alg.size() != 3 || !L || !H || !O)
    throw SolverError("discovery needs an algebra with even L, H and one odd generator");
  const RingPtr& ring = alg.ring();
  StdVars v(ring);
  const std::size_t del = ring->partial(), lam = ring->index("lam");
  auto constant_of = [&](const Polynomial& p) {
    return substitute(p, Bindings{{del, Polynomial(ring)}, {lam, Polynomial(ring)}}).constant_term();
  };
  Rational gamma = constant_of(alg.structure(*L, *O, *O));
  Rational tau = constant_of(alg.structure(*H, *O, *O));

  Rank11 known{delta0 * v.one, delta1 * v.one, (a - gamma) * v.one, a * v.one, (b - tau) * v.one, b * v.one,
               Polynomial(ring), Polynomial(ring)};
  auto base = rank11_action(alg, known);
  const std::size_t n = 3, r = 2;
  auto entry = [&](std::size_t g, std::size_t p, std::size_t q) {
    if (g == *O && p == 0 && q == 1) return Entry{Polynomial(ring), true};
    return Entry{base[g][p][q], false};
  };

  // h0 and a constant t carrying the h0-free part of each equation.
  LinearSystem sys{ring, {{"h0", {del, lam}, {bound, bound}, bound}, {"t", {}, {}, {}}}, {}};
  Bindings b_lhs{{lam, v.lam + v.mu}};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t p = 0; p < r; ++p) {
        int s = sign(alg.parity(i), alg.parity(j));
        for (std::size_t q = 0; q < r; ++q) {
          Equation eq{alg.generator(i) + "," + alg.generator(j) + "," + std::to_string(p) + ":" + std::to_string(q), {}};
          Polynomial constant(ring);
          auto add = [&](const Polynomial& coeff, const Entry& e, const std::vector<Polynomial>& subst,
                         const Bindings& shift) {
            if (coeff.is_zero()) return;
            if (e.unknown)
              eq.terms.push_back({0, subst, coeff});
            else if (!e.known.is_zero())
              constant += coeff * substitute(e.known, shift);
          };
          // sum_k B[i][j][k](-lam-mu, lam) A[k][p][q](del, lam+mu)
          for (std::size_t k = 0; k < n; ++k) {
            const Polynomial& bk = alg.structure(i, j, k);
            if (bk.is_zero()) continue;
            Polynomial c = substitute(bk, Bindings{{del, -v.lam - v.mu}});
            add(c, entry(k, p, q), {v.del, v.lam + v.mu}, b_lhs);
          }
          // - sum_m A[j][p][m](del+lam, mu) A[i][m][q](del, lam)
          // + s sum_m A[i][p][m](del+mu, lam) A[j][m][q](del, mu)
          auto product = [&](std::size_t g1, std::size_t g2, const Polynomial& shift1, const Polynomial& l1,
                             const Polynomial& l2, const Polynomial& factor) {
            for (std::size_t m = 0; m < r; ++m) {
              Entry e1 = entry(g1, p, m), e2 = entry(g2, m, q);
              std::vector<Polynomial> s1{v.del + shift1, l1}, s2{v.del, l2};
              Bindings b1{{del, v.del + shift1}, {lam, l1}}, b2{{lam, l2}};
              if (e1.unknown && e2.unknown) throw std::logic_error("quadratic term in the linear branch");
              if (e1.unknown) {
                if (!e2.known.is_zero()) eq.terms.push_back({0, s1, factor * substitute(e2.known, b2)});
              } else if (e2.unknown) {
                if (!e1.known.is_zero()) eq.terms.push_back({0, s2, factor * substitute(e1.known, b1)});
              } else if (!e1.known.is_zero() && !e2.known.is_zero()) {
                constant += factor * substitute(e1.known, b1) * substitute(e2.known, b2);
              }
            }
          };
          product(j, i, v.lam, v.mu, v.lam, -v.one);
          product(i, j, v.mu, v.lam, v.mu, s > 0 ? v.one : -v.one);
          if (!constant.is_zero()) eq.terms.push_back({1, {}, constant});
          if (!eq.terms.empty()) sys.equations.push_back(std::move(eq));
        }
      }

  DiscoverResult out{delta0, delta1, a, b, bound, {}, {}, true};
  bool has_constant = false;
  for (const auto& eq : sys.equations)
    for (const auto& t : eq.terms) has_constant = has_constant || t.unknown == 1;
  if (!has_constant) sys.unknowns.pop_back();
  auto basis = solve(sys).basis;
  if (has_constant) {
    for (const auto& s : basis)
      if (!s[1].is_zero()) throw std::logic_error("affine solutions in the linear branch are not supported");
    // t = 0 is forced, so the h0-free part can never cancel
    out.admissible = false;
    return out;
  }

  for (const auto& s : basis) {
    Rank11 spec = known;
    spec.h0 = s[0];
    ConformalModule m{"discovered", alg.name(), {}, alg, {}, {"v0", "v1"}, {Parity::Even, Parity::Odd},
                      rank11_action(alg, spec)};
    if (!is_module(m).passed()) throw std::logic_error("discovered module failed verification");
    out.basis.push_back(s[0]);
    out.modules.push_back(std::move(m));
  }
  return out;
}

// ---------------------------------------------------------------- submodules

SubmoduleReport submodule_check(const ConformalModule& m, const Polynomial& p) {
  if (m.rank() != 1) throw std::invalid_argument("submodule check needs a rank one module");
  if (p.is_zero()) throw std::invalid_argument("the generating element must be nonzero");
  if (p.uses_role(Role::LambdaVar)) throw std::invalid_argument("the generating element must not involve lambda");
  const RingPtr& ring = m.ring();
  StdVars v(ring);
  const std::size_t del = ring->partial();
  Polynomial shifted = substitute(p, Bindings{{del, v.del + v.lam}});
  SubmoduleReport out;
  for (std::size_t g = 0; g < m.algebra.size(); ++g) {
    Polynomial image = shifted * m.action[g][0][0];
    auto [quot, rem] = divide_in(image, p, del);
    if (!rem.is_zero()) {
      out.closed = false;
      out.residuals.push_back({{m.algebra.generator(g)}, m.basis[0], rem});
    }
    out.induced.push_back(quot);
  }
  return out;
}

}  // namespace confkernel
