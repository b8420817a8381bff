// Acceptance run: one line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <array>
#include <functional>
#include <iostream>
#include <random>
#include <optional>
#include <sstream>
#include <tuple>

#include "confkernel/biderivations.hpp"
#include "confkernel/catalog.hpp"
#include "confkernel/maps.hpp"
#include "confkernel/modules.hpp"
#include "confkernel/parser.hpp"
#include "confkernel/report.hpp"
#include "confkernel/solver.hpp"

using namespace confkernel;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ostringstream* detail = nullptr;

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

LcsAlgebra algebra(const std::string& key, ParamValues v = {}, bool symbolic = false) {
  BuildOptions o;
  o.values = std::move(v);
  o.symbolic = symbolic;
  return build_algebra(key, o);
}

LcsAlgebra hvs2(const Rational& b, const Rational& g, const Rational& t) {
  return algebra("HVS2", {{"beta", b}, {"gamma", g}, {"tau", t}});
}

Polynomial P(const std::string& s, const RingPtr& r) { return parse(s, r); }

std::string q(const Rational& r) { return "(" + to_string(r) + ")"; }

Rational rnd(std::mt19937_64& rng, int lo = -9, int hi = 9, int maxden = 5) {
  std::uniform_int_distribution<int> n(lo, hi), d(1, maxden);
  Rational r(n(rng), d(rng));
  r.canonicalize();
  return r;
}

Rational rnd_nonzero(std::mt19937_64& rng) {
  Rational r;
  do r = rnd(rng);
  while (r == 0);
  return r;
}

bool proportional(const Polynomial& p, const Polynomial& f) {
  if (p.is_zero() || f.is_zero()) return false;
  Rational k = p.terms().begin()->second / f.terms().begin()->second;
  return p == f * k;
}

bool in_span(const std::vector<Polynomial>& basis, const Polynomial& f) {
  RingPtr K = keyeq_ring();
  LinearSystem sys{K, {{"f", {0, 1, 2}, {6, 6, 6}, 6}}, {}};
  ColumnLayout layout(sys);
  RowEchelon e;
  for (const auto& b : basis) e.insert(layout.vector({b}));
  return e.reduce(layout.vector({f}), true).empty();
}

// ---------------------------------------------------------------- 1

void axioms() {
  std::vector<LcsAlgebra> algs{algebra("Vir"), algebra("HV"), algebra("NS"), algebra("HVSab", {}, true),
                               algebra("HVS2", {}, true)};
  for (const char* k : {"rank11-R1", "rank11-R2", "rank11-R3", "rank11-R4", "rank11-R5", "prop31-R1", "prop31-R2",
                        "prop31-R3"})
    algs.push_back(algebra(k, {}, true));
  std::size_t cases = 0;
  for (const auto& a : algs) {
    for (const auto& r : {check_skew_symmetry(a), check_jacobi(a), check_parity_closure(a)}) {
      expect(r.passed(), a.name() + ": " + r.check + " has " + std::to_string(r.violations.size()) + " violations");
      cases += r.cases;
    }
  }
  *detail << algs.size() << " algebras, " << cases << " cases";
}

// ---------------------------------------------------------------- 2

void hvs_derivations() {
  auto alg = algebra("HVS", {{"alpha", 2}});
  auto even = solve_derivations(alg, Parity::Even, 3, 3);
  auto odd = solve_derivations(alg, Parity::Odd, 3, 3);
  expect(even.outer_dim == 1, "even outer_dim " + std::to_string(even.outer_dim));
  auto R = alg.ring();
  PolyVec zero(3, Polynomial(R));
  ConformalEnd rep{Parity::Even, {{P("0", R), P("1", R), P("0", R)}, zero, zero}};
  expect(even.outer[0] == rep, "even representative is not L -> H");
  expect(odd.outer_dim == 0, "odd outer_dim " + std::to_string(odd.outer_dim));
  expect(even.stable.value_or(false) && odd.stable.value_or(false), "not stable at bound_lam 4");
  *detail << "even dim " << even.dim << " (inner " << even.inner_dim << "), odd dim " << odd.dim;
}

// ---------------------------------------------------------------- 3

void hvs2_derivations() {
  struct Pt {
    Rational b, g, t;
  };
  std::vector<Pt> grid{{1, 0, 0}, {1, 5, 0}, {2, 0, 0}, {3, 1, 0}, {1, 0, 1}, {2, 0, 1}, {Rational(5, 2), -1, 0}};
  for (const auto& p : grid) {
    auto alg = hvs2(p.b, p.g, p.t);
    std::size_t want_even = p.t == 0 ? 1 : 0, want_odd = (p.b == 1 && p.t == 0) ? 1 : 0;
    auto e = solve_derivations(alg, Parity::Even, 3, 3);
    auto o = solve_derivations(alg, Parity::Odd, 3, 3);
    std::string at = "(" + to_string(p.b) + "," + to_string(p.g) + "," + to_string(p.t) + ")";
    expect(e.outer_dim == want_even, at + " even outer_dim " + std::to_string(e.outer_dim));
    expect(o.outer_dim == want_odd, at + " odd outer_dim " + std::to_string(o.outer_dim));
    expect(e.stable.value_or(false) && o.stable.value_or(false), at + " not stable");
  }
  *detail << grid.size() << " points";
}

// ---------------------------------------------------------------- 4

void rank11_derivations() {
  auto r4a = algebra("rank11-R4", {{"beta", 1}, {"gamma", 2}});
  auto r4b = algebra("rank11-R4", {{"beta", 2}, {"gamma", 0}});
  auto r5 = algebra("rank11-R5", {{"alpha", 2}});
  auto n = [](const LcsAlgebra& a, Parity p) { return solve_derivations(a, p, 3, 3).outer_dim; };
  expect(n(r4a, Parity::Odd) == 1, "R4(1,2) odd outer_dim " + std::to_string(n(r4a, Parity::Odd)));
  expect(n(r4b, Parity::Odd) == 0, "R4(2,0) odd outer_dim " + std::to_string(n(r4b, Parity::Odd)));
  expect(n(r5, Parity::Even) == 0, "R5 even outer_dim nonzero");
  expect(n(r5, Parity::Odd) == 0, "R5 odd outer_dim nonzero");
  *detail << "R4(1,2) odd 1, R4(2,0) odd 0, R5 0/0";
}

// ---------------------------------------------------------------- 5

void biderivations() {
  auto dim = [](const LcsAlgebra& a) { return solve_biderivations(a, 3, 3).dim; };
  expect(dim(algebra("HVS")) == 1, "HVS dim " + std::to_string(dim(algebra("HVS"))));
  auto two = hvs2(2, 0, 0);
  auto r = solve_biderivations(two, 3, 3);
  expect(r.dim == 2, "HVS2(2,0,0) dim " + std::to_string(r.dim));
  expect(r.outer.size() == 1, "HVS2(2,0,0) outer count");
  auto extra = ConformalBiMap::zero(two, Parity::Odd);
  extra.F[0][0][2] = P("del + 2*lam", two.ring());
  expect(r.outer[0] == extra, "extra map is not (L,L) -> (del + 2*lam)E");
  for (auto [b, g, t] : std::vector<std::tuple<int, int, int>>{{2, 1, 0}, {2, 0, 1}, {1, 0, 0}})
    expect(dim(hvs2(b, g, t)) == 1, "HVS2 dim at (" + std::to_string(b) + "," + std::to_string(g) + "," +
                                        std::to_string(t) + ")");
  expect(dim(algebra("rank11-R4", {{"beta", 2}, {"gamma", 0}})) == 2, "R4(2,0) dim");
  expect(dim(algebra("rank11-R5", {{"alpha", 2}})) == 1, "R5 dim");
  *detail << "7 algebras";
}

// ---------------------------------------------------------------- 6

struct KeyRow {
  std::string name;
  std::function<std::vector<std::array<Rational, 3>>()> points;  // (a, b, c)
  std::function<std::vector<std::string>(const std::array<Rational, 3>&)> members;
  std::size_t dim;
};

// Dimension of the solution space of the key equation, by row conditions.
std::size_t keyeq_expected(const Rational& a, const Rational& b, const Rational& c) {
  if (c != 0) {
    Rational s = a - b + c;
    if (s == 0 || s == 1) return 1;
    if (s == 2) return ((b == c - 1 && c != 1) || b == 0) ? 1 : 0;
    if (s == 3) return ((b == Rational(-2, 3) && c == Rational(2, 3)) || (b == 0 && c == 2)) ? 1 : 0;
    return 0;
  }
  Rational t = a - b;
  if (t == 0 || t == 2) return 1;
  if (t == 1) return b == 0 ? 2 : 1;
  if (t == 3) return (b == -2 || b == 0) ? 1 : 0;
  return 0;
}

void key_equation() {
  std::mt19937_64 rng(72);
  auto three = [&](auto make) {
    std::vector<std::array<Rational, 3>> v;
    while (v.size() < 3) {
      auto p = make();
      if (std::find(v.begin(), v.end(), p) == v.end()) v.push_back(p);
    }
    return v;
  };
  auto nz = [&] { return rnd_nonzero(rng); };
  std::vector<KeyRow> rows{
      {"c!=0, a-b+c=0", [&] { return three([&] { Rational b = rnd(rng), c = nz(); return std::array<Rational, 3>{b - c, b, c}; }); },
       [](const auto&) { return std::vector<std::string>{"1"}; }, 1},
      {"c!=0, a-b+c=1", [&] { return three([&] { Rational b = rnd(rng), c = nz(); return std::array<Rational, 3>{1 + b - c, b, c}; }); },
       [](const auto& p) { return std::vector<std::string>{"x + " + q(p[1] / p[2]) + "*y"}; }, 1},
      {"c!=0, a-b+c=2, b=c-1",
       [&] {
         return three([&] {
           Rational c;
           do c = nz();
           while (c == 1);
           return std::array<Rational, 3>{2 + (c - 1) - c, c - 1, c};
         });
       },
       [](const auto& p) { return std::vector<std::string>{"(x + y)*(x + " + q(1 - 1 / p[2]) + "*y)"}; }, 1},
      {"c!=0, a-b+c=2, b=0", [&] { return three([&] { Rational c = nz(); return std::array<Rational, 3>{2 - c, 0, c}; }); },
       [](const auto& p) { return std::vector<std::string>{"x*(x + " + q(1 / p[2]) + "*y)"}; }, 1},
      {"c!=0, a-b+c=3, (b,c)=(-2/3,2/3)",
       [] { return std::vector<std::array<Rational, 3>>{{Rational(5, 3), Rational(-2, 3), Rational(2, 3)}}; },
       [](const auto&) { return std::vector<std::string>{"(x - y)*(x + 1/2*y)*(x + 2*y)"}; }, 1},
      {"c!=0, a-b+c=3, (b,c)=(0,2)", [] { return std::vector<std::array<Rational, 3>>{{1, 0, 2}}; },
       [](const auto&) { return std::vector<std::string>{"x*(x + 1/2*y)*(x + y)"}; }, 1},
      {"c=0, a-b=0", [&] { return three([&] { Rational b = rnd(rng); return std::array<Rational, 3>{b, b, 0}; }); },
       [](const auto&) { return std::vector<std::string>{"1"}; }, 1},
      {"c=0, a-b=1, b!=0", [&] { return three([&] { Rational b = nz(); return std::array<Rational, 3>{b + 1, b, 0}; }); },
       [](const auto&) { return std::vector<std::string>{"y"}; }, 1},
      {"c=0, a-b=1, b=0", [] { return std::vector<std::array<Rational, 3>>{{1, 0, 0}}; },
       [](const auto&) { return std::vector<std::string>{"y", "x", "x + 3*y", "x - 2/7*y"}; }, 2},
      {"c=0, a-b=2", [&] { return three([&] { Rational b = rnd(rng); return std::array<Rational, 3>{b + 2, b, 0}; }); },
       [](const auto& p) { return std::vector<std::string>{"y*(x - " + q(p[1]) + "*y)"}; }, 1},
      {"c=0, a-b=3, b=-2", [] { return std::vector<std::array<Rational, 3>>{{1, -2, 0}}; },
       [](const auto&) { return std::vector<std::string>{"y*(x + y)*(x + 2*y)"}; }, 1},
      {"c=0, a-b=3, b=0", [] { return std::vector<std::array<Rational, 3>>{{3, 0, 0}}; },
       [](const auto&) { return std::vector<std::string>{"y*x*(x - y)"}; }, 1},
  };
  RingPtr K = keyeq_ring();
  std::size_t sampled = 0;
  for (const auto& row : rows) {
    for (const auto& p : row.points()) {
      std::string at = row.name + " at (" + to_string(p[0]) + "," + to_string(p[1]) + "," + to_string(p[2]) + ")";
      expect(keyeq_expected(p[0], p[1], p[2]) == row.dim, at + ": sample does not satisfy the row");
      auto r = solve_keyeq(p[0], p[1], p[2], 4);
      expect(r.dim() == row.dim, at + ": dim " + std::to_string(r.dim()));
      for (const auto& m : row.members(p)) {
        auto f = P(m, K);
        bool ok = row.dim == 1 ? proportional(r.basis[0], f) : in_span(r.basis, f);
        expect(ok, at + ": " + m + " not in the solution space");
      }
      ++sampled;
    }
  }
  std::size_t grid = 0;
  while (grid < 200) {
    Rational a = rnd(rng, -12, 12, 6), b = rnd(rng, -12, 12, 6), c = grid % 4 == 0 ? Rational(0) : rnd(rng, -12, 12, 6);
    if (keyeq_expected(a, b, c) != 0) continue;
    auto r = solve_keyeq(a, b, c, 4);
    expect(r.dim() == 0, "nonzero solution at (" + to_string(a) + "," + to_string(b) + "," + to_string(c) + ")");
    ++grid;
  }
  *detail << rows.size() << " rows, " << sampled << " row points, " << grid << " violating points";
}

// ---------------------------------------------------------------- 7

const std::vector<std::string> kFamilies{"T7.3-Mabc", "T7.3-M1", "T7.3-M2", "T7.3-M3", "T7.3-M4", "T7.3-M5",
                                         "T7.3-M6",   "T7.4-M1", "T7.4-M2", "T7.4-M3", "T7.4-M4", "T7.4-M5",
                                         "T7.4-M6",   "T7.4-M7", "T7.4-M8", "T7.4-M9", "T7.4-M10", "T7.4-Mb1",
                                         "T7.4-Mb2"};

void modules() {
  std::mt19937_64 rng(73);
  std::size_t builds = 0;
  for (const auto& key : kFamilies) {
    const auto& fam = module_family(key);
    int ok = 0, attempts = 0;
    while (ok < 5) {
      expect(++attempts < 100, key + ": could not sample admissible parameters");
      BuildOptions o;
      for (const auto& s : fam.schema) o.values[s.name] = s.nonzero ? rnd_nonzero(rng) : rnd(rng);
      std::optional<ConformalModule> built;
      try {
        built = build_module(key, o);
      } catch (const SchemaError&) {
        continue;
      }
      const ConformalModule& m = *built;
      auto r = is_module(m);
      expect(r.passed(), key + ": is_module fails with " + std::to_string(r.violations.size()) + " violations");
      if (key == "T7.3-Mabc") {
        // G_lam (G_mu v0) + G_mu (G_lam v0) = [G_lam G]_{lam+mu} v0 = 2 H_{lam+mu} v0
        auto R = m.ring();
        StdVars s(R);
        PolyVec G{Polynomial(R), Polynomial(R), Polynomial(R, 1)}, H{Polynomial(R), Polynomial(R, 1), Polynomial(R)};
        PolyVec v0{Polynomial(R, 1), Polynomial(R)};
        auto a = act(m, G, s.lam, act(m, G, s.mu, v0));
        auto b = act(m, G, s.mu, act(m, G, s.lam, v0));
        auto h = act(m, H, s.lam + s.mu, v0);
        for (std::size_t i = 0; i < 2; ++i) expect(a[i] + b[i] == Rational(2) * h[i], "coupling identity fails");
        expect(h[0] == Polynomial(R, o.values["b"] * o.values["c"]), "H does not act by bc");
      }
      ++ok;
      ++builds;
    }
  }
  std::size_t grid = 0;
  while (grid < 20) {
    auto alg = hvs2(rnd(rng), rnd(rng), 1);
    Rational d0 = rnd(rng), d1 = rnd(rng), a = rnd(rng), b = rnd(rng);
    auto r = discover_rank11(alg, d0, d1, a, b, 3);
    expect(r.dim() == 0, "tau=1 discovery found " + std::to_string(r.dim()) + " solutions at weights (" +
                             to_string(d0) + "," + to_string(d1) + ")");
    ++grid;
  }
  *detail << kFamilies.size() << " families, " << builds << " builds, " << grid << " tau=1 weight points";
}

// ---------------------------------------------------------------- 8

PartialEndo endo(const LcsAlgebra& alg, const std::vector<std::vector<std::string>>& rows) {
  PartialEndo s;
  for (const auto& r : rows) {
    PolyVec v;
    for (const auto& c : r) v.push_back(P(c, alg.ring()));
    s.matrix.push_back(v);
  }
  return s;
}

PartialEndo sigma(const LcsAlgebra& alg, const Rational& c, const Rational& g0, const Rational& g1,
                  const std::optional<Rational>& odd = std::nullopt) {
  return endo(alg, {{"1", q(g0) + " + " + q(g1) + "*del", "0"}, {"0", q(c * c), "0"}, {"0", "0", q(odd.value_or(c))}});
}

void group_laws() {
  std::mt19937_64 rng(74);
  auto hvs = algebra("HVS");
  for (int t = 0; t < 20; ++t) {
    Rational c = rnd_nonzero(rng), c2 = rnd_nonzero(rng), eta = rnd(rng);
    Rational g0 = rnd(rng), g1 = rnd(rng), h0 = rnd(rng), h1 = rnd(rng);
    expect(is_automorphism(sigma(hvs, c, g0, g1), hvs).passed(), "sigma(c,g0,g1) is not an automorphism");
    auto t1 = hvs2(rnd(rng), rnd(rng), rnd_nonzero(rng));
    Rational h = rnd_nonzero(rng);
    expect(is_automorphism(endo(t1, {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", q(h)}}), t1).passed(),
           "varsigma_h is not an automorphism");
    auto t0 = hvs2(rnd(rng), rnd(rng), 0);
    expect(is_automorphism(sigma(t0, c, g0, g1, rnd_nonzero(rng)), t0).passed(), "varsigma is not an automorphism");

    expect(compose(sigma(hvs, c, g0, g1), sigma(hvs, c2, h0, h1)) ==
               sigma(hvs, c * c2, g0 + c * c * h0, g1 + c * c * h1),
           "composition law");
    auto rho = sigma(hvs, c, 0, 0), rho_inv = inverse(hvs, rho);
    expect(compose(compose(rho, sigma(hvs, 1, eta, 0)), rho_inv) == sigma(hvs, 1, c * c * eta, 0), "rho phi rho^-1");
    expect(compose(compose(rho, sigma(hvs, 1, 0, eta)), rho_inv) == sigma(hvs, 1, 0, c * c * eta), "rho pi rho^-1");
  }
  expect(compose(sigma(hvs, 2, 1, 0), sigma(hvs, 3, 0, 1)) == sigma(hvs, 6, 1, 4), "(2,1,0)(3,0,1)");
  auto broken_alg = hvs2(1, 0, 1);
  auto broken = endo(broken_alg, {{"1", "1", "0"}, {"0", "1", "0"}, {"0", "0", "1"}});
  expect(!is_homomorphism(broken, broken_alg, broken_alg).passed(), "broken map passes is_homomorphism");
  *detail << "20 tuples";
}

// ---------------------------------------------------------------- 9

void properties() {
  std::mt19937_64 rng(75);
  auto R = Ring::standard({"a"});
  auto random_poly = [&](std::vector<std::size_t> vars, unsigned deg, int terms) {
    Polynomial p(R);
    std::uniform_int_distribution<unsigned> d(0, deg);
    for (int t = 0; t < terms; ++t) {
      Exponents e(R->size(), 0);
      for (auto v : vars) e[v] = d(rng);
      p += Polynomial::monomial(R, e, rnd(rng));
    }
    return p;
  };
  std::vector<std::size_t> vars{0, 1, 2, R->index("a")};
  for (int i = 0; i < 1000; ++i) {
    auto p = random_poly(vars, 3, 4), r = random_poly(vars, 3, 4), s = random_poly(vars, 3, 4);
    expect(p + r == r + p && p * r == r * p, "commutativity");
    expect((p * r) * s == p * (r * s) && (p + r) + s == p + (r + s), "associativity");
    expect(p * (r + s) == p * r + p * s, "distributivity");
    expect((p - p).is_zero() && p * Polynomial(R, 1) == p, "identities");
  }
  for (int i = 0; i < 200; ++i) {
    auto p = random_poly(vars, 3, 4), r = random_poly(vars, 3, 4);
    Bindings b{{0, random_poly(vars, 2, 3)}, {1, random_poly(vars, 2, 3)}};
    expect(substitute(p * r, b) == substitute(p, b) * substitute(r, b), "substitution respects products");
    expect(substitute(p + r, b) == substitute(p, b) + substitute(r, b), "substitution respects sums");
  }

  auto alg = algebra("HVS");
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  auto sys = derivation_system(alg, Parity::Even, 3, 3, &slots);
  ColumnLayout layout(sys);
  RowEchelon space;
  auto base = nullspace(sys);
  for (const auto& v : base) space.insert(v);
  auto AR = alg.ring();
  for (int i = 0; i < 10; ++i) {
    Element x{{Polynomial(AR, rnd(rng)) + Polynomial::variable(AR, "del") * rnd(rng),
               Polynomial(AR, rnd(rng)) + Polynomial::variable(AR, "del") * rnd(rng), Polynomial(AR)}};
    auto d = ad(alg, x);
    std::vector<Polynomial> asg;
    for (auto [i2, j] : slots) asg.push_back(d.matrix[i2][j]);
    expect(space.reduce(layout.vector(asg), true).empty(), "inner derivation outside the solution space");
  }

  for (const auto& f : module_catalog()) {
    BuildOptions o;
    o.symbolic = true;
    for (const auto& s : f.schema)
      if (s.name == "beta") o.values["beta"] = 3;
    auto m = parity_flip(build_module(f.key, o));
    expect(is_module(m).passed(), f.key + ": parity flip is not a module");
  }

  for (int t = 0; t < 4; ++t) {
    auto shuffled = sys;
    std::shuffle(shuffled.equations.begin(), shuffled.equations.end(), rng);
    for (auto& e : shuffled.equations) std::shuffle(e.terms.begin(), e.terms.end(), rng);
    expect(nullspace(shuffled) == base, "solver depends on equation order");
  }

  auto report = [&] {
    Json r = make_report("solve derivations", {{"algebra", "HVS"}, {"bound", 2}});
    r["result"]["even"] = to_json(solve_derivations(alg, Parity::Even, 2, 2), alg);
    finalize(r);
    return render(r, "json") + render(r, "text");
  };
  expect(report() == report(), "reports differ between runs");
  *detail << "1000 ring-law cases";
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    void (*run)();
  };
  const Criterion criteria[] = {
      {"axiom suite", axioms},
      {"HVS derivations", hvs_derivations},
      {"HVS2 derivation grid", hvs2_derivations},
      {"rank (1+1) derivations", rank11_derivations},
      {"biderivations", biderivations},
      {"key equation tables", key_equation},
      {"module suite", modules},
      {"automorphism group laws", group_laws},
      {"property suites", properties},
  };
  int failed = 0, n = 0;
  for (const auto& c : criteria) {
    ++n;
    std::ostringstream os;
    detail = &os;
    std::string status = "PASS";
    try {
      c.run();
    } catch (const std::exception& e) {
      status = "FAIL";
      os.str(e.what());
      ++failed;
    }
    std::cout << status << " " << n << " " << c.name << ": " << os.str() << std::endl;
  }
  std::cout << (n - failed) << "/" << n << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
