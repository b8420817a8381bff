#include <doctest.h>

#include "confkernel/maps.hpp"
#include "confkernel/textio.hpp"
#include "support.hpp"

using namespace confkernel;
using testing::P;

namespace {

PartialEndo endo(const LcsAlgebra& alg, const std::vector<std::vector<std::string>>& rows) {
  PartialEndo s;
  for (const auto& r : rows) {
    PolyVec v;
    for (const auto& c : r) v.push_back(P(c, alg.ring()));
    s.matrix.push_back(v);
  }
  return s;
}

std::string q(const Rational& r) { return "(" + to_string(r) + ")"; }

// L -> L + (g0 + g1 del) H, H -> c^2 H, G -> c G
PartialEndo sigma(const LcsAlgebra& alg, const Rational& c, const Rational& g0, const Rational& g1) {
  return endo(alg, {{"1", q(g0) + " + " + q(g1) + "*del", "0"}, {"0", q(c * c), "0"}, {"0", "0", q(c)}});
}

PartialEndo rho(const LcsAlgebra& alg, const Rational& c) { return sigma(alg, c, 0, 0); }
PartialEndo phi(const LcsAlgebra& alg, const Rational& eta) { return sigma(alg, 1, eta, 0); }
PartialEndo pi(const LcsAlgebra& alg, const Rational& eta) { return sigma(alg, 1, 0, eta); }

ConformalEnd end_of(const LcsAlgebra& alg, Parity p, const std::vector<std::vector<std::string>>& rows) {
  ConformalEnd d{p, {}};
  for (const auto& r : rows) {
    PolyVec v;
    for (const auto& c : r) v.push_back(P(c, alg.ring()));
    d.matrix.push_back(v);
  }
  return d;
}

}  // namespace

TEST_CASE("applying a conformal map") {
  auto alg = testing::algebra("HVS");
  auto R = alg.ring();
  auto d = end_of(alg, Parity::Even, {{"0", "1", "0"}, {"0", "0", "0"}, {"0", "0", "0"}});
  auto L = Element::generator(alg, 0);
  CHECK(apply(alg, d, "lam", L).coeffs == PolyVec{P("0", R), P("1", R), P("0", R)});
  Element dL{{P("del", R), P("0", R), P("0", R)}};
  CHECK(apply(alg, d, "lam", dL).coeffs == PolyVec{P("0", R), P("del + lam", R), P("0", R)});
  auto adH = ad(alg, Element::generator(alg, 1));
  CHECK(apply(alg, adH, "lam", L).coeffs == PolyVec{P("0", R), P("lam", R), P("0", R)});
}

TEST_CASE("adjoint maps") {
  auto alg = testing::algebra("HVS");
  auto R = alg.ring();
  auto adL = ad(alg, Element::generator(alg, 0));
  CHECK(adL == end_of(alg, Parity::Even, {{"del + 2*lam", "0", "0"}, {"0", "del + lam", "0"}, {"0", "0", "del + lam"}}));
  Element dH{{P("0", R), P("del", R), P("0", R)}};
  CHECK(ad(alg, dH) == end_of(alg, Parity::Even, {{"0", "-lam^2", "0"}, {"0", "0", "0"}, {"0", "0", "0"}}));
  auto adG = ad(alg, Element::generator(alg, 2));
  CHECK(adG.parity == Parity::Odd);
  CHECK(adG == end_of(alg, Parity::Odd, {{"0", "0", "lam"}, {"0", "0", "0"}, {"0", "2", "0"}}));
}

TEST_CASE("derivations") {
  auto hvs = testing::algebra("HVS");
  auto outer = end_of(hvs, Parity::Even, {{"0", "1", "0"}, {"0", "0", "0"}, {"0", "0", "0"}});
  CHECK(is_derivation(hvs, outer).passed());
  auto not_der = end_of(hvs, Parity::Even, {{"0", "0", "0"}, {"0", "1", "0"}, {"0", "0", "0"}});
  auto r = is_derivation(hvs, not_der);
  CHECK_FALSE(r.passed());
  CHECK_FALSE(r.violations.front().residual.is_zero());

  auto odd = [](const LcsAlgebra& a) {
    return end_of(a, Parity::Odd, {{"0", "0", "1"}, {"0", "0", "0"}, {"0", "0", "0"}});
  };
  auto good = testing::algebra("HVS2", testing::values({{"beta", 1}, {"gamma", 0}, {"tau", 0}}));
  auto bad = testing::algebra("HVS2", testing::values({{"beta", 2}, {"gamma", 0}, {"tau", 0}}));
  CHECK(is_derivation(good, odd(good)).passed());
  CHECK_FALSE(is_derivation(bad, odd(bad)).passed());

  // wrong parity entries are reported
  auto mixed = end_of(hvs, Parity::Even, {{"0", "0", "1"}, {"0", "0", "0"}, {"0", "0", "0"}});
  CHECK_FALSE(check_map_parity(hvs, mixed).passed());
  CHECK_FALSE(is_derivation(hvs, mixed).passed());
}

TEST_CASE("property: inner derivations are derivations") {
  std::mt19937_64 rng(5);
  for (const char* key : {"HVS", "NS", "HV", "Vir"}) {
    auto alg = testing::algebra(key);
    auto R = alg.ring();
    for (int t = 0; t < 8; ++t) {
      std::size_t g = rng() % alg.size();
      Element x{PolyVec(alg.size(), Polynomial(R))};
      for (std::size_t i = 0; i < alg.size(); ++i)
        if (alg.parity(i) == alg.parity(g)) x.coeffs[i] = testing::random_poly(rng, R, {R->index("del")}, 2, 3);
      CHECK(is_derivation(alg, ad(alg, x)).passed());
    }
  }
}

TEST_CASE("automorphisms of HVS") {
  auto alg = testing::algebra("HVS");
  CHECK(is_automorphism(sigma(alg, 3, 1, 2), alg).passed());
  CHECK(is_automorphism(PartialEndo::identity(alg), alg).passed());
  CHECK(is_automorphism(sigma(alg, -1, Rational(1, 2), -7), alg).passed());
  // G -> 2G with H fixed breaks [G G] = 2H
  CHECK_FALSE(is_automorphism(endo(alg, {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "2"}}), alg).passed());
  // homomorphism but not invertible
  auto degenerate = endo(alg, {{"1", "0", "0"}, {"0", "0", "0"}, {"0", "0", "0"}});
  CHECK(is_homomorphism(degenerate, alg, alg).passed());
  CHECK_FALSE(is_automorphism(degenerate, alg).passed());
  CHECK(block_determinant(alg, sigma(alg, 3, 1, 2), Parity::Even) == P("9", alg.ring()));
}

TEST_CASE("automorphisms of HVS2") {
  auto t1 = testing::algebra("HVS2", testing::values({{"beta", 1}, {"gamma", 0}, {"tau", 1}}));
  auto broken = endo(t1, {{"1", "1", "0"}, {"0", "1", "0"}, {"0", "0", "1"}});
  CHECK_FALSE(is_homomorphism(broken, t1, t1).passed());
  CHECK(is_automorphism(endo(t1, {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "5"}}), t1).passed());
  auto t0 = testing::algebra("HVS2", testing::values({{"beta", 3}, {"gamma", 2}, {"tau", 0}}));
  CHECK(is_automorphism(endo(t0, {{"1", "2 - del", "0"}, {"0", "4", "0"}, {"0", "0", "-3"}}), t0).passed());
}

TEST_CASE("group laws") {
  auto alg = testing::algebra("HVS");
  CHECK(compose(sigma(alg, 2, 1, 0), sigma(alg, 3, 0, 1)) == sigma(alg, 6, 1, 4));
  CHECK(compose(compose(rho(alg, 2), phi(alg, 1)), inverse(alg, rho(alg, 2))) == phi(alg, 4));
  CHECK(compose(sigma(alg, 3, 1, 2), PartialEndo::identity(alg)) == sigma(alg, 3, 1, 2));
  CHECK(compose(PartialEndo::identity(alg), sigma(alg, 3, 1, 2)) == sigma(alg, 3, 1, 2));
  std::mt19937_64 rng(17);
  for (int t = 0; t < 20; ++t) {
    Rational c = testing::nonzero_rational(rng), c2 = testing::nonzero_rational(rng);
    Rational g0 = testing::small_rational(rng), g1 = testing::small_rational(rng);
    Rational h0 = testing::small_rational(rng), h1 = testing::small_rational(rng), eta = testing::small_rational(rng);
    CHECK(compose(sigma(alg, c, g0, g1), sigma(alg, c2, h0, h1)) == sigma(alg, c * c2, g0 + c * c * h0, g1 + c * c * h1));
    CHECK(compose(compose(rho(alg, c), phi(alg, eta)), inverse(alg, rho(alg, c))) == phi(alg, c * c * eta));
    CHECK(compose(compose(rho(alg, c), pi(alg, eta)), inverse(alg, rho(alg, c))) == pi(alg, c * c * eta));
    CHECK(compose(rho(alg, c), rho(alg, c2)) == rho(alg, c * c2));
    CHECK(compose(phi(alg, eta), phi(alg, g0)) == phi(alg, eta + g0));
    CHECK(compose(sigma(alg, c, g0, g1), inverse(alg, sigma(alg, c, g0, g1))) == PartialEndo::identity(alg));
  }
}

TEST_CASE("conjugation by odd rescaling on HVS2") {
  auto alg = testing::algebra("HVS2", testing::values({{"beta", 2}, {"gamma", 1}, {"tau", 0}}));
  auto theta = [&](const Rational& c) { return endo(alg, {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", q(c)}}); };
  auto psi = [&](const Rational& e) { return endo(alg, {{"1", q(e), "0"}, {"0", "1", "0"}, {"0", "0", "1"}}); };
  // rescaling E does not touch L and H, so psi is fixed under conjugation
  CHECK(compose(compose(theta(3), psi(2)), inverse(alg, theta(3))) == psi(2));
  CHECK_FALSE(compose(compose(theta(3), psi(2)), inverse(alg, theta(3))) == psi(6));
}

TEST_CASE("composition of conformal maps") {
  auto alg = testing::algebra("HVS");
  auto R = alg.ring();
  auto adL = ad(alg, Element::generator(alg, 0));
  auto c = compose_end(alg, adL, adL);
  // (ad L)_lam (ad L)_mu L = (del + lam + 2 mu)(del + 2 lam) L
  CHECK(c.matrix[0][0] == P("(del + lam + 2*mu)*(del + 2*lam)", R));
  auto id = PartialEndo::identity(alg);
  CHECK(compose_end(id, adL) == adL);
  CHECK(compose_end(alg, adL, id) == adL);
  // sigma o ad(x) o sigma^{-1} = ad(sigma x)
  auto s = sigma(alg, 2, 1, 3);
  auto lhs = compose_end(alg, compose_end(s, adL), inverse(alg, s));
  Element sL{s.matrix[0]};
  CHECK(lhs == ad(alg, sL));
}

TEST_CASE("map files") {
  auto alg = testing::algebra("HVS");
  auto mf = parse_map("map d parity even\nimage L = H\nimage H = 0\nimage G = 0\n", alg, "d.map");
  CHECK(mf.name == "d");
  CHECK(is_derivation(alg, mf.map).passed());
  auto again = parse_map(format_map(mf.name, alg, mf.map), alg);
  CHECK(again.map == mf.map);
  auto partial = to_partial_endo(parse_map("map s parity even\nimage L = L + (1 + 2*del)*H\nimage H = 9*H\nimage G = 3*G\n", alg));
  CHECK(partial == sigma(alg, 3, 1, 2));
  CHECK(to_conformal_end(partial).matrix == partial.matrix);
  CHECK_THROWS_AS(parse_map("map d parity even\nimage L = mu*H\n", alg), FormatError);
  CHECK_THROWS_AS(parse_map("map d parity odd\nimage L = H\n", alg), FormatError);
  CHECK_THROWS_AS(parse_map("map d parity even\nimage Q = H\n", alg), FormatError);
  CHECK_THROWS_AS(to_partial_endo(parse_map("map d parity even\nimage L = lam*H\n", alg)), FormatError);
  CHECK_THROWS_AS(parse_map("map d parity even\nimage L = (del*H\n", alg), std::exception);
}
