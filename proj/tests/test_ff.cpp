#include <doctest.h>

#include <tuple>

#include "althull/ff.hpp"

using namespace althull;

namespace {

// Independent reference multiplication: schoolbook product of the coefficient
// vectors over the middle level, reduced by long division against the top
// modulus.  Exercises none of the exp/log tables used by FieldTower::mul.
Element slow_top_mul(const FieldTower& t, Element a, Element b) {
  auto ac = t.psi_expand(a), bc = t.psi_expand(b);
  int m = t.m();
  std::vector<Element> prod(2 * m - 1, t.zero(Level::mid));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      prod[i + j] = t.add(prod[i + j], t.mul(ac[i], bc[j]));
  const auto& mod = t.top_modulus();  // monic, length m+1
  for (int d = 2 * m - 2; d >= m; --d) {
    Element lead = prod[d];
    if (lead.code == 0) continue;
    for (int i = 0; i <= m; ++i) {
      Element mi = t.element(Level::mid, mod[i]);
      prod[d - m + i] = t.sub(prod[d - m + i], t.mul(lead, mi));
    }
  }
  prod.resize(m);
  return t.psi_contract(prod);
}

}  // namespace

TEST_CASE("nine-element field arithmetic against hand values") {
  FieldTower t = FieldTower::make(3, 1, 2);
  CHECK(t.p() == 3);
  CHECK(t.q() == 3);
  CHECK(t.m() == 2);
  CHECK(t.top_size() == 9);
  // default modulus is the lexicographically first irreducible: x^2 + 1
  CHECK(t.top_modulus() == std::vector<int64_t>{1, 0, 1});

  // codes pack a + b*alpha as a + 3b
  Element one_a = t.element(Level::top, 4);   // 1 + alpha
  Element one_2a = t.element(Level::top, 7);  // 1 + 2 alpha
  CHECK(t.mul(one_a, one_2a) == t.element(Level::top, 2));
  CHECK(t.inv(t.alpha()) == t.element(Level::top, 6));  // 2 alpha
  CHECK(t.trace(t.alpha()) == t.zero(Level::mid));
  CHECK(t.trace(t.one(Level::top)) == t.element(Level::mid, 2));
  CHECK(t.frobenius(one_a, 1) == one_2a);
  CHECK(t.psi_expand(t.element(Level::top, 5)) ==
        std::vector<Element>{t.element(Level::mid, 2), t.element(Level::mid, 1)});

  for (int64_t c = 0; c < 9; ++c) {
    Element x = t.element(Level::top, c);
    CHECK(t.add(x, t.neg(x)) == t.zero(Level::top));
    if (c != 0) CHECK(t.mul(x, t.inv(x)) == t.one(Level::top));
    CHECK(t.frobenius(x, 2) == x);
    CHECK(t.psi_contract(t.psi_expand(x)) == x);
  }
}

TEST_CASE("table multiplication matches schoolbook reduction") {
  for (auto [p, s, m] : {std::tuple<int, int, int>{3, 1, 2}, {2, 1, 4}, {2, 2, 2}, {7, 1, 2}}) {
    FieldTower t = FieldTower::make(p, s, m);
    int64_t Q = t.top_size();
    for (int64_t a = 0; a < Q; ++a)
      for (int64_t b = a; b < Q; ++b) {
        Element x = t.element(Level::top, a), y = t.element(Level::top, b);
        CHECK(t.mul(x, y) == slow_top_mul(t, x, y));
      }
  }
}

TEST_CASE("three-level tower with nontrivial middle field") {
  FieldTower t = FieldTower::make(2, 2, 2);  // F_2 <= F_4 <= F_16
  CHECK(t.q() == 4);
  CHECK(t.top_size() == 16);
  // only irreducible quadratic over F_2
  CHECK(t.base_modulus() == std::vector<int64_t>{1, 1, 1});
  CHECK(t.size_of(Level::mid) == 4);
  CHECK(t.flat_degree(Level::top) == 4);

  // mid arithmetic is F_4: beta^2 = beta + 1
  Element beta = t.element(Level::mid, 2);
  CHECK(t.mul(beta, beta) == t.element(Level::mid, 3));
  CHECK(t.inv(beta) == t.element(Level::mid, 3));

  // Frobenius is the 4-power map and fixes exactly the lifted subfield
  int fixed = 0;
  for (int64_t c = 0; c < 16; ++c) {
    Element x = t.element(Level::top, c);
    CHECK(t.frobenius(x, 1) == t.mul(t.mul(x, x), t.mul(x, x)));
    if (t.frobenius(x, 1) == x) {
      ++fixed;
      CHECK(t.in_subfield(x));
      CHECK(t.lift(t.project_mid(x), Level::top) == x);
    }
  }
  CHECK(fixed == 4);
}

TEST_CASE("subfield lift and projection round trips") {
  FieldTower t = FieldTower::make(3, 1, 2);
  for (int64_t c = 0; c < 3; ++c) {
    Element e = t.element(Level::mid, c);
    Element up = t.lift(e, Level::top);
    CHECK(t.in_subfield(up));
    CHECK(t.project_mid(up) == e);
  }
  CHECK_FALSE(t.in_subfield(t.alpha()));
  CHECK_THROWS_AS(t.project_mid(t.alpha()), Error);
}

TEST_CASE("trace is additive, subfield-linear, and onto") {
  FieldTower t = FieldTower::make(2, 2, 2);
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    Element x = t.random_element(Level::top, rng);
    Element y = t.random_element(Level::top, rng);
    Element c = t.random_element(Level::mid, rng);
    CHECK(t.trace(t.add(x, y)) == t.add(t.trace(x), t.trace(y)));
    CHECK(t.trace(t.mul(t.lift(c, Level::top), x)) == t.mul(c, t.trace(x)));
  }
  bool hit_nonzero = false;
  for (int64_t cc = 0; cc < 16; ++cc)
    if (t.trace(t.element(Level::top, cc)).code != 0) hit_nonzero = true;
  CHECK(hit_nonzero);
}

TEST_CASE("element string form round trips") {
  FieldTower t = FieldTower::make(2, 2, 2);
  CHECK(t.to_string(t.element(Level::top, 0)) == "0,0,0,0");
  for (int64_t c = 0; c < 16; ++c) {
    Element e = t.element(Level::top, c);
    CHECK(t.parse_element(Level::top, t.to_string(e)) == e);
  }
  for (int64_t c = 0; c < 4; ++c) {
    Element e = t.element(Level::mid, c);
    CHECK(t.parse_element(Level::mid, t.to_string(e)) == e);
  }
  CHECK_THROWS_AS(t.parse_element(Level::mid, "1,0,1"), ParseError);
  CHECK_THROWS_AS(t.parse_element(Level::mid, "9,0"), ParseError);
}

TEST_CASE("descriptor round trips") {
  for (auto [p, s, m] : {std::tuple<int, int, int>{3, 1, 2}, {2, 2, 2}, {7, 1, 2}, {2, 1, 9}}) {
    FieldTower t = FieldTower::make(p, s, m);
    FieldTower u = FieldTower::from_descriptor(t.descriptor());
    CHECK(u.p() == t.p());
    CHECK(u.q() == t.q());
    CHECK(u.m() == t.m());
    CHECK(u.base_modulus() == t.base_modulus());
    CHECK(u.top_modulus() == t.top_modulus());
    CHECK(u.descriptor() == t.descriptor());
  }
  CHECK_THROWS_AS(FieldTower::from_descriptor("p=3; qpoly=[]"), ParseError);
}

TEST_CASE("constructor rejects bad moduli") {
  // x^2 + 2 = (x-1)(x+1) over F_3
  CHECK_THROWS_AS(FieldTower(3, {}, {2, 0, 1}), ParamError);
  // non-monic
  CHECK_THROWS_AS(FieldTower(3, {}, {1, 0, 2}), ParamError);
  // x^2 + x = x(x+1) over F_2 as base modulus
  CHECK_THROWS_AS(FieldTower(2, {0, 1, 1}, {1, 1, 1}), ParamError);
  CHECK_THROWS_AS(FieldTower(4, {}, {1, 1}), ParamError);  // p not prime
}

TEST_CASE("level and range checks throw") {
  FieldTower t = FieldTower::make(3, 1, 2);
  CHECK_THROWS_AS(t.add(t.one(Level::top), t.one(Level::mid)), LevelMismatch);
  CHECK_THROWS_AS(t.inv(t.zero(Level::top)), DivisionByZero);
  CHECK_THROWS_AS(t.div(t.one(Level::mid), t.zero(Level::mid)), DivisionByZero);
  CHECK_THROWS_AS(t.element(Level::top, 9), ParamError);
  CHECK_THROWS_AS(t.element(Level::mid, -1), ParamError);
}

TEST_CASE("power map agrees with repeated multiplication") {
  FieldTower t = FieldTower::make(7, 1, 2);
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    Element x = t.random_nonzero(Level::top, rng);
    Element acc = t.one(Level::top);
    for (int e = 0; e <= 6; ++e) {
      CHECK(t.pow(x, e) == acc);
      acc = t.mul(acc, x);
    }
    CHECK(t.pow(x, 48) == t.one(Level::top));  // group order
    CHECK(t.pow(x, -1) == t.inv(x));
  }
  CHECK(t.pow(t.zero(Level::top), 3) == t.zero(Level::top));
}

TEST_CASE("random elements are deterministic per seed") {
  FieldTower t = FieldTower::make(2, 1, 9);
  Rng a(42), b(42), c(43);
  bool diverged = false;
  for (int i = 0; i < 32; ++i) {
    Element x = t.random_element(Level::top, a);
    CHECK(x == t.random_element(Level::top, b));
    if (!(x == t.random_element(Level::top, c))) diverged = true;
  }
  CHECK(diverged);
  Rng d(7);
  for (int i = 0; i < 32; ++i) CHECK(t.random_nonzero(Level::mid, d).code != 0);
}

TEST_CASE("polynomial division identity") {
  FieldTower t = FieldTower::make(5, 1, 2);
  Rng rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    Polynomial a{Level::top, {}}, b{Level::top, {}};
    int da = (int)rng.below(6), db = 1 + (int)rng.below(3);
    for (int i = 0; i <= da; ++i) a.c.push_back(t.random_element(Level::top, rng));
    for (int i = 0; i <= db; ++i) b.c.push_back(t.random_element(Level::top, rng));
    b.c.back() = t.random_nonzero(Level::top, rng);
    a = poly_trim(a);
    auto [q, r] = poly_divmod(t, a, b);
    CHECK(poly_deg(r) < poly_deg(b));
    Polynomial back = poly_add(t, poly_mul(t, q, b), r);
    CHECK(back == a);
  }
}

TEST_CASE("gcd divides both inputs and is monic") {
  FieldTower t = FieldTower::make(3, 1, 2);
  // (x+1)^2 (x+2) and (x+1)(x^2+1): gcd x+1
  Polynomial f = poly_from_codes(Level::mid, {1, 1});
  Polynomial g = poly_from_codes(Level::mid, {2, 1});
  Polynomial h = poly_from_codes(Level::mid, {1, 0, 1});
  Polynomial a = poly_mul(t, poly_mul(t, f, f), g);
  Polynomial b = poly_mul(t, f, h);
  CHECK(poly_gcd(t, a, b) == f);
  Polynomial l = poly_lcm(t, f, g);
  CHECK(poly_deg(l) == 2);
  CHECK(poly_is_zero(poly_mod(t, l, f)));
  CHECK(poly_is_zero(poly_mod(t, l, g)));
}

TEST_CASE("irreducibility on known cases") {
  FieldTower t3 = FieldTower::make(3, 1, 2);
  FieldTower t5 = FieldTower::make(5, 1, 2);
  FieldTower t2 = FieldTower::make(2, 1, 4);
  CHECK(poly_is_irreducible(t3, poly_from_codes(Level::mid, {1, 0, 1})));
  CHECK_FALSE(poly_is_irreducible(t5, poly_from_codes(Level::mid, {1, 0, 1})));
  CHECK(poly_is_irreducible(t2, poly_from_codes(Level::mid, {1, 1, 1})));
  CHECK(poly_is_irreducible(t2, poly_from_codes(Level::mid, {1, 1, 0, 0, 1})));
  CHECK_FALSE(poly_is_irreducible(t2, poly_from_codes(Level::mid, {1, 0, 0, 0, 1})));
  // product of all monic linear polynomials has every point as a root
  CHECK_FALSE(poly_is_irreducible(t3, poly_from_codes(Level::mid, {0, 2, 0, 1})));
}

TEST_CASE("root finding matches planted roots") {
  FieldTower t = FieldTower::make(7, 1, 2);
  Element a = t.element(Level::top, 10), b = t.element(Level::top, 33);
  Polynomial xa{Level::top, {t.neg(a), t.one(Level::top)}};
  Polynomial xb{Level::top, {t.neg(b), t.one(Level::top)}};
  auto roots = find_roots(t, poly_mul(t, xa, xb));
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == a);
  CHECK(roots[1] == b);

  // mid-level coefficients are lifted before evaluation
  Polynomial sq = poly_from_codes(Level::mid, {6, 0, 1});  // x^2 - 1
  auto r2 = find_roots(t, sq);
  REQUIRE(r2.size() == 2);
  CHECK(r2[0] == t.one(Level::top));
  CHECK(r2[1] == t.element(Level::top, 6));

  // x^2 - c is rootless for the 24 non-squares c
  int rootless = 0;
  for (int64_t c = 1; c < 49; ++c) {
    Polynomial f{Level::top, {t.neg(t.element(Level::top, c)), t.zero(Level::top),
                              t.one(Level::top)}};
    if (find_roots(t, f).empty()) ++rootless;
  }
  CHECK(rootless == 24);
}

TEST_CASE("evaluation lifts coefficients to the point level") {
  FieldTower t = FieldTower::make(3, 1, 2);
  Polynomial f = poly_from_codes(Level::mid, {1, 2, 1});  // 1 + 2x + x^2
  Element at_alpha = poly_eval(t, f, t.alpha());
  // alpha^2 = -1, so f(alpha) = 1 + 2 alpha - 1 = 2 alpha
  CHECK(at_alpha == t.element(Level::top, 6));
  CHECK(poly_eval(t, f, t.one(Level::mid)) == t.element(Level::mid, 1));
}
