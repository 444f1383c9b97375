#include <doctest.h>

#include <algorithm>

#include "althull/codes.hpp"

using namespace althull;

namespace {

Vec elems(const FieldTower& t, Level l, std::initializer_list<int64_t> codes) {
  Vec v;
  for (int64_t c : codes) v.push_back(t.element(l, c));
  return v;
}

// independent syndrome check: sum_i c_i y_i x_i^l = 0 for l < r
bool grs_dual_member(const FieldTower& t, const Vec& x, const Vec& y, int r,
                     const Vec& c) {
  for (int l = 0; l < r; ++l) {
    Element acc = t.zero(Level::top);
    for (size_t i = 0; i < x.size(); ++i) {
      Element ci = c[i].level == Level::top ? c[i] : t.lift(c[i], Level::top);
      acc = t.add(acc, t.mul(ci, t.mul(y[i], t.pow(x[i], l))));
    }
    if (acc.code != 0) return false;
  }
  return true;
}

int hamming_distance(const Vec& a, const Vec& b) {
  int d = 0;
  for (size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) ++d;
  return d;
}

}  // namespace

TEST_CASE("componentwise product") {
  FieldTower t = FieldTower::make(7, 1, 1);
  Level l = Level::mid;
  CHECK(star(t, elems(t, l, {1, 2, 3}), elems(t, l, {4, 5, 6})) ==
        elems(t, l, {4, 3, 4}));
  CHECK_THROWS_AS(star(t, elems(t, l, {1}), elems(t, l, {1, 2})), LengthMismatch);
}

TEST_CASE("evaluation matrix with a zero support point") {
  FieldTower t = FieldTower::make(5, 1, 1);
  Level l = Level::mid;
  Matrix V = vandermonde(t, elems(t, l, {0, 1, 2}), elems(t, l, {1, 1, 1}), 2);
  CHECK(V == Matrix::from_rows(l, {elems(t, l, {1, 1, 1}), elems(t, l, {0, 1, 2})}));
  Matrix W = vandermonde(t, elems(t, l, {0, 1, 2}), elems(t, l, {2, 3, 4}), 3);
  CHECK(W.row(0) == elems(t, l, {2, 3, 4}));
  CHECK(W.row(1) == elems(t, l, {0, 3, 3}));
  CHECK(W.row(2) == elems(t, l, {0, 3, 1}));
}

TEST_CASE("GRS data validation rejects degenerate inputs") {
  FieldTower t = FieldTower::make(7, 1, 2);
  Rng rng(2);
  GrsSpec s;
  s.r = 3;
  for (int64_t c : {0, 1, 2, 3, 4, 5}) s.x.push_back(t.element(Level::top, c));
  for (int i = 0; i < 6; ++i) s.y.push_back(t.one(Level::top));
  validate_grs(t, s);
  GrsSpec rep = s;
  rep.x[5] = rep.x[0];
  CHECK_THROWS_AS(validate_grs(t, rep), ParamError);
  GrsSpec zy = s;
  zy.y[2] = t.zero(Level::top);
  CHECK_THROWS_AS(validate_grs(t, zy), ParamError);
  GrsSpec big = s;
  big.r = 7;  // exceeds the length
  CHECK_THROWS_AS(validate_grs(t, big), ParamError);
  GrsSpec lvl = s;
  lvl.x[0] = t.zero(Level::mid);
  CHECK_THROWS_AS(validate_grs(t, lvl), ParamError);
}

TEST_CASE("dual multiplier is an involution and gives the dual code") {
  FieldTower t = FieldTower::make(13, 1, 1);
  Rng rng(3);
  Vec x = elems(t, Level::mid, {0, 1, 3, 5, 7, 11, 12});
  Vec y;
  for (int i = 0; i < 7; ++i) y.push_back(t.random_nonzero(Level::mid, rng));
  Vec yd = dual_multiplier(t, x, y);
  CHECK(dual_multiplier(t, x, yd) == y);
  int r = 3;
  Matrix G = vandermonde(t, x, y, r);
  Matrix Gd = vandermonde(t, x, yd, 7 - r);
  CHECK(mat_is_zero(mat_mul(t, G, transpose(Gd))));
}

TEST_CASE("generator canonicalization and row space comparison") {
  FieldTower t = FieldTower::make(3, 1, 2);
  Rng rng(4);
  Matrix G(Level::top, 3, 6);
  for (auto& e : G.a) e = t.random_element(Level::top, rng);
  while (mat_rank(t, G) != 3)
    for (auto& e : G.a) e = t.random_element(Level::top, rng);
  LinearCode c = LinearCode::from_generator(t, G);
  CHECK(c.k() == 3);
  CHECK(c.n() == 6);
  // scramble rows: same code
  Matrix G2 = Matrix::from_rows(
      Level::top,
      {vec_add(t, G.row(0), G.row(1)), G.row(2),
       vec_add(t, G.row(1), vec_scale(t, G.row(2), t.alpha()))});
  CHECK(LinearCode::from_generator(t, G2) == c);
  CHECK(rowspace_equal(t, G, G2));
  G2.at(0, 0) = t.add(G2.at(0, 0), t.one(Level::top));
  bool same = rowspace_equal(t, G, G2);
  CHECK((same || LinearCode::from_generator(t, G2).k() == 3));
}

TEST_CASE("square dimension separates evaluation codes from random ones") {
  FieldTower t = FieldTower::make(13, 1, 1);
  Level l = Level::mid;
  Vec x = elems(t, l, {0, 1, 2, 3, 4, 5, 6});
  Vec y = elems(t, l, {1, 1, 1, 1, 1, 1, 1});
  Matrix G = vandermonde(t, x, y, 3);
  CHECK(square_dim(t, G) == 5);  // 2r - 1
  // a random 3 x 6 code almost surely fills binom(4, 2) = 6 = n
  Rng rng(11);
  int filled = 0;
  for (int trial = 0; trial < 5; ++trial) {
    Matrix R(l, 3, 6);
    for (auto& e : R.a) e = t.random_element(l, rng);
    if (mat_rank(t, R) == 3 && square_dim(t, R) == 6) ++filled;
  }
  CHECK(filled >= 4);
  // the product span is generated by pairwise star products of the rows
  Matrix S = star_basis(t, G, G);
  CHECK(S.rows == 5);
  Subspace sp = Subspace::from_rows(t, S);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(sp.contains(t, star(t, G.row(i), G.row(j))));
}

TEST_CASE("dual code dimensions and double dual") {
  FieldTower t = FieldTower::make(5, 1, 2);
  Rng rng(8);
  Matrix G(Level::top, 2, 6);
  for (auto& e : G.a) e = t.random_element(Level::top, rng);
  while (mat_rank(t, G) != 2)
    for (auto& e : G.a) e = t.random_element(Level::top, rng);
  LinearCode c = LinearCode::from_generator(t, G);
  LinearCode d = dual(t, c);
  CHECK(d.k() == 4);
  CHECK(mat_is_zero(mat_mul(t, c.gen, transpose(d.gen))));
  CHECK(dual(t, d) == c);
}

TEST_CASE("trace code contains all componentwise traces") {
  FieldTower t = FieldTower::make(3, 1, 2);
  Rng rng(21);
  Matrix G(Level::top, 2, 5);
  for (auto& e : G.a) e = t.random_element(Level::top, rng);
  while (mat_rank(t, G) != 2)
    for (auto& e : G.a) e = t.random_element(Level::top, rng);
  LinearCode c = LinearCode::from_generator(t, G);
  LinearCode tc = trace_code(t, c);
  CHECK(tc.gen.level == Level::mid);
  CHECK(tc.n() == 5);
  Subspace span = Subspace::from_rows(t, tc.gen);
  for (int trial = 0; trial < 30; ++trial) {
    // random codeword, then its componentwise trace
    Vec cw = vec_add(t, vec_scale(t, G.row(0), t.random_element(Level::top, rng)),
                     vec_scale(t, G.row(1), t.random_element(Level::top, rng)));
    Vec tr(5);
    for (int i = 0; i < 5; ++i) tr[i] = t.trace(cw[i]);
    CHECK(span.contains(t, tr));
  }
}

TEST_CASE("parity expansion matches the coordinate map") {
  FieldTower t = FieldTower::make(7, 1, 2);
  Rng rng(31);
  Vec x, y;
  for (int64_t c : {0, 1, 5, 12, 30}) x.push_back(t.element(Level::top, c));
  for (int i = 0; i < 5; ++i) y.push_back(t.random_nonzero(Level::top, rng));
  Matrix H = alternant_parity(t, x, y, 2);
  CHECK(H.rows == 4);
  CHECK(H.cols == 5);
  CHECK(H == psi_expand_matrix(t, vandermonde(t, x, y, 2)));
}

TEST_CASE("alternant keygen is deterministic and well formed") {
  FieldTower t = FieldTower::make(7, 1, 2);
  AlternantInstance a = keygen_alternant(t, 4, 35, 99);
  AlternantInstance b = keygen_alternant(t, 4, 35, 99);
  CHECK(a.x == b.x);
  CHECK(a.y == b.y);
  CHECK(a.P == b.P);
  CHECK(a.H_pub == b.H_pub);
  AlternantInstance c = keygen_alternant(t, 4, 35, 100);
  CHECK_FALSE(a.x == c.x);

  CHECK(a.params.kind == InstanceKind::alternant);
  CHECK_FALSE(a.gamma.has_value());
  // distinct support, nonzero multiplier
  Vec xs = a.x;
  std::sort(xs.begin(), xs.end(),
            [](const Element& u, const Element& v) { return u.code < v.code; });
  CHECK(std::adjacent_find(xs.begin(), xs.end()) == xs.end());
  for (const Element& e : a.y) CHECK(e.code != 0);
  CHECK(mat_rank(t, a.H_sec) == 8);
  CHECK(a.H_pub == mat_mul(t, a.P, a.H_sec));
  CHECK(mat_rank(t, a.P) == 8);

  // public code words satisfy the secret syndrome conditions
  Subspace code = right_kernel(t, a.H_pub);
  CHECK(code.dim() == 35 - 8);
  for (int i = 0; i < 5; ++i)
    CHECK(grs_dual_member(t, a.x, a.y, 4, code.basis.row(i)));
}

TEST_CASE("keygen parameter guards") {
  FieldTower t = FieldTower::make(7, 1, 2);
  CHECK_THROWS_AS(keygen_alternant(t, 1, 35, 0), ParamError);
  CHECK_THROWS_AS(keygen_alternant(t, 4, 8, 0), ParamError);   // rm >= n
  CHECK_THROWS_AS(keygen_alternant(t, 4, 50, 0), ParamError);  // n > q^m
  CHECK_THROWS_AS(keygen_goppa(t, 1, 35, 0), ParamError);
}

TEST_CASE("goppa keygen ties the multiplier to the polynomial") {
  FieldTower t = FieldTower::make(7, 1, 2);
  AlternantInstance g = keygen_goppa(t, 4, 35, 7);
  CHECK(g.params.kind == InstanceKind::goppa);
  REQUIRE(g.gamma.has_value());
  CHECK(poly_deg(*g.gamma) == 4);
  CHECK(poly_is_irreducible(t, *g.gamma));
  CHECK(g.gamma->c.back() == t.one(Level::top));
  for (size_t i = 0; i < g.x.size(); ++i)
    CHECK(g.y[i] == t.inv(poly_eval(t, *g.gamma, g.x[i])));
  CHECK(mat_rank(t, g.H_pub) == 8);
  CHECK(keygen_goppa(t, 4, 35, 7).H_pub == g.H_pub);
}

TEST_CASE("decoder corrects planted errors on the public code") {
  FieldTower t = FieldTower::make(7, 1, 2);
  AlternantInstance inst = keygen_alternant(t, 4, 35, 5);
  Subspace code = right_kernel(t, inst.H_pub);
  Rng rng(55);
  int n = 35, tcap = 2;  // floor(r/2)
  for (int trial = 0; trial < 60; ++trial) {
    // random codeword
    Vec cw(n, t.zero(Level::mid));
    for (int i = 0; i < code.basis.rows; ++i)
      cw = vec_add(t, cw, vec_scale(t, code.basis.row(i),
                                    t.random_element(Level::mid, rng)));
    Vec rcv = cw;
    int werr = trial % (tcap + 1);
    std::vector<int> pos;
    while ((int)pos.size() < werr) {
      int p = (int)rng.below(n);
      if (std::find(pos.begin(), pos.end(), p) == pos.end()) pos.push_back(p);
    }
    for (int p : pos) rcv[p] = t.add(rcv[p], t.random_nonzero(Level::mid, rng));
    auto out = decode(t, inst.x, inst.y, 4, rcv);
    REQUIRE(out.has_value());
    CHECK(*out == cw);
  }
}

TEST_CASE("decoder never returns a word outside the radius") {
  FieldTower t = FieldTower::make(7, 1, 2);
  AlternantInstance inst = keygen_alternant(t, 4, 35, 6);
  Subspace code = right_kernel(t, inst.H_pub);
  Rng rng(77);
  int n = 35;
  int silent_wrong = 0, returned = 0;
  for (int trial = 0; trial < 40; ++trial) {
    Vec cw(n, t.zero(Level::mid));
    for (int i = 0; i < code.basis.rows; ++i)
      cw = vec_add(t, cw, vec_scale(t, code.basis.row(i),
                                    t.random_element(Level::mid, rng)));
    Vec rcv = cw;
    // plant r+1 = 5 errors, beyond any correct decoding radius
    std::vector<int> pos;
    while ((int)pos.size() < 5) {
      int p = (int)rng.below(n);
      if (std::find(pos.begin(), pos.end(), p) == pos.end()) pos.push_back(p);
    }
    for (int p : pos) rcv[p] = t.add(rcv[p], t.random_nonzero(Level::mid, rng));
    auto out = decode(t, inst.x, inst.y, 4, rcv);
    if (out) {
      ++returned;
      // any returned word must be a codeword within the radius
      if (hamming_distance(*out, rcv) > 2) ++silent_wrong;
      Vec synd = mat_vec(t, inst.H_pub, *out);
      if (!vec_is_zero(synd)) ++silent_wrong;
    }
  }
  CHECK(silent_wrong == 0);
}

TEST_CASE("decoder handles a support containing zero") {
  FieldTower t = FieldTower::make(5, 1, 2);
  Level l = Level::top;
  Vec x = elems(t, l, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
  Rng rng(91);
  Vec y;
  for (int i = 0; i < 11; ++i) y.push_back(t.random_nonzero(l, rng));
  Matrix H = alternant_parity(t, x, y, 4);
  REQUIRE(mat_rank(t, H) == 8);
  Subspace code = right_kernel(t, H);
  for (int trial = 0; trial < 20; ++trial) {
    Vec cw(11, t.zero(Level::mid));
    for (int i = 0; i < code.basis.rows; ++i)
      cw = vec_add(t, cw, vec_scale(t, code.basis.row(i),
                                    t.random_element(Level::mid, rng)));
    Vec rcv = cw;
    // error at position 0 (the zero support point) and one other
    rcv[0] = t.add(rcv[0], t.random_nonzero(Level::mid, rng));
    int p = 1 + (int)rng.below(10);
    rcv[p] = t.add(rcv[p], t.random_nonzero(Level::mid, rng));
    auto out = decode(t, x, y, 4, rcv);
    REQUIRE(out.has_value());
    CHECK(*out == cw);
  }
}
