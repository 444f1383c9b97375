#include "althull/codes.hpp"

#include <algorithm>
#include <numeric>

namespace althull {

Vec star(const FieldTower& t, const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw LengthMismatch("star: length mismatch");
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = t.mul(a[i], b[i]);
  return r;
}

Matrix vandermonde(const FieldTower& t, const Vec& x, const Vec& y, int r) {
  if (x.size() != y.size()) throw LengthMismatch("vandermonde: length mismatch");
  if (r < 1) throw ParamError("vandermonde: r must be >= 1");
  if (x.empty()) throw ParamError("vandermonde: empty support");
  int n = (int)x.size();
  Matrix V(x[0].level, r, n);
  V.set_row(0, y);
  for (int i = 1; i < r; ++i)
    for (int j = 0; j < n; ++j) V.at(i, j) = t.mul(V.at(i - 1, j), x[j]);
  return V;
}

void validate_grs(const FieldTower& t, const GrsSpec& s) {
  int n = (int)s.x.size();
  if ((int)s.y.size() != n) throw ParamError("grs: support and multiplier lengths differ");
  if (n < 1) throw ParamError("grs: empty support");
  if (s.r < 1 || s.r > n) throw ParamError("grs: r out of range");
  std::vector<int32_t> codes;
  for (const auto& e : s.x) {
    if (e.level != Level::top) throw ParamError("grs: support must be top level");
    codes.push_back(e.code);
  }
  std::sort(codes.begin(), codes.end());
  if (std::adjacent_find(codes.begin(), codes.end()) != codes.end())
    throw ParamError("grs: repeated support point");
  for (const auto& e : s.y) {
    if (e.level != Level::top) throw ParamError("grs: multiplier must be top level");
    if (e.code == 0) throw ParamError("grs: zero multiplier");
  }
  (void)t;
}

Vec dual_multiplier(const FieldTower& t, const Vec& x, const Vec& y) {
  int n = (int)x.size();
  if ((int)y.size() != n) throw LengthMismatch("dual_multiplier: length mismatch");
  if (n < 2) throw ParamError("dual_multiplier: need n >= 2");
  Vec out(n);
  for (int i = 0; i < n; ++i) {
    Element prod = y[i];
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      prod = t.mul(prod, t.sub(x[i], x[j]));
    }
    out[i] = t.inv(prod);
  }
  return out;
}

LinearCode LinearCode::from_generator(const FieldTower& t, const Matrix& g) {
  RrefResult r = rref(t, g);
  LinearCode c;
  c.gen = Matrix(g.level, r.rank, g.cols);
  for (int i = 0; i < r.rank; ++i) c.gen.set_row(i, r.R.row(i));
  return c;
}

bool rowspace_equal(const FieldTower& t, const Matrix& A, const Matrix& B) {
  if (A.level != B.level || A.cols != B.cols) return false;
  return LinearCode::from_generator(t, A) == LinearCode::from_generator(t, B);
}

Matrix star_basis(const FieldTower& t, const Matrix& A, const Matrix& B) {
  if (A.level != B.level || A.cols != B.cols)
    throw LengthMismatch("star_basis: shape mismatch");
  std::vector<Vec> rows;
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < B.rows; ++j) rows.push_back(star(t, A.row(i), B.row(j)));
  if (rows.empty()) return Matrix(A.level, 0, A.cols);
  return LinearCode::from_generator(t, Matrix::from_rows(A.level, rows)).gen;
}

int square_dim(const FieldTower& t, const Matrix& G) {
  return star_basis(t, G, G).rows;
}

LinearCode dual(const FieldTower& t, const LinearCode& c) {
  Subspace k = right_kernel(t, c.gen);
  LinearCode d;
  d.gen = k.basis;
  return d;
}

LinearCode trace_code(const FieldTower& t, const LinearCode& c) {
  if (c.gen.level != Level::top) throw LevelMismatch("trace_code: need a top-level code");
  return LinearCode::from_generator(t, psi_expand_matrix(t, c.gen));
}

Matrix alternant_parity(const FieldTower& t, const Vec& x, const Vec& y, int r) {
  return psi_expand_matrix(t, vandermonde(t, x, y, r));
}

namespace {

Vec sample_distinct_support(const FieldTower& t, int n, Rng& rng) {
  int64_t Q = t.top_size();
  std::vector<int32_t> pool(Q);
  std::iota(pool.begin(), pool.end(), 0);
  Vec x(n);
  for (int i = 0; i < n; ++i) {
    int64_t j = i + (int64_t)rng.below(Q - i);
    std::swap(pool[i], pool[j]);
    x[i] = t.element(Level::top, pool[i]);
  }
  return x;
}

Matrix random_invertible(const FieldTower& t, int d, Rng& rng) {
  for (int tries = 0; tries < 10000; ++tries) {
    Matrix P(Level::mid, d, d);
    for (auto& e : P.a) e = t.random_element(Level::mid, rng);
    if (mat_rank(t, P) == d) return P;
  }
  throw Error("random_invertible: retry cap exceeded");
}

void check_keygen_params(const FieldTower& t, int r, int n) {
  if (r < 2) throw ParamError("keygen: r must be >= 2");
  if ((int64_t)r * t.m() >= n) throw ParamError("keygen: need r*m < n");
  if (n > t.top_size()) throw ParamError("keygen: support longer than the field");
}

constexpr int kProperRetryCap = 256;

}  // namespace

AlternantInstance keygen_alternant(const FieldTower& t, int r, int n, uint64_t seed) {
  check_keygen_params(t, r, n);
  Rng rng(seed);
  int rm = r * t.m();
  AlternantInstance inst;
  inst.params = {t.q(), t.m(), r, n, seed, InstanceKind::alternant};
  bool proper = false;
  for (int attempt = 0; attempt < kProperRetryCap && !proper; ++attempt) {
    inst.x = sample_distinct_support(t, n, rng);
    inst.y.resize(n);
    for (auto& e : inst.y) e = t.random_nonzero(Level::top, rng);
    inst.H_sec = alternant_parity(t, inst.x, inst.y, r);
    proper = mat_rank(t, inst.H_sec) == rm;
  }
  if (!proper) throw Error("keygen_alternant: no proper instance within the retry cap");
  inst.P = random_invertible(t, rm, rng);
  inst.H_pub = mat_mul(t, inst.P, inst.H_sec);
  return inst;
}

AlternantInstance keygen_goppa(const FieldTower& t, int r, int n, uint64_t seed) {
  check_keygen_params(t, r, n);
  Rng rng(seed);
  int rm = r * t.m();
  AlternantInstance inst;
  inst.params = {t.q(), t.m(), r, n, seed, InstanceKind::goppa};
  bool proper = false;
  for (int attempt = 0; attempt < kProperRetryCap && !proper; ++attempt) {
    Polynomial g;
    g.level = Level::top;
    for (int draws = 0;; ++draws) {
      if (draws >= 4096) throw Error("keygen_goppa: no irreducible polynomial found");
      g.c.assign(r + 1, t.zero(Level::top));
      g.c[r] = t.one(Level::top);
      for (int i = 0; i < r; ++i) g.c[i] = t.random_element(Level::top, rng);
      if (poly_is_irreducible(t, g)) break;
    }
    inst.gamma = g;
    inst.x = sample_distinct_support(t, n, rng);
    inst.y.resize(n);
    for (int i = 0; i < n; ++i) inst.y[i] = t.inv(poly_eval(t, g, inst.x[i]));
    inst.H_sec = alternant_parity(t, inst.x, inst.y, r);
    proper = mat_rank(t, inst.H_sec) == rm;
  }
  if (!proper) throw Error("keygen_goppa: no proper instance within the retry cap");
  inst.P = random_invertible(t, rm, rng);
  inst.H_pub = mat_mul(t, inst.P, inst.H_sec);
  return inst;
}

namespace {

// one locator attempt: find roots, solve for error values, and run the full
// gate chain; any failure returns nullopt
std::optional<Vec> try_locator(const FieldTower& t, const Vec& x, const Vec& y, int r,
                               const Vec& lifted, const Vec& received, const Vec& S,
                               const Vec& lambda) {
  int n = (int)x.size();
  Polynomial L;
  L.level = Level::top;
  L.c.push_back(t.one(Level::top));
  for (const auto& e : lambda) L.c.push_back(e);
  L = poly_trim(std::move(L));

  std::vector<int> cands;
  for (int i = 0; i < n; ++i) {
    if (x[i].code == 0) {
      // the locator is blind to a support zero; always treat it as a
      // candidate and let the value solve decide
      cands.push_back(i);
    } else if (poly_eval(t, L, t.inv(x[i])).code == 0) {
      cands.push_back(i);
    }
  }
  if (cands.empty() || (int)cands.size() > r) return std::nullopt;

  Matrix A(Level::top, r, (int)cands.size());
  for (int c = 0; c < (int)cands.size(); ++c) {
    Element pw = y[cands[c]];
    for (int l = 0; l < r; ++l) {
      A.at(l, c) = pw;
      pw = t.mul(pw, x[cands[c]]);
    }
  }
  auto e = solve(t, A, S);
  if (!e) return std::nullopt;
  if (!(mat_vec(t, A, *e) == S)) return std::nullopt;

  int weight = 0;
  for (const auto& v : *e)
    if (v.code != 0) ++weight;
  if (2 * weight > r) return std::nullopt;

  Vec corrected = lifted;
  for (int c = 0; c < (int)cands.size(); ++c)
    corrected[cands[c]] = t.sub(corrected[cands[c]], (*e)[c]);

  Vec out(n);
  for (int i = 0; i < n; ++i) {
    if (!t.in_subfield(corrected[i])) return std::nullopt;
    out[i] = t.project_mid(corrected[i]);
  }
  // final parity gate: all syndromes of the corrected word vanish
  Vec pw(n);
  for (int i = 0; i < n; ++i) pw[i] = t.one(Level::top);
  for (int l = 0; l < r; ++l) {
    Element s = t.zero(Level::top);
    for (int i = 0; i < n; ++i) {
      s = t.add(s, t.mul(t.mul(corrected[i], y[i]), pw[i]));
      pw[i] = t.mul(pw[i], x[i]);
    }
    if (s.code != 0) return std::nullopt;
  }
  (void)received;
  return out;
}

}  // namespace

std::optional<Vec> decode(const FieldTower& t, const Vec& x, const Vec& y, int r,
                          const Vec& received) {
  int n = (int)x.size();
  if ((int)y.size() != n || (int)received.size() != n)
    throw LengthMismatch("decode: length mismatch");
  if (r < 1) throw ParamError("decode: r must be >= 1");
  for (const auto& e : received)
    if (e.level != Level::mid) throw LevelMismatch("decode: received word must be subfield level");

  Vec lifted(n);
  for (int i = 0; i < n; ++i) lifted[i] = t.lift(received[i], Level::top);

  Vec S(r, t.zero(Level::top));
  {
    Vec pw(n, t.one(Level::top));
    for (int l = 0; l < r; ++l) {
      for (int i = 0; i < n; ++i) {
        S[l] = t.add(S[l], t.mul(t.mul(lifted[i], y[i]), pw[i]));
        pw[i] = t.mul(pw[i], x[i]);
      }
    }
  }
  if (vec_is_zero(S)) return received;

  int tc = r / 2;
  if (tc == 0) return std::nullopt;

  // key equation on the locator coefficients: the coefficients of the product
  // of locator and syndrome series vanish in degrees tc..r-1
  Matrix M(Level::top, r - tc, tc);
  Vec b(r - tc);
  for (int l = tc; l < r; ++l) {
    for (int d = 1; d <= tc; ++d) M.at(l - tc, d - 1) = S[l - d];
    b[l - tc] = t.neg(S[l]);
  }
  auto part = solve(t, M, b);
  if (!part) return std::nullopt;
  Subspace ker = right_kernel(t, M);
  int kd = ker.dim();

  int64_t Q = t.top_size();
  int64_t total = 1;
  for (int i = 0; i < kd; ++i) {
    total *= Q;
    if (total > 4096) return std::nullopt;  // solution coset too large to sweep
  }

  std::vector<int64_t> digits(kd, 0);
  for (int64_t combo = 0; combo < total; ++combo) {
    Vec lambda = *part;
    for (int i = 0; i < kd; ++i) {
      if (digits[i] == 0) continue;
      Element c = t.element(Level::top, digits[i]);
      lambda = vec_add(t, lambda, vec_scale(t, ker.basis.row(i), c));
    }
    auto res = try_locator(t, x, y, r, lifted, received, S, lambda);
    if (res) return res;
    for (int i = 0; i < kd; ++i) {
      if (++digits[i] < Q) break;
      digits[i] = 0;
    }
  }
  return std::nullopt;
}

}  // namespace althull
