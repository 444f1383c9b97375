#include "althull/linalg.hpp"

#include <algorithm>

namespace althull {

namespace {
void check_same_shape(const Matrix& A, const Matrix& B, const char* who) {
  if (A.level != B.level) throw LevelMismatch(std::string(who) + ": level mismatch");
  if (A.rows != B.rows || A.cols != B.cols)
    throw LengthMismatch(std::string(who) + ": shape mismatch");
}
}  // namespace

Matrix Matrix::from_rows(Level l, const std::vector<Vec>& rows) {
  if (rows.empty()) return Matrix(l, 0, 0);
  Matrix m(l, (int)rows.size(), (int)rows[0].size());
  for (int i = 0; i < m.rows; ++i) {
    if ((int)rows[i].size() != m.cols)
      throw LengthMismatch("Matrix::from_rows: ragged rows");
    m.set_row(i, rows[i]);
  }
  return m;
}

Matrix mat_add(const FieldTower& t, const Matrix& A, const Matrix& B) {
  check_same_shape(A, B, "mat_add");
  Matrix R = A;
  for (size_t i = 0; i < R.a.size(); ++i) R.a[i] = t.add(A.a[i], B.a[i]);
  return R;
}

Matrix mat_sub(const FieldTower& t, const Matrix& A, const Matrix& B) {
  check_same_shape(A, B, "mat_sub");
  Matrix R = A;
  for (size_t i = 0; i < R.a.size(); ++i) R.a[i] = t.sub(A.a[i], B.a[i]);
  return R;
}

Matrix mat_neg(const FieldTower& t, const Matrix& A) {
  Matrix R = A;
  for (auto& e : R.a) e = t.neg(e);
  return R;
}

Matrix mat_mul(const FieldTower& t, const Matrix& A, const Matrix& B) {
  if (A.level != B.level) throw LevelMismatch("mat_mul: level mismatch");
  if (A.cols != B.rows) throw LengthMismatch("mat_mul: inner dimensions differ");
  Matrix R(A.level, A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i) {
    for (int k = 0; k < A.cols; ++k) {
      Element aik = A.at(i, k);
      if (aik.code == 0) continue;
      for (int j = 0; j < B.cols; ++j) {
        Element b = B.at(k, j);
        if (b.code == 0) continue;
        R.at(i, j) = t.add(R.at(i, j), t.mul(aik, b));
      }
    }
  }
  return R;
}

Matrix mat_scale(const FieldTower& t, const Matrix& A, Element c) {
  Matrix R = A;
  for (auto& e : R.a) e = t.mul(e, c);
  return R;
}

Matrix mat_pow(const FieldTower& t, Matrix A, int64_t e) {
  if (A.rows != A.cols) throw LengthMismatch("mat_pow: matrix not square");
  if (e < 0) return mat_pow(t, inverse(t, A), -e);
  Matrix R = Matrix::identity(A.level, A.rows);
  while (e > 0) {
    if (e & 1) R = mat_mul(t, R, A);
    A = mat_mul(t, A, A);
    e >>= 1;
  }
  return R;
}

Matrix transpose(const Matrix& A) {
  Matrix R(A.level, A.cols, A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) R.at(j, i) = A.at(i, j);
  return R;
}

Matrix hstack(const Matrix& A, const Matrix& B) {
  if (A.level != B.level || A.rows != B.rows) throw LengthMismatch("hstack: shape mismatch");
  Matrix R(A.level, A.rows, A.cols + B.cols);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) R.at(i, j) = A.at(i, j);
    for (int j = 0; j < B.cols; ++j) R.at(i, A.cols + j) = B.at(i, j);
  }
  return R;
}

Matrix vstack(const Matrix& A, const Matrix& B) {
  if (A.level != B.level || A.cols != B.cols) throw LengthMismatch("vstack: shape mismatch");
  Matrix R(A.level, A.rows + B.rows, A.cols);
  std::copy(A.a.begin(), A.a.end(), R.a.begin());
  std::copy(B.a.begin(), B.a.end(), R.a.begin() + A.a.size());
  return R;
}

bool mat_is_zero(const Matrix& A) {
  for (const auto& e : A.a)
    if (e.code != 0) return false;
  return true;
}

Vec mat_vec(const FieldTower& t, const Matrix& A, const Vec& v) {
  if ((int)v.size() != A.cols) throw LengthMismatch("mat_vec: length mismatch");
  Vec r(A.rows, t.zero(A.level));
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) {
      if (A.at(i, j).code == 0 || v[j].code == 0) continue;
      r[i] = t.add(r[i], t.mul(A.at(i, j), v[j]));
    }
  return r;
}

Vec vec_mat(const FieldTower& t, const Vec& v, const Matrix& A) {
  if ((int)v.size() != A.rows) throw LengthMismatch("vec_mat: length mismatch");
  Vec r(A.cols, t.zero(A.level));
  for (int i = 0; i < A.rows; ++i) {
    if (v[i].code == 0) continue;
    for (int j = 0; j < A.cols; ++j) {
      if (A.at(i, j).code == 0) continue;
      r[j] = t.add(r[j], t.mul(v[i], A.at(i, j)));
    }
  }
  return r;
}

Vec vec_add(const FieldTower& t, const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw LengthMismatch("vec_add: length mismatch");
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = t.add(a[i], b[i]);
  return r;
}

Vec vec_sub(const FieldTower& t, const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw LengthMismatch("vec_sub: length mismatch");
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = t.sub(a[i], b[i]);
  return r;
}

Vec vec_scale(const FieldTower& t, const Vec& a, Element c) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = t.mul(a[i], c);
  return r;
}

bool vec_is_zero(const Vec& a) {
  for (const auto& e : a)
    if (e.code != 0) return false;
  return true;
}

RrefResult rref(const FieldTower& t, Matrix M) {
  RrefResult res;
  int r = 0;
  for (int c = 0; c < M.cols && r < M.rows; ++c) {
    int piv = -1;
    for (int i = r; i < M.rows; ++i)
      if (M.at(i, c).code != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < M.cols; ++j) std::swap(M.at(piv, j), M.at(r, j));
    Element inv = t.inv(M.at(r, c));
    for (int j = c; j < M.cols; ++j) M.at(r, j) = t.mul(M.at(r, j), inv);
    for (int i = 0; i < M.rows; ++i) {
      if (i == r) continue;
      Element f = M.at(i, c);
      if (f.code == 0) continue;
      for (int j = c; j < M.cols; ++j)
        M.at(i, j) = t.sub(M.at(i, j), t.mul(f, M.at(r, j)));
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  res.R = std::move(M);
  return res;
}

int mat_rank(const FieldTower& t, const Matrix& M) { return rref(t, M).rank; }

Matrix inverse(const FieldTower& t, const Matrix& M) {
  if (M.rows != M.cols) throw LengthMismatch("inverse: matrix not square");
  RrefResult r = rref(t, hstack(M, Matrix::identity(M.level, M.rows)));
  if (r.rank < M.rows) throw NotInvertible("inverse: singular matrix");
  // rank == rows with pivots in the left half forces pivots exactly 0..n-1
  if (!r.pivots.empty() && r.pivots.back() >= M.cols)
    throw NotInvertible("inverse: singular matrix");
  Matrix out(M.level, M.rows, M.cols);
  for (int i = 0; i < M.rows; ++i)
    for (int j = 0; j < M.cols; ++j) out.at(i, j) = r.R.at(i, M.cols + j);
  return out;
}

Subspace Subspace::from_rows(const FieldTower& t, const Matrix& M) {
  RrefResult r = rref(t, M);
  Subspace s;
  s.ambient = M.cols;
  s.pivots = r.pivots;
  s.basis = Matrix(M.level, r.rank, M.cols);
  for (int i = 0; i < r.rank; ++i)
    for (int j = 0; j < M.cols; ++j) s.basis.at(i, j) = r.R.at(i, j);
  return s;
}

bool Subspace::contains(const FieldTower& t, const Vec& v) const {
  if ((int)v.size() != ambient) throw LengthMismatch("Subspace::contains: length mismatch");
  Vec w = v;
  for (int i = 0; i < basis.rows; ++i) {
    Element f = w[pivots[i]];
    if (f.code == 0) continue;
    for (int j = 0; j < ambient; ++j) w[j] = t.sub(w[j], t.mul(f, basis.at(i, j)));
  }
  return vec_is_zero(w);
}

bool Subspace::contains_subspace(const FieldTower& t, const Subspace& other) const {
  for (int i = 0; i < other.basis.rows; ++i)
    if (!contains(t, other.basis.row(i))) return false;
  return true;
}

Subspace right_kernel(const FieldTower& t, const Matrix& M) {
  RrefResult r = rref(t, M);
  std::vector<bool> is_pivot(M.cols, false);
  for (int c : r.pivots) is_pivot[c] = true;
  std::vector<Vec> rows;
  for (int f = 0; f < M.cols; ++f) {
    if (is_pivot[f]) continue;
    Vec v(M.cols, t.zero(M.level));
    v[f] = t.one(M.level);
    for (int i = 0; i < r.rank; ++i) v[r.pivots[i]] = t.neg(r.R.at(i, f));
    rows.push_back(std::move(v));
  }
  if (rows.empty()) {
    Subspace s;
    s.ambient = M.cols;
    s.basis = Matrix(M.level, 0, M.cols);
    return s;
  }
  return Subspace::from_rows(t, Matrix::from_rows(M.level, rows));
}

Subspace left_kernel(const FieldTower& t, const Matrix& M) {
  return right_kernel(t, transpose(M));
}

std::optional<Vec> solve(const FieldTower& t, const Matrix& M, const Vec& b) {
  if ((int)b.size() != M.rows) throw LengthMismatch("solve: length mismatch");
  Matrix aug(M.level, M.rows, M.cols + 1);
  for (int i = 0; i < M.rows; ++i) {
    for (int j = 0; j < M.cols; ++j) aug.at(i, j) = M.at(i, j);
    aug.at(i, M.cols) = b[i];
  }
  RrefResult r = rref(t, aug);
  for (int c : r.pivots)
    if (c == M.cols) return std::nullopt;
  Vec x(M.cols, t.zero(M.level));
  for (int i = 0; i < r.rank; ++i) x[r.pivots[i]] = r.R.at(i, M.cols);
  return x;
}

bool EchelonTracker::add(Vec v) {
  if ((int)v.size() != cols_) throw LengthMismatch("EchelonTracker::add: length mismatch");
  for (size_t i = 0; i < rows_.size(); ++i) {
    Element f = v[pivots_[i]];
    if (f.code == 0) continue;
    const Vec& row = rows_[i];
    for (int j = pivots_[i]; j < cols_; ++j)
      if (row[j].code != 0) v[j] = t_->sub(v[j], t_->mul(f, row[j]));
  }
  int p = -1;
  for (int j = 0; j < cols_; ++j)
    if (v[j].code != 0) { p = j; break; }
  if (p < 0) return false;
  Element inv = t_->inv(v[p]);
  for (int j = p; j < cols_; ++j) v[j] = t_->mul(v[j], inv);
  rows_.push_back(std::move(v));
  pivots_.push_back(p);
  return true;
}

bool EchelonTracker::contains(Vec v) const {
  for (size_t i = 0; i < rows_.size(); ++i) {
    Element f = v[pivots_[i]];
    if (f.code == 0) continue;
    const Vec& row = rows_[i];
    for (int j = pivots_[i]; j < cols_; ++j)
      if (row[j].code != 0) v[j] = t_->sub(v[j], t_->mul(f, row[j]));
  }
  return vec_is_zero(v);
}

Matrix EchelonTracker::row_basis() const {
  Matrix m(level_, (int)rows_.size(), cols_);
  for (size_t i = 0; i < rows_.size(); ++i) m.set_row((int)i, rows_[i]);
  return m;
}

namespace {
// relation of the Krylov sequence v, Av, A^2 v, ...: the monic polynomial g
// of least degree with g(A) v = 0
Polynomial krylov_relation(const FieldTower& t, const Matrix& A, const Vec& v) {
  Level L = A.level;
  int n = A.rows;
  std::vector<Vec> red_rows;         // reduced Krylov vectors
  std::vector<int> red_pivots;
  std::vector<std::vector<Element>> combos;  // combos[i][k]: coeff of A^k v
  Vec w = v;
  for (int k = 0; k <= n; ++k) {
    Vec u = w;
    std::vector<Element> combo(k + 1, t.zero(L));
    combo[k] = t.one(L);
    for (size_t i = 0; i < red_rows.size(); ++i) {
      Element f = u[red_pivots[i]];
      if (f.code == 0) continue;
      for (int j = 0; j < n; ++j) u[j] = t.sub(u[j], t.mul(f, red_rows[i][j]));
      for (size_t c = 0; c < combos[i].size(); ++c)
        combo[c] = t.sub(combo[c], t.mul(f, combos[i][c]));
    }
    int p = -1;
    for (int j = 0; j < n; ++j)
      if (u[j].code != 0) { p = j; break; }
    if (p < 0) {
      Polynomial g;
      g.level = L;
      g.c = combo;  // monic of degree k by construction
      return g;
    }
    Element inv = t.inv(u[p]);
    for (int j = 0; j < n; ++j) u[j] = t.mul(u[j], inv);
    for (auto& c : combo) c = t.mul(c, inv);
    red_rows.push_back(std::move(u));
    red_pivots.push_back(p);
    combos.push_back(std::move(combo));
    w = mat_vec(t, A, w);
  }
  throw Error("krylov_relation: no relation found (impossible)");
}
}  // namespace

Polynomial minimal_polynomial(const FieldTower& t, const Matrix& A, Rng& rng) {
  if (A.rows != A.cols) throw LengthMismatch("minimal_polynomial: matrix not square");
  Level L = A.level;
  int n = A.rows;
  if (n == 0) return poly_one(L);
  Polynomial f = poly_one(L);
  auto absorbed = [&](const Vec& v) {
    Polynomial g = krylov_relation(t, A, v);
    f = poly_lcm(t, f, g);
    return poly_deg(f) == n || mat_is_zero(poly_eval_matrix(t, f, A));
  };
  for (int tries = 0; tries < 3; ++tries) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = t.random_element(L, rng);
    if (vec_is_zero(v)) v[0] = t.one(L);
    if (absorbed(v)) return poly_monic(t, f);
  }
  // deterministic fallback: the lcm over all standard basis vectors is the
  // minimal polynomial
  for (int i = 0; i < n; ++i) {
    Vec v(n, t.zero(L));
    v[i] = t.one(L);
    if (absorbed(v)) return poly_monic(t, f);
  }
  if (!mat_is_zero(poly_eval_matrix(t, f, A)))
    throw Error("minimal_polynomial: substitution check failed");
  return poly_monic(t, f);
}

Matrix companion(const FieldTower& t, const Polynomial& f) {
  int d = poly_deg(f);
  if (d < 1) throw ParamError("companion: degree must be >= 1");
  if (!(f.c[d] == t.one(f.level))) throw ParamError("companion: polynomial not monic");
  Matrix C(f.level, d, d);
  for (int i = 0; i + 1 < d; ++i) C.at(i + 1, i) = t.one(f.level);
  for (int i = 0; i < d; ++i) C.at(i, d - 1) = t.neg(f.c[i]);
  return C;
}

Matrix block_diag(const Matrix& J, int copies) {
  if (copies < 1) throw ParamError("block_diag: need at least one copy");
  Matrix R(J.level, J.rows * copies, J.cols * copies);
  for (int b = 0; b < copies; ++b)
    for (int i = 0; i < J.rows; ++i)
      for (int j = 0; j < J.cols; ++j)
        R.at(b * J.rows + i, b * J.cols + j) = J.at(i, j);
  return R;
}

namespace {
// columns [v | Av | ... | A^{d-1}v | v' | ...] over standard basis seeds;
// valid because the space is a free module over the field F_q[A]
Matrix cyclic_basis(const FieldTower& t, const Matrix& A, int d) {
  int n = A.rows;
  EchelonTracker span(t, A.level, n);
  Matrix K(A.level, n, n);
  int filled = 0;
  for (int seed = 0; seed < n && filled < n; ++seed) {
    Vec e(n, t.zero(A.level));
    e[seed] = t.one(A.level);
    if (span.contains(e)) continue;
    Vec w = e;
    for (int i = 0; i < d; ++i) {
      if (!span.add(w))
        throw Error("cyclic_basis: dependent block (minimal polynomial not irreducible?)");
      for (int rw = 0; rw < n; ++rw) K.at(rw, filled) = w[rw];
      ++filled;
      if (i + 1 < d) w = mat_vec(t, A, w);
    }
  }
  if (filled != n) throw Error("cyclic_basis: span not filled");
  return K;
}
}  // namespace

Matrix similarity_transform(const FieldTower& t, const Matrix& A, const Matrix& B) {
  if (A.rows != A.cols || B.rows != B.cols)
    throw LengthMismatch("similarity_transform: matrices not square");
  if (A.level != B.level) throw LevelMismatch("similarity_transform: level mismatch");
  Rng rng(0x5eed);
  Polynomial fa = minimal_polynomial(t, A, rng);
  Polynomial fb = minimal_polynomial(t, B, rng);
  if (A.rows != B.rows || !(fa == fb))
    throw NotSimilar("similarity_transform: sizes or minimal polynomials differ");
  if (!poly_is_irreducible(t, fa))
    throw ParamError("similarity_transform: minimal polynomial not irreducible");
  int d = poly_deg(fa);
  if (A.rows % d != 0)
    throw NotSimilar("similarity_transform: degree does not divide the size");
  Matrix KA = cyclic_basis(t, A, d);
  Matrix KB = cyclic_basis(t, B, d);
  Matrix Q = mat_mul(t, KB, inverse(t, KA));
  if (!(mat_mul(t, B, Q) == mat_mul(t, Q, A)))
    throw Error("similarity_transform: verification failed");
  return Q;
}

Matrix poly_eval_matrix(const FieldTower& t, const Polynomial& f, const Matrix& A) {
  if (A.rows != A.cols) throw LengthMismatch("poly_eval_matrix: matrix not square");
  if (f.level != A.level) throw LevelMismatch("poly_eval_matrix: level mismatch");
  Matrix acc(A.level, A.rows, A.rows);
  for (int i = poly_deg(f); i >= 0; --i) {
    acc = mat_mul(t, acc, A);
    if (f.c[i].code != 0)
      for (int d = 0; d < A.rows; ++d) acc.at(d, d) = t.add(acc.at(d, d), f.c[i]);
  }
  return acc;
}

Matrix psi_expand_matrix(const FieldTower& t, const Matrix& M) {
  if (M.level != Level::top) throw LevelMismatch("psi_expand_matrix: need top-level matrix");
  int m = t.m();
  Matrix R(Level::mid, M.rows * m, M.cols);
  for (int i = 0; i < M.rows; ++i)
    for (int j = 0; j < M.cols; ++j) {
      auto cs = t.psi_expand(M.at(i, j));
      for (int l = 0; l < m; ++l) R.at(i * m + l, j) = cs[l];
    }
  return R;
}

Matrix psi_contract_matrix(const FieldTower& t, const Matrix& M) {
  if (M.level != Level::mid) throw LevelMismatch("psi_contract_matrix: need mid-level matrix");
  int m = t.m();
  if (M.rows % m != 0) throw BadLength("psi_contract_matrix: rows not a multiple of m");
  Matrix R(Level::top, M.rows / m, M.cols);
  for (int i = 0; i < R.rows; ++i)
    for (int j = 0; j < M.cols; ++j) {
      std::vector<Element> cs(m);
      for (int l = 0; l < m; ++l) cs[l] = M.at(i * m + l, j);
      R.at(i, j) = t.psi_contract(cs);
    }
  return R;
}

}  // namespace althull
