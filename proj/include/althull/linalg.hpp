#pragma once

#include <optional>
#include <vector>

#include "althull/ff.hpp"

namespace althull {

using Vec = std::vector<Element>;

// Dense row-major matrix; every entry shares one level.
struct Matrix {
  Level level{Level::prime};
  int rows{0}, cols{0};
  std::vector<Element> a;

  Matrix() = default;
  Matrix(Level l, int r, int c)
      : level(l), rows(r), cols(c), a((size_t)r * c, Element{l, 0}) {}

  Element& at(int i, int j) { return a[(size_t)i * cols + j]; }
  const Element& at(int i, int j) const { return a[(size_t)i * cols + j]; }

  Vec row(int i) const { return Vec(a.begin() + (size_t)i * cols, a.begin() + (size_t)(i + 1) * cols); }
  Vec col(int j) const {
    Vec v((size_t)rows);
    for (int i = 0; i < rows; ++i) v[i] = at(i, j);
    return v;
  }
  void set_row(int i, const Vec& v) {
    for (int j = 0; j < cols; ++j) at(i, j) = v[j];
  }

  static Matrix identity(Level l, int n) {
    Matrix m(l, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Element{l, 1};
    return m;
  }
  static Matrix from_rows(Level l, const std::vector<Vec>& rows);

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

Matrix mat_add(const FieldTower& t, const Matrix& A, const Matrix& B);
Matrix mat_sub(const FieldTower& t, const Matrix& A, const Matrix& B);
Matrix mat_neg(const FieldTower& t, const Matrix& A);
Matrix mat_mul(const FieldTower& t, const Matrix& A, const Matrix& B);
Matrix mat_scale(const FieldTower& t, const Matrix& A, Element c);
Matrix mat_pow(const FieldTower& t, Matrix A, int64_t e);
Matrix transpose(const Matrix& A);
Matrix hstack(const Matrix& A, const Matrix& B);
Matrix vstack(const Matrix& A, const Matrix& B);
bool mat_is_zero(const Matrix& A);

Vec mat_vec(const FieldTower& t, const Matrix& A, const Vec& v);  // A * column
Vec vec_mat(const FieldTower& t, const Vec& v, const Matrix& A);  // row * A
Vec vec_add(const FieldTower& t, const Vec& a, const Vec& b);
Vec vec_sub(const FieldTower& t, const Vec& a, const Vec& b);
Vec vec_scale(const FieldTower& t, const Vec& a, Element c);
bool vec_is_zero(const Vec& a);

struct RrefResult {
  Matrix R;
  int rank{0};
  std::vector<int> pivots;  // pivot column per pivot row, strictly increasing
};
// reduced row-echelon form; pivots chosen first-nonzero, normalized to 1
RrefResult rref(const FieldTower& t, Matrix M);
int mat_rank(const FieldTower& t, const Matrix& M);
Matrix inverse(const FieldTower& t, const Matrix& M);  // NotInvertible on failure

// Row space in canonical (RREF) form; the ambient dimension is the
// vector length.
struct Subspace {
  int ambient{0};
  Matrix basis;  // RREF, full row rank, pivots strictly increasing
  std::vector<int> pivots;

  int dim() const { return basis.rows; }
  static Subspace from_rows(const FieldTower& t, const Matrix& M);
  bool contains(const FieldTower& t, const Vec& v) const;
  bool contains_subspace(const FieldTower& t, const Subspace& other) const;
  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient == b.ambient && a.basis == b.basis;
  }
};

// {v : M v = 0} (column vectors, returned as a row basis)
Subspace right_kernel(const FieldTower& t, const Matrix& M);
// {v : v M = 0}
Subspace left_kernel(const FieldTower& t, const Matrix& M);
// one solution of M x = b, free variables set to 0; nullopt if inconsistent
std::optional<Vec> solve(const FieldTower& t, const Matrix& M, const Vec& b);

// Incremental row-echelon accumulator: cheap rank queries while rows stream in.
class EchelonTracker {
 public:
  EchelonTracker(const FieldTower& t, Level level, int cols)
      : t_(&t), level_(level), cols_(cols) {}
  // reduce against the stored rows, store if independent; true if rank grew
  bool add(Vec v);
  bool contains(Vec v) const;
  int rank() const { return (int)rows_.size(); }
  int cols() const { return cols_; }
  Matrix row_basis() const;  // current rows (echelon, not fully reduced)

 private:
  const FieldTower* t_;
  Level level_;
  int cols_;
  std::vector<Vec> rows_;
  std::vector<int> pivots_;
};

// monic minimal polynomial; Krylov spans of random start vectors (standard
// basis fallback), lcm of the per-vector relations, verified by substitution
Polynomial minimal_polynomial(const FieldTower& t, const Matrix& A, Rng& rng);

// companion matrix: C e_i = e_{i+1} for i < d-1, last column = -f_{0..d-1}
Matrix companion(const FieldTower& t, const Polynomial& f);
Matrix block_diag(const Matrix& J, int copies);

// Q with B = Q A Q^{-1}; requires a shared irreducible minimal polynomial
// whose degree divides the (common) size. NotSimilar when the minimal
// polynomials or sizes differ.
Matrix similarity_transform(const FieldTower& t, const Matrix& A, const Matrix& B);

Matrix poly_eval_matrix(const FieldTower& t, const Polynomial& f, const Matrix& A);

// coordinate map applied columnwise: (r x n over F_{q^m}) -> (rm x n over F_q)
Matrix psi_expand_matrix(const FieldTower& t, const Matrix& M);
Matrix psi_contract_matrix(const FieldTower& t, const Matrix& M);

}  // namespace althull
