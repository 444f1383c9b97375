#pragma once

#include "althull/codes.hpp"
#include "althull/weil.hpp"

namespace althull {

struct QuadricBasis {
  int k = 0;      // number of variables
  Matrix basis;   // rows = coefficient vectors in quad_index order
  int n_monomials() const { return quad_monomial_count(k); }
  int dim() const { return basis.rows; }
  std::vector<QuadraticForm> forms() const { return quad_from_rows(k, basis); }
};

// quadratic forms in k variables vanishing at every column of the full-row-
// rank k x n matrix M: the left kernel of the k(k+1)/2 x n matrix of
// componentwise row products; every returned form is re-checked against all
// columns
QuadricBasis i2_basis(const FieldTower& t, const Matrix& M);

// 2x2 minors of the 2 x (r-1) band matrix [[X_0..X_{r-2}], [X_1..X_{r-1}]]:
// the forms X_a X_{b+1} - X_{a+1} X_b for 0 <= a < b <= r-2; spans the
// relations of the degree-(r-1) moment curve
QuadricBasis hankel_minors_basis(const FieldTower& t, Level l, int r);

// right kernel of the Jacobian of the basis forms at a point of the common
// zero locus; throws PointNotOnVariety otherwise
Subspace tangent_space(const FieldTower& t, const QuadricBasis& B, const Vec& P);

// lower bounds on the number of independent quadratic relations satisfied by
// the dual of a random alternant (ea) or Goppa (eg) code; exact integer
// formulas, integrality asserted
int64_t ea_bound(int64_t q, int m, int r);
int64_t eg_bound(int64_t q, int m, int r);

struct RegimeReport {
  int64_t bound = 0;
  int64_t threshold = 0;        // binom(rm+1, 2) - n
  bool distinguishable = false;  // bound > threshold
  bool weil_proper_expected = false;
  int e = 0;  // exponent used inside the bound
};

RegimeReport regime(int64_t q, int m, int r, int n, InstanceKind kind);

}  // namespace althull
