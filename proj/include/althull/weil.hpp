#pragma once

#include <optional>
#include <utility>

#include "althull/linalg.hpp"

namespace althull {

// Quadratic monomials X_i X_j with i <= j, ordered lexicographically by
// (i, j).  All quadratic forms in this project are homogeneous.
int quad_monomial_count(int nvars);
int quad_index(int i, int j, int nvars);
std::pair<int, int> quad_unindex(int idx, int nvars);

struct QuadraticForm {
  Level level = Level::prime;
  int nvars = 0;
  std::vector<Element> coef;  // quad_index order, length quad_monomial_count(nvars)

  static QuadraticForm zero(Level l, int nvars);
  friend bool operator==(const QuadraticForm&, const QuadraticForm&) = default;
};

Element quad_eval(const FieldTower& t, const QuadraticForm& f, const Vec& x);
// formal gradient (d/dX_i) f; diagonal terms contribute 2 c_ii X_i, which
// vanishes in characteristic 2
Vec quad_gradient(const FieldTower& t, const QuadraticForm& f, const Vec& x);
// f(Mx) for square M
QuadraticForm quad_substitute(const FieldTower& t, const QuadraticForm& f, const Matrix& M);

// coefficient vectors of the forms stacked as matrix rows, and back
Matrix quad_rows(Level l, int nvars, const std::vector<QuadraticForm>& forms);
std::vector<QuadraticForm> quad_from_rows(int nvars, const Matrix& rows);

// multiplication-by-x on the extension, written in the basis 1, alpha, ...,
// alpha^{m-1}: column j is psi_expand(x * alpha^j)
Matrix mat_alpha(const FieldTower& t, Element x);

// blockwise mat_alpha of a top-level matrix: (rows*m) x (cols*m) over the
// subfield
Matrix res_matrix(const FieldTower& t, const Matrix& M);

// inverse of res_matrix where it applies: recovers the top-level matrix, or
// nullopt when A is not a blockwise multiplication matrix
std::optional<Matrix> is_res(const FieldTower& t, const Matrix& A);

// coordinate-restriction context for r-dimensional spaces over the top field:
// J is multiplication by alpha, theta is the q-power Frobenius as a subfield-
// linear map, and the _r versions are their r-fold block-diagonal copies
class WeilCtx {
 public:
  WeilCtx(const FieldTower& t, int r);

  const FieldTower& tower() const { return *t_; }
  int r() const { return r_; }
  int m() const { return t_->m(); }

  const Matrix& J() const { return J_; }
  const Matrix& theta() const { return theta_; }
  const Matrix& Jr() const { return Jr_; }
  const Matrix& theta_r() const { return theta_r_; }

  // blockdiag(mat_alpha(alpha^{q^j})), the conjugate of Jr by any semilinear
  // group element with Frobenius exponent j
  Matrix Jr_conjugate(int j) const;
  // theta_r^e for e >= 0 (theta_r has order m)
  Matrix theta_r_pow(int e) const;

 private:
  const FieldTower* t_;
  int r_;
  Matrix J_, theta_, Jr_, theta_r_;
};

// semilinear map v -> B * frobenius^j(v); its subfield matrix is
// res_matrix(B) * theta_r^j
struct GroupElement {
  Matrix B;  // top level, r x r, invertible
  int j = 0;
};

// decompose an invertible subfield matrix as a semilinear group element, or
// nullopt when it is not one; throws NotInvertible on singular input
std::optional<GroupElement> group_membership(const WeilCtx& ctx, const Matrix& A);

// substitute X_i = sum_u alpha^u x_{i,u} into a top-level form and split the
// result into m subfield forms along the power basis; variables flatten as
// (i, u) -> i*m + u
std::vector<QuadraticForm> weil_restrict_quadric(const FieldTower& t, const QuadraticForm& f);

// does precomposition with Jr map the span of the forms into itself
bool is_Jr_invariant(const WeilCtx& ctx, const std::vector<QuadraticForm>& basis);

}  // namespace althull
