#include "althull/hull.hpp"

namespace althull {

QuadricBasis i2_basis(const FieldTower& t, const Matrix& M) {
  int k = M.rows;
  if (mat_rank(t, M) != k) throw ParamError("i2_basis: matrix does not have full row rank");
  Matrix Z(M.level, quad_monomial_count(k), M.cols);
  int idx = 0;
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j, ++idx) Z.set_row(idx, star(t, M.row(i), M.row(j)));
  Subspace ker = left_kernel(t, Z);
  QuadricBasis B;
  B.k = k;
  B.basis = ker.basis;
  for (const auto& f : B.forms())
    for (int c = 0; c < M.cols; ++c)
      if (quad_eval(t, f, M.col(c)).code != 0)
        throw Error("i2_basis: form fails to vanish on a column");
  return B;
}

QuadricBasis hankel_minors_basis(const FieldTower& t, Level l, int r) {
  if (r < 3) throw ParamError("hankel_minors_basis: r must be >= 3");
  int count = (r - 1) * (r - 2) / 2;
  QuadricBasis B;
  B.k = r;
  B.basis = Matrix(l, count, quad_monomial_count(r));
  int row = 0;
  for (int a = 0; a < r - 1; ++a)
    for (int b = a + 1; b < r - 1; ++b, ++row) {
      // minor of columns a, b: X_a X_{b+1} - X_{a+1} X_b
      B.basis.at(row, quad_index(a, b + 1, r)) = t.one(l);
      B.basis.at(row, quad_index(a + 1, b, r)) = t.neg(t.one(l));
    }
  // canonical form so equal spans compare equal
  Subspace s = Subspace::from_rows(t, B.basis);
  if (s.dim() != count) throw Error("hankel_minors_basis: dependent minors");
  B.basis = s.basis;
  return B;
}

Subspace tangent_space(const FieldTower& t, const QuadricBasis& B, const Vec& P) {
  if ((int)P.size() != B.k) throw LengthMismatch("tangent_space: wrong point length");
  auto forms = B.forms();
  Matrix jac(B.basis.level, (int)forms.size(), B.k);
  for (size_t i = 0; i < forms.size(); ++i) {
    if (quad_eval(t, forms[i], P).code != 0)
      throw PointNotOnVariety("tangent_space: point off the zero locus");
    jac.set_row((int)i, quad_gradient(t, forms[i], P));
  }
  return right_kernel(t, jac);
}

namespace {
int64_t checked_half(int64_t num, const char* who) {
  if (num % 2 != 0) throw Error(std::string(who) + ": formula value not an even integer");
  return num / 2;
}
}  // namespace

int64_t ea_bound(int64_t q, int m, int r) {
  if (r < 2) throw ParamError("ea_bound: r must be >= 2");
  if (q < 2 || m < 1) throw ParamError("ea_bound: bad field parameters");
  // largest e with q^e <= r - 1
  int e = 0;
  int64_t pw = 1;
  while (pw * q <= r - 1) {
    pw *= q;
    ++e;
  }
  int64_t g = 0;
  int64_t qi = 1;
  for (int i = 0; i <= e; ++i) {
    g += qi;
    qi *= q;
  }
  int64_t num = (int64_t)m * (r - 1) * ((2 * e + 1) * r - 2 * g);
  return checked_half(num, "ea_bound");
}

int64_t eg_bound(int64_t q, int m, int r) {
  if (r < 2) throw ParamError("eg_bound: r must be >= 2");
  if (q < 2 || m < 1) throw ParamError("eg_bound: bad field parameters");
  if (r < q - 1) {
    int64_t num = (int64_t)m * (r - 1) * (r - 2);
    return checked_half(num, "eg_bound");
  }
  // smallest e >= 0 with q^e (q-1)^2 >= r, then shifted by one
  int e = 0;
  int64_t pw = (q - 1) * (q - 1);
  while (pw < r) {
    pw *= q;
    ++e;
  }
  int eg = e + 1;
  int64_t qe1 = 1;
  for (int i = 0; i < eg - 1; ++i) qe1 *= q;
  int64_t num = (int64_t)m * r * ((2 * eg + 1) * r - 2 * (q - 1) * qe1 - 1);
  return checked_half(num, "eg_bound");
}

RegimeReport regime(int64_t q, int m, int r, int n, InstanceKind kind) {
  RegimeReport rep;
  if (kind == InstanceKind::alternant) {
    rep.bound = ea_bound(q, m, r);
    int e = 0;
    int64_t pw = 1;
    while (pw * q <= r - 1) {
      pw *= q;
      ++e;
    }
    rep.e = e;
  } else {
    rep.bound = eg_bound(q, m, r);
    if (r < q - 1) {
      rep.e = 0;
    } else {
      int e = 0;
      int64_t pw = (q - 1) * (q - 1);
      while (pw < r) {
        pw *= q;
        ++e;
      }
      rep.e = e + 1;
    }
  }
  int64_t rm = (int64_t)r * m;
  rep.threshold = rm * (rm + 1) / 2 - n;
  rep.distinguishable = rep.bound > rep.threshold;
  bool in_range = kind == InstanceKind::alternant ? (r <= q) : (r < q - 1);
  rep.weil_proper_expected = rep.distinguishable && in_range;
  return rep;
}

}  // namespace althull
