#include "althull/weil.hpp"

namespace althull {

int quad_monomial_count(int nvars) { return nvars * (nvars + 1) / 2; }

int quad_index(int i, int j, int nvars) {
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= nvars) throw ParamError("quad_index: variable out of range");
  return i * nvars - i * (i - 1) / 2 + (j - i);
}

std::pair<int, int> quad_unindex(int idx, int nvars) {
  if (idx < 0 || idx >= quad_monomial_count(nvars))
    throw ParamError("quad_unindex: index out of range");
  int i = 0;
  while (idx >= nvars - i) {
    idx -= nvars - i;
    ++i;
  }
  return {i, i + idx};
}

QuadraticForm QuadraticForm::zero(Level l, int nvars) {
  QuadraticForm f;
  f.level = l;
  f.nvars = nvars;
  f.coef.assign(quad_monomial_count(nvars), Element{l, 0});
  return f;
}

Element quad_eval(const FieldTower& t, const QuadraticForm& f, const Vec& x) {
  if ((int)x.size() != f.nvars) throw LengthMismatch("quad_eval: wrong point length");
  Element acc = t.zero(f.level);
  int idx = 0;
  for (int i = 0; i < f.nvars; ++i)
    for (int j = i; j < f.nvars; ++j, ++idx) {
      if (f.coef[idx].code == 0) continue;
      acc = t.add(acc, t.mul(f.coef[idx], t.mul(x[i], x[j])));
    }
  return acc;
}

Vec quad_gradient(const FieldTower& t, const QuadraticForm& f, const Vec& x) {
  if ((int)x.size() != f.nvars) throw LengthMismatch("quad_gradient: wrong point length");
  Vec g(f.nvars, t.zero(f.level));
  Element two = t.add(t.one(f.level), t.one(f.level));
  int idx = 0;
  for (int i = 0; i < f.nvars; ++i)
    for (int j = i; j < f.nvars; ++j, ++idx) {
      Element c = f.coef[idx];
      if (c.code == 0) continue;
      if (i == j) {
        g[i] = t.add(g[i], t.mul(t.mul(two, c), x[i]));
      } else {
        g[i] = t.add(g[i], t.mul(c, x[j]));
        g[j] = t.add(g[j], t.mul(c, x[i]));
      }
    }
  return g;
}

QuadraticForm quad_substitute(const FieldTower& t, const QuadraticForm& f, const Matrix& M) {
  if (M.rows != f.nvars || M.cols != f.nvars)
    throw LengthMismatch("quad_substitute: matrix shape mismatch");
  if (M.level != f.level) throw LevelMismatch("quad_substitute: level mismatch");
  int k = f.nvars;
  QuadraticForm out = QuadraticForm::zero(f.level, k);
  int idx = 0;
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j, ++idx) {
      Element c = f.coef[idx];
      if (c.code == 0) continue;
      // c * y_i y_j with y = Mx: collect over unordered variable pairs
      for (int u = 0; u < k; ++u) {
        Element miu = M.at(i, u);
        if (miu.code == 0) continue;
        for (int v = 0; v < k; ++v) {
          Element mjv = M.at(j, v);
          if (mjv.code == 0) continue;
          int o = quad_index(u, v, k);
          out.coef[o] = t.add(out.coef[o], t.mul(c, t.mul(miu, mjv)));
        }
      }
    }
  return out;
}

Matrix quad_rows(Level l, int nvars, const std::vector<QuadraticForm>& forms) {
  Matrix m(l, (int)forms.size(), quad_monomial_count(nvars));
  for (size_t i = 0; i < forms.size(); ++i) {
    if (forms[i].nvars != nvars || forms[i].level != l)
      throw ParamError("quad_rows: inconsistent forms");
    m.set_row((int)i, forms[i].coef);
  }
  return m;
}

std::vector<QuadraticForm> quad_from_rows(int nvars, const Matrix& rows) {
  if (rows.cols != quad_monomial_count(nvars))
    throw BadLength("quad_from_rows: wrong column count");
  std::vector<QuadraticForm> out;
  for (int i = 0; i < rows.rows; ++i) {
    QuadraticForm f;
    f.level = rows.level;
    f.nvars = nvars;
    f.coef = rows.row(i);
    out.push_back(std::move(f));
  }
  return out;
}

Matrix mat_alpha(const FieldTower& t, Element x) {
  if (x.level != Level::top) throw LevelMismatch("mat_alpha: need a top-level element");
  int m = t.m();
  Matrix M(Level::mid, m, m);
  Element xj = x;
  for (int j = 0; j < m; ++j) {
    auto col = t.psi_expand(xj);
    for (int l = 0; l < m; ++l) M.at(l, j) = col[l];
    if (j + 1 < m) xj = t.mul(xj, t.alpha());
  }
  return M;
}

Matrix res_matrix(const FieldTower& t, const Matrix& M) {
  if (M.level != Level::top) throw LevelMismatch("res_matrix: need a top-level matrix");
  int m = t.m();
  Matrix R(Level::mid, M.rows * m, M.cols * m);
  for (int i = 0; i < M.rows; ++i)
    for (int j = 0; j < M.cols; ++j) {
      Matrix blk = mat_alpha(t, M.at(i, j));
      for (int u = 0; u < m; ++u)
        for (int v = 0; v < m; ++v) R.at(i * m + u, j * m + v) = blk.at(u, v);
    }
  return R;
}

std::optional<Matrix> is_res(const FieldTower& t, const Matrix& A) {
  if (A.level != Level::mid) throw LevelMismatch("is_res: need a mid-level matrix");
  int m = t.m();
  if (A.rows % m != 0 || A.cols % m != 0) return std::nullopt;
  Matrix B(Level::top, A.rows / m, A.cols / m);
  std::vector<Element> col(m);
  for (int i = 0; i < B.rows; ++i)
    for (int j = 0; j < B.cols; ++j) {
      // the first column of a multiplication block is psi of its element
      for (int l = 0; l < m; ++l) col[l] = A.at(i * m + l, j * m);
      B.at(i, j) = t.psi_contract(col);
    }
  if (!(res_matrix(t, B) == A)) return std::nullopt;
  return B;
}

WeilCtx::WeilCtx(const FieldTower& t, int r) : t_(&t), r_(r) {
  if (r < 1) throw ParamError("WeilCtx: r must be >= 1");
  int m = t.m();
  J_ = mat_alpha(t, t.alpha());
  theta_ = Matrix(Level::mid, m, m);
  Element aj = t.one(Level::top);
  for (int j = 0; j < m; ++j) {
    auto col = t.psi_expand(t.frobenius(aj, 1));
    for (int l = 0; l < m; ++l) theta_.at(l, j) = col[l];
    if (j + 1 < m) aj = t.mul(aj, t.alpha());
  }
  Jr_ = block_diag(J_, r);
  theta_r_ = block_diag(theta_, r);

  // construction checks: J psi(x) = psi(alpha x), theta psi(x) = psi(x^q),
  // exhaustively for small fields and on a sample otherwise, plus the minimal
  // polynomial of J matching the extension modulus
  int64_t Q = t.top_size();
  std::vector<Element> pts;
  if (Q <= 4096) {
    for (int64_t c = 0; c < Q; ++c) pts.push_back(t.element(Level::top, c));
  } else {
    Rng rng(0x77e11);
    for (int i = 0; i < 64; ++i) pts.push_back(t.random_element(Level::top, rng));
  }
  for (Element x : pts) {
    Vec px = t.psi_expand(x);
    if (!(mat_vec(t, J_, px) == t.psi_expand(t.mul(t.alpha(), x))))
      throw Error("WeilCtx: J does not realize multiplication by alpha");
    if (!(mat_vec(t, theta_, px) == t.psi_expand(t.frobenius(x, 1))))
      throw Error("WeilCtx: theta does not realize the Frobenius");
  }
  Rng rng(0x517);
  Polynomial mp = minimal_polynomial(t, J_, rng);
  Polynomial mod;
  mod.level = Level::mid;
  for (int64_t c : t.top_modulus()) mod.c.push_back(Element{Level::mid, (int32_t)c});
  if (!(mp == mod)) throw Error("WeilCtx: minimal polynomial of J is not the modulus");
}

Matrix WeilCtx::Jr_conjugate(int j) const {
  if (j < 0 || j >= m()) throw ParamError("Jr_conjugate: exponent out of range");
  return block_diag(mat_alpha(*t_, t_->frobenius(t_->alpha(), j)), r_);
}

Matrix WeilCtx::theta_r_pow(int e) const {
  if (e < 0) throw ParamError("theta_r_pow: exponent must be >= 0");
  e %= m();
  Matrix R = Matrix::identity(Level::mid, r_ * m());
  for (int i = 0; i < e; ++i) R = mat_mul(*t_, R, theta_r_);
  return R;
}

std::optional<GroupElement> group_membership(const WeilCtx& ctx, const Matrix& A) {
  const FieldTower& t = ctx.tower();
  int n = ctx.r() * ctx.m();
  if (A.level != Level::mid || A.rows != n || A.cols != n)
    throw LengthMismatch("group_membership: wrong matrix shape");
  Matrix Ainv = inverse(t, A);  // NotInvertible on singular input
  Matrix AJ = mat_mul(t, A, ctx.Jr());
  for (int j = 0; j < ctx.m(); ++j) {
    if (!(AJ == mat_mul(t, ctx.Jr_conjugate(j), A))) continue;
    Matrix R = mat_mul(t, A, ctx.theta_r_pow((ctx.m() - j) % ctx.m()));
    auto B = is_res(t, R);
    if (!B) return std::nullopt;
    return GroupElement{*B, j};
  }
  (void)Ainv;
  return std::nullopt;
}

std::vector<QuadraticForm> weil_restrict_quadric(const FieldTower& t, const QuadraticForm& f) {
  if (f.level != Level::top)
    throw LevelMismatch("weil_restrict_quadric: need a top-level form");
  int k = f.nvars;
  int m = t.m();
  int K = k * m;
  // collect the top-level coefficient of each subfield monomial, then split
  // along the power basis
  std::vector<Element> top(quad_monomial_count(K), t.zero(Level::top));
  std::vector<Element> apow(2 * m - 1);
  apow[0] = t.one(Level::top);
  for (int e = 1; e < 2 * m - 1; ++e) apow[e] = t.mul(apow[e - 1], t.alpha());
  int idx = 0;
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j, ++idx) {
      Element c = f.coef[idx];
      if (c.code == 0) continue;
      for (int u = 0; u < m; ++u)
        for (int v = 0; v < m; ++v) {
          // X_i X_j picks up alpha^{u+v} x_{i,u} x_{j,v} for every ordered
          // pair (u, v); unordered collection merges (u,v) and (v,u) when
          // i == j
          int o = quad_index(i * m + u, j * m + v, K);
          top[o] = t.add(top[o], t.mul(c, apow[u + v]));
        }
    }
  std::vector<QuadraticForm> out(m, QuadraticForm::zero(Level::mid, K));
  for (int o = 0; o < (int)top.size(); ++o) {
    if (top[o].code == 0) continue;
    auto cs = t.psi_expand(top[o]);
    for (int l = 0; l < m; ++l) out[l].coef[o] = cs[l];
  }
  return out;
}

bool is_Jr_invariant(const WeilCtx& ctx, const std::vector<QuadraticForm>& basis) {
  if (basis.empty()) return true;
  const FieldTower& t = ctx.tower();
  int k = basis[0].nvars;
  if (k != ctx.r() * ctx.m())
    throw LengthMismatch("is_Jr_invariant: forms have the wrong variable count");
  std::vector<QuadraticForm> mapped;
  for (const auto& f : basis) mapped.push_back(quad_substitute(t, f, ctx.Jr()));
  Subspace orig = Subspace::from_rows(t, quad_rows(basis[0].level, k, basis));
  for (const auto& f : mapped)
    if (!orig.contains(t, f.coef)) return false;
  return true;
}

}  // namespace althull
