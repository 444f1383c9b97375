#include "althull/attack.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <thread>

namespace althull {

namespace {

double now_seconds() {
  using namespace std::chrono;
  return duration_cast<duration<double>>(steady_clock::now().time_since_epoch()).count();
}

Vec flatten(const Matrix& M) { return M.a; }

Matrix unflatten(Level l, int d, const Vec& v) {
  Matrix M(l, d, d);
  M.a = v;
  return M;
}

constexpr int64_t kInvertibilitySweepCap = 4096;

}  // namespace

void StabilizerAlgebra::validate(const FieldTower& t) const {
  int m = t.m();
  if (dim() != m)
    throw AlgebraDimensionError("algebra dimension " + std::to_string(dim()) +
                                " differs from m = " + std::to_string(m));
  EchelonTracker span(t, Level::mid, rm * rm);
  for (const auto& M : basis) {
    if (M.rows != rm || M.cols != rm || M.level != Level::mid)
      throw AlgebraDimensionError("algebra basis element has the wrong shape");
    if (!span.add(flatten(M)))
      throw AlgebraDimensionError("algebra basis not linearly independent");
  }
  if (!span.contains(flatten(Matrix::identity(Level::mid, rm))))
    throw AlgebraDimensionError("identity not in the algebra");
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      Matrix ab = mat_mul(t, basis[i], basis[j]);
      if (!(ab == mat_mul(t, basis[j], basis[i])))
        throw AlgebraDimensionError("algebra not commutative");
      if (!span.contains(flatten(ab)))
        throw AlgebraDimensionError("algebra not closed under products");
    }
  if (t.top_size() <= kInvertibilitySweepCap) {
    // sweep every nonzero combination; the span must be a field
    int64_t q = t.q();
    std::vector<int64_t> digits(m, 0);
    for (int64_t combo = 1; combo < t.top_size(); ++combo) {
      int i = 0;
      while (++digits[i] >= q) {
        digits[i] = 0;
        ++i;
      }
      Matrix M(Level::mid, rm, rm);
      for (int b = 0; b < m; ++b) {
        if (digits[b] == 0) continue;
        M = mat_add(t, M, mat_scale(t, basis[b], t.element(Level::mid, digits[b])));
      }
      if (mat_rank(t, M) != rm)
        throw AlgebraDimensionError("nonzero algebra element is singular");
    }
  }
}

Matrix stabilizer_equations(const FieldTower& t, const Subspace& T) {
  int rm = T.ambient;
  int d = T.dim();
  if (d == 0 || d == rm)
    throw DegenerateTangent("stabilizer_equations: tangent space is trivial or full");
  const Matrix& G = T.basis;                   // d x rm
  Matrix H = right_kernel(t, G).basis;         // (rm - d) x rm
  Matrix E(G.level, d * (rm - d), rm * rm);
  int row = 0;
  for (int w = 0; w < H.rows; ++w)
    for (int b = 0; b < d; ++b, ++row)
      for (int u = 0; u < rm; ++u) {
        Element hu = H.at(w, u);
        if (hu.code == 0) continue;
        for (int v = 0; v < rm; ++v) {
          Element gv = G.at(b, v);
          if (gv.code == 0) continue;
          E.at(row, u * rm + v) = t.mul(hu, gv);
        }
      }
  return E;
}

StabilizerAlgebra compute_algebra(const FieldTower& t, const Matrix& H_pub, int r,
                                  AlgebraDiagnostics* diag, int threads) {
  double t0 = now_seconds();
  int m = t.m();
  int rm = H_pub.rows;
  int n = H_pub.cols;
  if (H_pub.level != Level::mid) throw LevelMismatch("compute_algebra: need a subfield matrix");
  if (r < 2 || rm != r * m) throw ParamError("compute_algebra: r inconsistent with matrix height");
  if (mat_rank(t, H_pub) != rm) throw ParamError("compute_algebra: matrix not full row rank");
  if (threads < 1) throw ParamError("compute_algebra: thread count must be >= 1");

  AlgebraDiagnostics local;
  AlgebraDiagnostics& D = diag ? *diag : local;
  auto finish = [&]() { D.seconds = now_seconds() - t0; };

  QuadricBasis I2 = i2_basis(t, H_pub);
  if (I2.dim() == 0) {
    finish();
    throw AlgebraDimensionError("no quadratic relations on the public columns");
  }

  // expected number of useful points, and the sampling window for the modal
  // tangent dimension
  int N = r > 2 ? (int)((r * (int64_t)r + 2 * (r - 2) - 1) / (2 * (r - 2))) : n;
  D.expected_points = N;
  int window = std::min(n, 3 * N);

  std::vector<Subspace> tangents(n);
  std::vector<char> have(n, 0);
  auto compute_col = [&](int c) {
    tangents[c] = tangent_space(t, I2, H_pub.col(c));
    have[c] = 1;
  };
  if (threads > 1) {
    // precompute every column in parallel; the merge below stays sequential
    // in column order, so results are identical to the single-thread path
    std::vector<std::thread> pool;
    int nt = std::min(threads, n);
    for (int w = 0; w < nt; ++w)
      pool.emplace_back([&, w]() {
        for (int c = w; c < n; c += nt) compute_col(c);
      });
    for (auto& th : pool) th.join();
  } else {
    for (int c = 0; c < window; ++c) compute_col(c);
  }

  std::map<int, int> hist;
  for (int c = 0; c < window; ++c) ++hist[tangents[c].dim()];
  int modal = -1, best = -1;
  for (const auto& [d, cnt] : hist)
    if (cnt > best) {
      best = cnt;
      modal = d;
    }
  D.modal_tangent_dim = modal;
  D.tangent_dim_histogram.assign(hist.begin(), hist.end());
  if (modal <= 0 || modal >= rm) {
    finish();
    throw AlgebraDimensionError("modal tangent dimension " + std::to_string(modal) +
                                " is degenerate");
  }

  EchelonTracker eqs(t, Level::mid, rm * rm);
  int64_t eq_target = (int64_t)rm * rm;
  int soldim = rm * rm;
  for (int c = 0; c < n; ++c) {
    if (D.equations >= eq_target && soldim <= m) break;
    if (soldim < m) break;
    if (!have[c]) compute_col(c);
    if (tangents[c].dim() != modal) {
      ++D.columns_skipped;
      continue;
    }
    Matrix E = stabilizer_equations(t, tangents[c]);
    D.equations += E.rows;
    for (int i = 0; i < E.rows; ++i) eqs.add(E.row(i));
    ++D.columns_used;
    soldim = rm * rm - eqs.rank();
    if (soldim == m && D.points_until_dim_m < 0) D.points_until_dim_m = D.columns_used;
  }
  if (soldim != m) {
    finish();
    throw AlgebraDimensionError("stabilizer solution space has dimension " +
                                std::to_string(soldim) + ", expected " + std::to_string(m));
  }

  Subspace sol = right_kernel(t, eqs.row_basis());
  StabilizerAlgebra A;
  A.rm = rm;
  for (int i = 0; i < sol.basis.rows; ++i)
    A.basis.push_back(unflatten(Level::mid, rm, sol.basis.row(i)));
  A.validate(t);
  finish();
  return A;
}

Matrix normalize_generator(const FieldTower& t, const StabilizerAlgebra& A, Rng& rng) {
  int m = t.m();
  Polynomial modulus;
  modulus.level = Level::mid;
  for (int64_t c : t.top_modulus()) modulus.c.push_back(Element{Level::mid, (int32_t)c});

  for (int draw = 0; draw < 64; ++draw) {
    Matrix M(Level::mid, A.rm, A.rm);
    for (const auto& B : A.basis) {
      Element c = t.random_element(Level::mid, rng);
      if (c.code == 0) continue;
      M = mat_add(t, M, mat_scale(t, B, c));
    }
    Polynomial mp = minimal_polynomial(t, M, rng);
    if (poly_deg(mp) != m) continue;
    auto roots = find_roots(t, mp);
    if (roots.empty()) continue;
    Element zeta = roots[0];
    // express alpha in the basis 1, zeta, ..., zeta^{m-1}
    Matrix S(Level::mid, m, m);
    Element zi = t.one(Level::top);
    for (int i = 0; i < m; ++i) {
      auto col = t.psi_expand(zi);
      for (int l = 0; l < m; ++l) S.at(l, i) = col[l];
      if (i + 1 < m) zi = t.mul(zi, zeta);
    }
    auto f = solve(t, S, t.psi_expand(t.alpha()));
    if (!f) continue;
    Polynomial fp;
    fp.level = Level::mid;
    fp.c = *f;
    Matrix Nmat = poly_eval_matrix(t, fp, M);
    if (!(minimal_polynomial(t, Nmat, rng) == modulus)) continue;
    return Nmat;
  }
  throw GeneratorSearchExhausted("normalize_generator: no generator after 64 draws");
}

namespace {

// one normalization attempt for a fixed free value gamma; returns nullopt on
// any degeneracy (division by zero, repeated support, row-space mismatch)
std::optional<GrsSpec> ss_attempt(const FieldTower& t, const Matrix& G, const Matrix& R,
                                  const std::vector<int>& piv, const std::vector<int>& np,
                                  Element gamma) {
  int r = (int)piv.size();
  int n = G.cols;
  Element one = t.one(Level::top);
  auto B = [&](int k, int c) { return R.at(k, np[c]); };

  // ratio of the first two rows on the free columns
  Element Rc0 = t.div(B(0, 0), B(1, 0));
  if (t.sub(gamma, one).code == 0 || gamma.code == 0) return std::nullopt;
  Element kappa = t.div(t.mul(Rc0, gamma), t.sub(gamma, one));

  Vec xs(n, t.zero(Level::top));
  xs[piv[0]] = t.zero(Level::top);
  xs[piv[1]] = one;
  xs[np[0]] = gamma;
  for (int c = 1; c < (int)np.size(); ++c) {
    Element Rc = t.div(B(0, c), B(1, c));
    Element den = t.sub(kappa, Rc);
    if (den.code == 0) return std::nullopt;  // point at infinity in this chart
    xs[np[c]] = t.div(kappa, den);
  }
  Element a = xs[np[0]], b2 = xs[np[1]];
  for (int k = 2; k < r; ++k) {
    Element kk = t.div(t.mul(B(k, 0), B(0, 1)), t.mul(B(0, 0), B(k, 1)));
    Element den = t.sub(a, t.mul(kk, b2));
    if (den.code == 0) return std::nullopt;
    xs[piv[k]] = t.div(t.mul(t.mul(a, b2), t.sub(one, kk)), den);
  }
  // all support values must be distinct
  {
    std::vector<int32_t> codes;
    for (const auto& e : xs) codes.push_back(e.code);
    std::sort(codes.begin(), codes.end());
    if (std::adjacent_find(codes.begin(), codes.end()) != codes.end()) return std::nullopt;
  }

  // multiplier, normalizing the leading row's polynomial to be monic
  Vec ys(n, t.zero(Level::top));
  auto prod_except = [&](Element at, int skip) {
    Element p = one;
    for (int l = 0; l < r; ++l) {
      if (l == skip) continue;
      p = t.mul(p, t.sub(at, xs[piv[l]]));
    }
    return p;
  };
  for (int c = 0; c < (int)np.size(); ++c) {
    Element p = prod_except(xs[np[c]], 0);
    if (p.code == 0) return std::nullopt;
    ys[np[c]] = t.div(B(0, c), p);
  }
  {
    Element p = prod_except(xs[piv[0]], 0);
    if (p.code == 0) return std::nullopt;
    ys[piv[0]] = t.inv(p);
  }
  for (int k = 1; k < r; ++k) {
    Element pc = prod_except(xs[np[0]], k);
    if (pc.code == 0 || ys[np[0]].code == 0) return std::nullopt;
    Element lam = t.div(B(k, 0), t.mul(ys[np[0]], pc));
    Element pp = prod_except(xs[piv[k]], k);
    if (lam.code == 0 || pp.code == 0) return std::nullopt;
    ys[piv[k]] = t.inv(t.mul(lam, pp));
  }

  GrsSpec spec{xs, ys, r};
  try {
    validate_grs(t, spec);
  } catch (const ParamError&) {
    return std::nullopt;
  }
  if (!rowspace_equal(t, vandermonde(t, xs, ys, r), G)) return std::nullopt;
  return spec;
}

}  // namespace

GrsSpec sidelnikov_shestakov(const FieldTower& t, const Matrix& G) {
  if (G.level != Level::top) throw LevelMismatch("sidelnikov_shestakov: need a top-level matrix");
  int n = G.cols;
  RrefResult rr = rref(t, G);
  int r = rr.rank;
  if (r < 2) throw SSFailure("sidelnikov_shestakov: rank below 2");
  if (n < r + 2) throw ParamError("sidelnikov_shestakov: need n >= r + 2");

  std::vector<int> piv = rr.pivots;
  std::vector<int> np;
  {
    std::vector<bool> is_piv(n, false);
    for (int c : piv) is_piv[c] = true;
    for (int c = 0; c < n; ++c)
      if (!is_piv[c]) np.push_back(c);
  }
  // a reduced generator of an evaluation code has no zero entries outside
  // the pivot columns
  for (int k = 0; k < r; ++k)
    for (int c = 0; c < (int)np.size(); ++c)
      if (rr.R.at(k, np[c]).code == 0)
        throw SSFailure("sidelnikov_shestakov: zero entry in the reduced free block");

  for (int64_t g = 0; g < t.top_size(); ++g) {
    Element gamma = t.element(Level::top, g);
    auto res = ss_attempt(t, G, rr.R, piv, np, gamma);
    if (res) return *res;
  }
  throw SSFailure("sidelnikov_shestakov: no normalization produced the input code");
}

bool verify_key(const FieldTower& t, const Matrix& H_pub, const Vec& x, const Vec& y,
                int r, Rng& rng) {
  GrsSpec spec{x, y, r};
  try {
    validate_grs(t, spec);
  } catch (const ParamError&) {
    return false;
  }
  if (!rowspace_equal(t, alternant_parity(t, x, y, r), H_pub)) return false;

  int n = H_pub.cols;
  Subspace C = right_kernel(t, H_pub);
  if (C.dim() == 0) return false;
  Vec cw(n, t.zero(Level::mid));
  for (int i = 0; i < C.basis.rows; ++i) {
    Element c = t.random_element(Level::mid, rng);
    if (c.code == 0) continue;
    cw = vec_add(t, cw, vec_scale(t, C.basis.row(i), c));
  }
  Vec received = cw;
  int werr = (r - 1) / 2;
  std::vector<int> pos(n);
  std::iota(pos.begin(), pos.end(), 0);
  for (int i = 0; i < werr; ++i) {
    int j = i + (int)rng.below(n - i);
    std::swap(pos[i], pos[j]);
    Element e = t.random_nonzero(Level::mid, rng);
    received[pos[i]] = t.add(received[pos[i]], e);
  }
  auto dec = decode(t, x, y, r, received);
  return dec && *dec == cw;
}

const char* outcome_name(AttackOutcome o) {
  switch (o) {
    case AttackOutcome::success: return "success";
    case AttackOutcome::inapplicable: return "inapplicable";
    case AttackOutcome::failure: return "failure";
  }
  return "unknown";
}

AttackReport full_attack(const FieldTower& t, const Matrix& H_pub, int r, uint64_t seed,
                         int threads, const AlternantInstance* secret) {
  AttackReport rep;
  double t0 = now_seconds();
  StabilizerAlgebra algebra;
  try {
    algebra = compute_algebra(t, H_pub, r, &rep.diagnostics.algebra, threads);
  } catch (const AlgebraDimensionError& e) {
    rep.outcome = AttackOutcome::inapplicable;
    rep.diagnostics.note = e.what();
    rep.diagnostics.seconds_algebra = rep.diagnostics.algebra.seconds;
    rep.diagnostics.seconds_total = now_seconds() - t0;
    return rep;
  }
  rep.diagnostics.seconds_algebra = rep.diagnostics.algebra.seconds;

  WeilCtx ctx(t, r);
  Rng rng(seed);
  for (int restart = 0; restart < 3; ++restart) {
    rep.diagnostics.restarts = restart;
    try {
      Matrix N = normalize_generator(t, algebra, rng);
      Matrix Q = similarity_transform(t, N, ctx.Jr());
      Matrix Gp = psi_contract_matrix(t, mat_mul(t, Q, H_pub));
      if (mat_rank(t, Gp) != r)
        throw SSFailure("full_attack: contracted matrix does not have rank r");
      GrsSpec spec = sidelnikov_shestakov(t, Gp);
      if (!verify_key(t, H_pub, spec.x, spec.y, r, rng)) {
        rep.diagnostics.note = "recovered key failed verification";
        continue;
      }
      rep.outcome = AttackOutcome::success;
      rep.recovered = spec;
      if (secret) {
        Matrix target = mat_mul(t, mat_mul(t, secret->P, ctx.Jr()), inverse(t, secret->P));
        int64_t qj = 1;
        for (int j = 0; j < t.m(); ++j) {
          if (mat_pow(t, N, qj) == target) {
            rep.j_conjugate = j;
            break;
          }
          qj *= t.q();
        }
      }
      break;
    } catch (const GeneratorSearchExhausted& e) {
      rep.diagnostics.note = e.what();
    } catch (const SSFailure& e) {
      rep.diagnostics.note = e.what();
    } catch (const NotSimilar& e) {
      rep.diagnostics.note = e.what();
    } catch (const ParamError& e) {
      rep.diagnostics.note = e.what();
    }
  }
  rep.diagnostics.seconds_recover = now_seconds() - t0 - rep.diagnostics.seconds_algebra;
  rep.diagnostics.seconds_total = now_seconds() - t0;
  return rep;
}

}  // namespace althull
