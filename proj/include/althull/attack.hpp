#pragma once

#include <string>

#include "althull/hull.hpp"

namespace althull {

// the commutant recovered from the public tangent spaces: an m-dimensional
// matrix algebra over the subfield, isomorphic to the extension field
struct StabilizerAlgebra {
  int rm = 0;
  std::vector<Matrix> basis;  // m independent rm x rm matrices, mid level
  int dim() const { return (int)basis.size(); }

  // checks dimension m, identity in the span, commutativity, closure under
  // products, and (when the extension is small enough to sweep) that every
  // nonzero span element is invertible; throws AlgebraDimensionError with a
  // reason on any failure
  void validate(const FieldTower& t) const;
};

// linear conditions on the rm*rm entries of an unknown matrix A (row-major
// flattening) expressing A T <= T; count = dim(T) * (rm - dim(T))
Matrix stabilizer_equations(const FieldTower& t, const Subspace& T);

struct AlgebraDiagnostics {
  int modal_tangent_dim = 0;
  std::vector<std::pair<int, int>> tangent_dim_histogram;  // (dim, count), sampled window
  int columns_used = 0;
  int columns_skipped = 0;
  int64_t equations = 0;
  // accepted columns consumed when the solution space first reached dim m
  int points_until_dim_m = -1;
  int expected_points = 0;  // the heuristic estimate N
  double seconds = 0;
};

// accumulate stabilizer equations over the tangent spaces at the columns of
// H_pub until the solution space reaches dimension m (continuing past the
// (rm)^2 equation mark if needed); throws AlgebraDimensionError when the
// columns are exhausted at a different dimension
StabilizerAlgebra compute_algebra(const FieldTower& t, const Matrix& H_pub, int r,
                                  AlgebraDiagnostics* diag = nullptr, int threads = 1);

// draw algebra elements until one has minimal polynomial of degree m, then
// twist it by the polynomial carrying a root of that minimal polynomial to
// alpha; the result has the extension modulus as its minimal polynomial
Matrix normalize_generator(const FieldTower& t, const StabilizerAlgebra& A, Rng& rng);

// support/multiplier recovery from a generator matrix of a GRS code; result
// verified by row-space comparison before returning (SSFailure otherwise)
GrsSpec sidelnikov_shestakov(const FieldTower& t, const Matrix& G);

// parity row-space equality plus one decode round trip with floor((r-1)/2)
// planted errors
bool verify_key(const FieldTower& t, const Matrix& H_pub, const Vec& x, const Vec& y,
                int r, Rng& rng);

enum class AttackOutcome { success, inapplicable, failure };
const char* outcome_name(AttackOutcome o);

struct AttackDiagnostics {
  AlgebraDiagnostics algebra;
  double seconds_algebra = 0;
  double seconds_recover = 0;  // normalize + similarity + extraction + verify
  double seconds_total = 0;
  int restarts = 0;
  std::string note;
};

struct AttackReport {
  AttackOutcome outcome = AttackOutcome::failure;
  std::optional<GrsSpec> recovered;
  std::optional<int> j_conjugate;  // only when the secret is supplied
  AttackDiagnostics diagnostics;
};

// full pipeline: algebra, generator normalization, similarity to the
// block-diagonal model, subfield contraction, support recovery, verification;
// up to 3 restarts of the randomized stages.  `secret` is a harness-only hook
// for reporting the Frobenius exponent relating the recovered support to the
// planted one.
AttackReport full_attack(const FieldTower& t, const Matrix& H_pub, int r, uint64_t seed,
                         int threads = 1, const AlternantInstance* secret = nullptr);

}  // namespace althull
