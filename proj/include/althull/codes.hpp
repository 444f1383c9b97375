#pragma once

#include <optional>

#include "althull/linalg.hpp"

namespace althull {

// componentwise product
Vec star(const FieldTower& t, const Vec& a, const Vec& b);

// r x n matrix with rows (x_j^i * y_j), i = 0..r-1; x_j^0 is 1 even at x_j = 0
Matrix vandermonde(const FieldTower& t, const Vec& x, const Vec& y, int r);

struct GrsSpec {
  Vec x;  // distinct evaluation points, top level
  Vec y;  // nonzero column multipliers, top level
  int r = 0;
};
// throws ParamError on repeated points, zero multipliers, or r out of range
void validate_grs(const FieldTower& t, const GrsSpec& s);

// multiplier y' with dual(GRS_r(x, y)) = GRS_{n-r}(x, y'):
// y'_i = 1 / (y_i * prod_{j != i} (x_i - x_j))
Vec dual_multiplier(const FieldTower& t, const Vec& x, const Vec& y);

struct LinearCode {
  Matrix gen;  // reduced full-row-rank basis
  int k() const { return gen.rows; }
  int n() const { return gen.cols; }
  static LinearCode from_generator(const FieldTower& t, const Matrix& g);
  friend bool operator==(const LinearCode&, const LinearCode&) = default;
};

bool rowspace_equal(const FieldTower& t, const Matrix& A, const Matrix& B);

// span of all componentwise products of a row of A with a row of B
Matrix star_basis(const FieldTower& t, const Matrix& A, const Matrix& B);
int square_dim(const FieldTower& t, const Matrix& G);

LinearCode dual(const FieldTower& t, const LinearCode& c);
// subfield code spanned by the coordinate expansions of the generator rows;
// equals the componentwise trace image of the code
LinearCode trace_code(const FieldTower& t, const LinearCode& c);

// rm x n subfield parity check: coordinate expansion of vandermonde(x, y, r)
Matrix alternant_parity(const FieldTower& t, const Vec& x, const Vec& y, int r);

enum class InstanceKind { alternant, goppa };

struct AlternantParams {
  int64_t q = 0;
  int m = 0;
  int r = 0;
  int n = 0;
  uint64_t seed = 0;
  InstanceKind kind = InstanceKind::alternant;
};

struct AlternantInstance {
  AlternantParams params;
  Vec x, y;       // secret support and multiplier, top level
  Matrix P;       // secret rm x rm invertible row scrambler, mid level
  Matrix H_sec;   // alternant_parity(x, y, r)
  Matrix H_pub;   // P * H_sec
  std::optional<Polynomial> gamma;  // irreducible polynomial, goppa only
};

// both keygens resample the support/multiplier (or polynomial) until the
// parity matrix has full rank rm, up to a fixed retry cap; throws ParamError
// when r < 2, rm >= n, or n > q^m
AlternantInstance keygen_alternant(const FieldTower& t, int r, int n, uint64_t seed);
// multiplier y_i = 1/gamma(x_i) for a random monic irreducible gamma of
// degree r over the top field
AlternantInstance keygen_goppa(const FieldTower& t, int r, int n, uint64_t seed);

// syndrome decoder for the code with parity rows (x_j^i y_j): corrects up to
// floor(r/2) errors against a received subfield word of length n, returning
// the corrected codeword or nullopt.  Every returned word is verified to be a
// subfield codeword within the radius; failure is always explicit.
std::optional<Vec> decode(const FieldTower& t, const Vec& x, const Vec& y, int r,
                          const Vec& received);

}  // namespace althull
