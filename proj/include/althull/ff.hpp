#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "althull/common.hpp"

namespace althull {

// Three-level tower F_p <= F_q <= F_{q^m}, q = p^s.
enum class Level : uint8_t { prime = 0, mid = 1, top = 2 };

const char* level_name(Level l);

// One field element: a level tag plus the canonical packed code. The code is
// the little-endian base-p flattening of the element's coefficient sequence
// (for the top level the base-q digit packing coincides with base-p), so
// every element is stored dense and fully reduced.
struct Element {
  Level level{Level::prime};
  int32_t code{0};
  friend bool operator==(const Element&, const Element&) = default;
};

// Dense univariate polynomial, little-endian coefficients, single level.
struct Polynomial {
  Level level{Level::prime};
  std::vector<Element> c;
  friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

class FieldTower {
 public:
  // base_modulus: monic irreducible over F_p as little-endian integer
  //   coefficients, degree s; empty means q = p (collapsed middle level).
  // top_modulus: monic irreducible over F_q as little-endian mid codes,
  //   degree m >= 1.
  // Irreducibility of both moduli is verified, not assumed.
  FieldTower(int64_t p, std::vector<int64_t> base_modulus,
             std::vector<int64_t> top_modulus);

  // Default moduli: lexicographically first irreducible of the right degree
  // over the level below (fixed, reproducible choice per (base, degree)).
  static FieldTower make(int64_t p, int s, int m);

  int64_t p() const { return p_; }
  int s() const { return s_; }
  int64_t q() const { return q_; }
  int m() const { return m_; }
  int64_t top_size() const { return Q_; }

  int64_t size_of(Level l) const;
  // extension degree of the level over the level below (prime -> 1)
  int degree_of(Level l) const;
  // degree over F_p; length of the base-p digit tuple in key files
  int flat_degree(Level l) const;

  const std::vector<int64_t>& base_modulus() const { return qpoly_; }
  const std::vector<int64_t>& top_modulus() const { return mpoly_; }

  Element zero(Level l) const { return Element{l, 0}; }
  Element one(Level l) const { return Element{l, 1}; }
  Element element(Level l, int64_t code) const;
  // residue class of the top modulus variable; basis 1, alpha, ..., alpha^{m-1}
  Element alpha() const;

  Element lift(Element e, Level to) const;
  bool in_subfield(Element e) const;      // top element lying in F_q
  Element project_mid(Element e) const;   // inverse of lift on the subfield

  Element add(Element a, Element b) const;
  Element sub(Element a, Element b) const;
  Element neg(Element a) const;
  Element mul(Element a, Element b) const;
  Element inv(Element a) const;
  Element div(Element a, Element b) const;
  Element pow(Element a, int64_t e) const;

  // Tr * : F_{q^m} -> F_q, x -> sum_j x^{q^j}
  Element trace(Element x) const;
  // x -> x^{q^j}, 0 <= j <= m
  Element frobenius(Element x, int j) const;

  // coefficient sequence over the level below (length degree_of(level))
  std::vector<Element> coeffs(Element e) const;
  Element from_coeffs(Level l, const std::vector<Element>& cs) const;

  // coordinate map Psi: F_{q^m} -> F_q^m and inverse, plus elementwise
  // versions for vectors over F_{q^m}
  std::vector<Element> psi_expand(Element x) const;
  Element psi_contract(const std::vector<Element>& v) const;
  std::vector<Element> psi_expand_vector(const std::vector<Element>& v) const;
  std::vector<Element> psi_contract_vector(const std::vector<Element>& v) const;

  Element random_element(Level l, Rng& rng) const;
  Element random_nonzero(Level l, Rng& rng) const;

  // "p=<int>; qpoly=[...]; mpoly=[...]" (qpoly empty when q = p)
  std::string descriptor() const;
  static FieldTower from_descriptor(const std::string& text);

  // little-endian base-p digit tuple, comma separated (key file entry form)
  std::string to_string(Element e) const;
  Element parse_element(Level l, const std::string& text) const;

 private:
  int64_t p_{0};
  int s_{1};
  int64_t q_{0};
  int m_{1};
  int64_t Q_{0};
  std::vector<int64_t> qpoly_;  // empty when s == 1
  std::vector<int64_t> mpoly_;

  // middle level tables (size q*q / q)
  std::vector<int32_t> mid_add_, mid_mul_;
  std::vector<int32_t> mid_inv_, mid_neg_;

  // top level discrete-log tables over a found multiplicative generator
  std::vector<int32_t> top_exp_;  // size Q-1
  std::vector<int32_t> top_log_;  // size Q, -1 at 0
  int32_t alpha_code_{0};

  void build_mid();
  void build_top();
  int32_t top_slow_mul(int32_t a, int32_t b,
                       const std::vector<std::vector<int32_t>>& red) const;
  std::vector<std::vector<int32_t>> top_reduction_rows() const;

  int32_t madd(int32_t a, int32_t b) const { return mid_add_[a * q_ + b]; }
  int32_t mmul(int32_t a, int32_t b) const { return mid_mul_[a * q_ + b]; }

  void check_level(Element e, Level l, const char* who) const;
};

// ---- polynomial helpers (coefficients at any single level) ----

int poly_deg(const Polynomial& f);  // -1 for the zero polynomial
bool poly_is_zero(const Polynomial& f);
Polynomial poly_trim(Polynomial f);
Polynomial poly_from_codes(Level l, const std::vector<int64_t>& codes);
Polynomial poly_one(Level l);
Polynomial poly_x(Level l);

Polynomial poly_add(const FieldTower& t, const Polynomial& a, const Polynomial& b);
Polynomial poly_sub(const FieldTower& t, const Polynomial& a, const Polynomial& b);
Polynomial poly_mul(const FieldTower& t, const Polynomial& a, const Polynomial& b);
Polynomial poly_scale(const FieldTower& t, const Polynomial& a, Element c);
// b must be nonzero; returns (quotient, remainder)
std::pair<Polynomial, Polynomial> poly_divmod(const FieldTower& t,
                                              const Polynomial& a,
                                              const Polynomial& b);
Polynomial poly_mod(const FieldTower& t, const Polynomial& a, const Polynomial& b);
Polynomial poly_monic(const FieldTower& t, const Polynomial& a);
Polynomial poly_gcd(const FieldTower& t, Polynomial a, Polynomial b);  // monic
Polynomial poly_lcm(const FieldTower& t, const Polynomial& a, const Polynomial& b);
// x's level may sit above the coefficient level; coefficients are lifted
Element poly_eval(const FieldTower& t, const Polynomial& f, Element x);
Polynomial poly_pow_mod(const FieldTower& t, Polynomial base, int64_t e,
                        const Polynomial& mod);
// exhaustive trial division at desk scale, Rabin's criterion above it
bool poly_is_irreducible(const FieldTower& t, const Polynomial& f);
// roots of f in the top field, exhaustive scan, increasing code order;
// f may have coefficients at any level
std::vector<Element> find_roots(const FieldTower& t, const Polynomial& f);

}  // namespace althull
