#include "althull/ff.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace althull {

namespace {

constexpr int64_t kMaxMid = 1024;        // full q*q tables
constexpr int64_t kMaxTop = 1 << 20;     // discrete-log tables
constexpr int64_t kTrialDivisionBudget = 200000;

bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int64_t ipow_checked(int64_t b, int e, int64_t cap) {
  int64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > cap / b) return cap + 1;
    r *= b;
  }
  return r;
}

// ---- raw mod-p polynomial helpers, used only to vet the base modulus ----
// (vectors of coefficients in [0,p), little-endian)

int raw_deg(const std::vector<int64_t>& f) {
  int d = (int)f.size() - 1;
  while (d >= 0 && f[d] == 0) --d;
  return d;
}

// remainder of a by monic b, mod p
std::vector<int64_t> raw_mod(std::vector<int64_t> a, const std::vector<int64_t>& b,
                             int64_t p) {
  int db = raw_deg(b);
  for (int da = raw_deg(a); da >= db; da = raw_deg(a)) {
    int64_t c = a[da];
    if (c == 0) continue;
    int sh = da - db;
    for (int i = 0; i <= db; ++i)
      a[i + sh] = ((a[i + sh] - c * b[i]) % p + p) % p;
  }
  return a;
}

bool raw_irreducible(const std::vector<int64_t>& f, int64_t p) {
  int d = raw_deg(f);
  if (d <= 0) return false;
  if (d == 1) return true;
  for (int e = 1; e <= d / 2; ++e) {
    int64_t count = 1;
    for (int i = 0; i < e; ++i) count *= p;
    for (int64_t t = 0; t < count; ++t) {
      std::vector<int64_t> g(e + 1, 0);
      int64_t v = t;
      for (int i = 0; i < e; ++i) { g[i] = v % p; v /= p; }
      g[e] = 1;
      if (raw_deg(raw_mod(f, g, p)) < 0) return false;
    }
  }
  return true;
}

}  // namespace

const char* level_name(Level l) {
  switch (l) {
    case Level::prime: return "prime";
    case Level::mid: return "mid";
    case Level::top: return "top";
  }
  return "?";
}

FieldTower::FieldTower(int64_t p, std::vector<int64_t> base_modulus,
                       std::vector<int64_t> top_modulus)
    : p_(p), qpoly_(std::move(base_modulus)), mpoly_(std::move(top_modulus)) {
  if (!is_prime(p_)) throw ParamError("FieldTower: p must be prime");

  if (qpoly_.empty()) {
    s_ = 1;
    q_ = p_;
  } else {
    s_ = (int)qpoly_.size() - 1;
    if (s_ < 2)
      throw ParamError("FieldTower: base modulus must have degree >= 2 (omit it for q = p)");
    if (qpoly_.back() != 1) throw ParamError("FieldTower: base modulus not monic");
    for (int64_t c : qpoly_)
      if (c < 0 || c >= p_) throw ParamError("FieldTower: base modulus coefficient out of range");
    q_ = ipow_checked(p_, s_, kMaxMid);
    if (!raw_irreducible(qpoly_, p_))
      throw ParamError("FieldTower: base modulus is reducible");
  }
  if (q_ > kMaxMid) throw ParamError("FieldTower: q exceeds the supported table size");

  build_mid();

  if (mpoly_.size() < 2) throw ParamError("FieldTower: top modulus must have degree >= 1");
  m_ = (int)mpoly_.size() - 1;
  if (mpoly_.back() != 1) throw ParamError("FieldTower: top modulus not monic");
  for (int64_t c : mpoly_)
    if (c < 0 || c >= q_) throw ParamError("FieldTower: top modulus coefficient out of range");
  Q_ = ipow_checked(q_, m_, kMaxTop);
  if (Q_ > kMaxTop) throw ParamError("FieldTower: q^m exceeds the supported table size");

  {
    Polynomial f;
    f.level = Level::mid;
    for (int64_t c : mpoly_) f.c.push_back(Element{Level::mid, (int32_t)c});
    if (!poly_is_irreducible(*this, f))
      throw ParamError("FieldTower: top modulus is reducible");
  }

  build_top();
}

void FieldTower::build_mid() {
  mid_add_.assign(q_ * q_, 0);
  mid_mul_.assign(q_ * q_, 0);
  mid_inv_.assign(q_, 0);
  mid_neg_.assign(q_, 0);

  if (s_ == 1) {
    for (int64_t a = 0; a < q_; ++a) {
      mid_neg_[a] = (int32_t)((q_ - a) % q_);
      for (int64_t b = 0; b < q_; ++b) {
        mid_add_[a * q_ + b] = (int32_t)((a + b) % q_);
        mid_mul_[a * q_ + b] = (int32_t)((a * b) % q_);
      }
    }
  } else {
    // digits base p, reduction by the base modulus
    auto digits = [&](int64_t code) {
      std::vector<int64_t> d(s_);
      for (int i = 0; i < s_; ++i) { d[i] = code % p_; code /= p_; }
      return d;
    };
    auto pack = [&](const std::vector<int64_t>& d) {
      int64_t code = 0;
      for (int i = s_ - 1; i >= 0; --i) code = code * p_ + d[i];
      return code;
    };
    for (int64_t a = 0; a < q_; ++a) {
      auto da = digits(a);
      std::vector<int64_t> nd(s_);
      for (int i = 0; i < s_; ++i) nd[i] = (p_ - da[i]) % p_;
      mid_neg_[a] = (int32_t)pack(nd);
      for (int64_t b = 0; b < q_; ++b) {
        auto db = digits(b);
        std::vector<int64_t> sum(s_);
        for (int i = 0; i < s_; ++i) sum[i] = (da[i] + db[i]) % p_;
        mid_add_[a * q_ + b] = (int32_t)pack(sum);
        std::vector<int64_t> conv(2 * s_ - 1, 0);
        for (int i = 0; i < s_; ++i)
          for (int j = 0; j < s_; ++j)
            conv[i + j] = (conv[i + j] + da[i] * db[j]) % p_;
        conv = raw_mod(conv, qpoly_, p_);
        conv.resize(s_, 0);
        mid_mul_[a * q_ + b] = (int32_t)pack(conv);
      }
    }
  }

  mid_inv_[0] = 0;
  for (int64_t a = 1; a < q_; ++a) {
    for (int64_t b = 1; b < q_; ++b) {
      if (mid_mul_[a * q_ + b] == 1) { mid_inv_[a] = (int32_t)b; break; }
    }
    if (a > 0 && mid_inv_[a] == 0)
      throw ParamError("FieldTower: middle level is not a field (reducible modulus?)");
  }
}

std::vector<std::vector<int32_t>> FieldTower::top_reduction_rows() const {
  // rows k = digits of alpha^{m+k}, k = 0..m-2
  std::vector<std::vector<int32_t>> red;
  if (m_ < 2) return red;
  std::vector<int32_t> am(m_);
  for (int i = 0; i < m_; ++i) am[i] = mid_neg_[mpoly_[i]];
  red.push_back(am);
  for (int k = 1; k <= m_ - 2; ++k) {
    const auto& prev = red.back();
    std::vector<int32_t> cur(m_, 0);
    for (int i = 1; i < m_; ++i) cur[i] = prev[i - 1];
    int32_t carry = prev[m_ - 1];
    if (carry != 0)
      for (int i = 0; i < m_; ++i) cur[i] = madd(cur[i], mmul(carry, am[i]));
    red.push_back(cur);
  }
  return red;
}

int32_t FieldTower::top_slow_mul(int32_t a, int32_t b,
                                 const std::vector<std::vector<int32_t>>& red) const {
  std::vector<int32_t> da(m_), db(m_);
  int64_t ra = a, rb = b;
  for (int i = 0; i < m_; ++i) { da[i] = (int32_t)(ra % q_); ra /= q_; }
  for (int i = 0; i < m_; ++i) { db[i] = (int32_t)(rb % q_); rb /= q_; }
  std::vector<int32_t> conv(2 * m_ - 1, 0);
  for (int i = 0; i < m_; ++i) {
    if (da[i] == 0) continue;
    for (int j = 0; j < m_; ++j) {
      if (db[j] == 0) continue;
      conv[i + j] = madd(conv[i + j], mmul(da[i], db[j]));
    }
  }
  for (int k = m_ - 2; k >= 0; --k) {
    int32_t c = conv[m_ + k];
    if (c == 0) continue;
    for (int i = 0; i < m_; ++i)
      conv[i] = madd(conv[i], mmul(c, red[k][i]));
  }
  int64_t code = 0;
  for (int i = m_ - 1; i >= 0; --i) code = code * q_ + conv[i];
  return (int32_t)code;
}

void FieldTower::build_top() {
  alpha_code_ = (m_ >= 2) ? (int32_t)q_ : mid_neg_[mpoly_[0]];

  top_log_.assign(Q_, -1);
  if (Q_ == 2) {
    top_exp_ = {1};
    top_log_[1] = 0;
    return;
  }
  auto red = top_reduction_rows();
  top_exp_.assign(Q_ - 1, 0);
  for (int64_t g = 2; g < Q_; ++g) {
    int32_t x = 1;
    bool ok = true;
    for (int64_t k = 0; k < Q_ - 1; ++k) {
      top_exp_[k] = x;
      x = top_slow_mul(x, (int32_t)g, red);
      if (x == 1 && k + 1 < Q_ - 1) { ok = false; break; }
    }
    if (ok && x == 1) {
      for (int64_t k = 0; k < Q_ - 1; ++k) top_log_[top_exp_[k]] = (int32_t)k;
      return;
    }
  }
  throw ParamError("FieldTower: no multiplicative generator found (not a field?)");
}

FieldTower FieldTower::make(int64_t p, int s, int m) {
  if (!is_prime(p)) throw ParamError("FieldTower::make: p must be prime");
  if (s < 1 || m < 1) throw ParamError("FieldTower::make: degrees must be positive");

  auto lex_first = [](const FieldTower& t, int d) {
    int64_t base = t.q();
    int64_t count = 1;
    for (int i = 0; i < d; ++i) {
      if (count > kMaxTop) throw ParamError("FieldTower::make: search space too large");
      count *= base;
    }
    for (int64_t v = 0; v < count; ++v) {
      std::vector<int64_t> codes(d + 1, 0);
      int64_t r = v;
      for (int i = 0; i < d; ++i) { codes[i] = r % base; r /= base; }
      codes[d] = 1;
      Polynomial f = poly_from_codes(Level::mid, codes);
      if (poly_is_irreducible(t, f)) return codes;
    }
    throw ParamError("FieldTower::make: no irreducible polynomial found");
  };

  std::vector<int64_t> qpoly;
  if (s > 1) {
    FieldTower t0(p, {}, {0, 1});
    qpoly = lex_first(t0, s);
  }
  FieldTower t1(p, qpoly, {0, 1});
  std::vector<int64_t> mpoly = lex_first(t1, m);
  return FieldTower(p, qpoly, mpoly);
}

int64_t FieldTower::size_of(Level l) const {
  switch (l) {
    case Level::prime: return p_;
    case Level::mid: return q_;
    case Level::top: return Q_;
  }
  return 0;
}

int FieldTower::degree_of(Level l) const {
  switch (l) {
    case Level::prime: return 1;
    case Level::mid: return s_;
    case Level::top: return m_;
  }
  return 0;
}

int FieldTower::flat_degree(Level l) const {
  switch (l) {
    case Level::prime: return 1;
    case Level::mid: return s_;
    case Level::top: return s_ * m_;
  }
  return 0;
}

Element FieldTower::element(Level l, int64_t code) const {
  if (code < 0 || code >= size_of(l))
    throw ParamError("FieldTower::element: code out of range");
  return Element{l, (int32_t)code};
}

Element FieldTower::alpha() const { return Element{Level::top, alpha_code_}; }

void FieldTower::check_level(Element e, Level l, const char* who) const {
  if (e.level != l)
    throw LevelMismatch(std::string(who) + ": expected " + level_name(l) +
                        " element, got " + level_name(e.level));
  if (e.code < 0 || e.code >= size_of(l))
    throw ParamError(std::string(who) + ": element code out of range");
}

Element FieldTower::lift(Element e, Level to) const {
  if ((int)e.level > (int)to) throw LevelMismatch("FieldTower::lift: cannot lift downward");
  if (e.code < 0 || e.code >= size_of(e.level))
    throw ParamError("FieldTower::lift: element code out of range");
  // embeddings preserve the packed code
  return Element{to, e.code};
}

bool FieldTower::in_subfield(Element e) const {
  check_level(e, Level::top, "FieldTower::in_subfield");
  return e.code < q_;
}

Element FieldTower::project_mid(Element e) const {
  if (!in_subfield(e))
    throw ParamError("FieldTower::project_mid: element not in the middle field");
  return Element{Level::mid, e.code};
}

Element FieldTower::add(Element a, Element b) const {
  if (a.level != b.level) throw LevelMismatch("FieldTower::add: level mismatch");
  switch (a.level) {
    case Level::prime: return Element{a.level, (int32_t)((a.code + (int64_t)b.code) % p_)};
    case Level::mid: return Element{a.level, madd(a.code, b.code)};
    case Level::top: {
      if (p_ == 2) return Element{a.level, (int32_t)(a.code ^ b.code)};
      int64_t ra = a.code, rb = b.code, res = 0, mult = 1;
      for (int i = 0; i < m_; ++i) {
        res += (int64_t)madd((int32_t)(ra % q_), (int32_t)(rb % q_)) * mult;
        ra /= q_; rb /= q_; mult *= q_;
      }
      return Element{a.level, (int32_t)res};
    }
  }
  throw Error("unreachable");
}

Element FieldTower::neg(Element a) const {
  switch (a.level) {
    case Level::prime: return Element{a.level, (int32_t)((p_ - a.code) % p_)};
    case Level::mid: return Element{a.level, mid_neg_[a.code]};
    case Level::top: {
      if (p_ == 2) return a;
      int64_t ra = a.code, res = 0, mult = 1;
      for (int i = 0; i < m_; ++i) {
        res += (int64_t)mid_neg_[ra % q_] * mult;
        ra /= q_; mult *= q_;
      }
      return Element{a.level, (int32_t)res};
    }
  }
  throw Error("unreachable");
}

Element FieldTower::sub(Element a, Element b) const { return add(a, neg(b)); }

Element FieldTower::mul(Element a, Element b) const {
  if (a.level != b.level) throw LevelMismatch("FieldTower::mul: level mismatch");
  switch (a.level) {
    case Level::prime: return Element{a.level, (int32_t)(((int64_t)a.code * b.code) % p_)};
    case Level::mid: return Element{a.level, mmul(a.code, b.code)};
    case Level::top: {
      if (a.code == 0 || b.code == 0) return Element{a.level, 0};
      int64_t l = (int64_t)top_log_[a.code] + top_log_[b.code];
      return Element{a.level, top_exp_[l % (Q_ - 1)]};
    }
  }
  throw Error("unreachable");
}

Element FieldTower::inv(Element a) const {
  if (a.code == 0) throw DivisionByZero("FieldTower::inv: zero element");
  switch (a.level) {
    case Level::prime: {
      Element t = inv(Element{Level::top, a.code});  // F_p sits inside the top field
      return Element{Level::prime, t.code};
    }
    case Level::mid: return Element{a.level, mid_inv_[a.code]};
    case Level::top: {
      int64_t l = ((int64_t)(Q_ - 1) - top_log_[a.code]) % (Q_ - 1);
      return Element{a.level, top_exp_[l]};
    }
  }
  throw Error("unreachable");
}

Element FieldTower::div(Element a, Element b) const {
  if (a.level != b.level) throw LevelMismatch("FieldTower::div: level mismatch");
  return mul(a, inv(b));
}

Element FieldTower::pow(Element a, int64_t e) const {
  if (e < 0) return pow(inv(a), -e);
  if (a.code == 0) return e == 0 ? one(a.level) : zero(a.level);
  if (a.level == Level::top) {
    int64_t ord = Q_ - 1;
    int64_t l = ((int64_t)top_log_[a.code] * (e % ord)) % ord;
    return Element{a.level, top_exp_[l]};
  }
  Element r = one(a.level), base = a;
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

Element FieldTower::frobenius(Element x, int j) const {
  check_level(x, Level::top, "FieldTower::frobenius");
  if (j < 0 || j > m_) throw ParamError("FieldTower::frobenius: exponent out of range");
  if (x.code == 0) return x;
  int64_t ord = Q_ - 1;
  int64_t qj = 1;
  for (int i = 0; i < j; ++i) qj = (qj * (q_ % ord)) % ord;
  int64_t l = ((int64_t)top_log_[x.code] * qj) % ord;
  return Element{Level::top, top_exp_[l]};
}

Element FieldTower::trace(Element x) const {
  check_level(x, Level::top, "FieldTower::trace");
  Element acc = x, t = x;
  for (int j = 1; j < m_; ++j) {
    t = frobenius(t, 1);
    acc = add(acc, t);
  }
  if (!in_subfield(acc)) throw Error("FieldTower::trace: result left the subfield");
  return project_mid(acc);
}

std::vector<Element> FieldTower::coeffs(Element e) const {
  if (e.code < 0 || e.code >= size_of(e.level))
    throw ParamError("FieldTower::coeffs: element code out of range");
  switch (e.level) {
    case Level::prime: return {e};
    case Level::mid: {
      std::vector<Element> out(s_);
      int64_t r = e.code;
      for (int i = 0; i < s_; ++i) { out[i] = Element{Level::prime, (int32_t)(r % p_)}; r /= p_; }
      return out;
    }
    case Level::top: {
      std::vector<Element> out(m_);
      int64_t r = e.code;
      for (int i = 0; i < m_; ++i) { out[i] = Element{Level::mid, (int32_t)(r % q_)}; r /= q_; }
      return out;
    }
  }
  throw Error("unreachable");
}

Element FieldTower::from_coeffs(Level l, const std::vector<Element>& cs) const {
  if ((int)cs.size() != degree_of(l))
    throw BadLength("FieldTower::from_coeffs: wrong coefficient count");
  if (l == Level::prime) {
    check_level(cs[0], Level::prime, "FieldTower::from_coeffs");
    return cs[0];
  }
  Level below = (l == Level::top) ? Level::mid : Level::prime;
  int64_t base = size_of(below);
  int64_t code = 0;
  for (int i = (int)cs.size() - 1; i >= 0; --i) {
    check_level(cs[i], below, "FieldTower::from_coeffs");
    code = code * base + cs[i].code;
  }
  return Element{l, (int32_t)code};
}

std::vector<Element> FieldTower::psi_expand(Element x) const {
  check_level(x, Level::top, "FieldTower::psi_expand");
  return coeffs(x);
}

Element FieldTower::psi_contract(const std::vector<Element>& v) const {
  if ((int)v.size() != m_) throw BadLength("FieldTower::psi_contract: need m coordinates");
  return from_coeffs(Level::top, v);
}

std::vector<Element> FieldTower::psi_expand_vector(const std::vector<Element>& v) const {
  std::vector<Element> out;
  out.reserve(v.size() * m_);
  for (Element x : v) {
    auto cs = psi_expand(x);
    out.insert(out.end(), cs.begin(), cs.end());
  }
  return out;
}

std::vector<Element> FieldTower::psi_contract_vector(const std::vector<Element>& v) const {
  if (v.size() % m_ != 0)
    throw BadLength("FieldTower::psi_contract_vector: length not a multiple of m");
  std::vector<Element> out;
  out.reserve(v.size() / m_);
  for (size_t i = 0; i < v.size(); i += m_)
    out.push_back(psi_contract(std::vector<Element>(v.begin() + i, v.begin() + i + m_)));
  return out;
}

Element FieldTower::random_element(Level l, Rng& rng) const {
  return Element{l, (int32_t)rng.below(size_of(l))};
}

Element FieldTower::random_nonzero(Level l, Rng& rng) const {
  return Element{l, (int32_t)(1 + rng.below(size_of(l) - 1))};
}

std::string FieldTower::descriptor() const {
  std::ostringstream os;
  os << "p=" << p_ << "; qpoly=[";
  for (size_t i = 0; i < qpoly_.size(); ++i) os << (i ? "," : "") << qpoly_[i];
  os << "]; mpoly=[";
  for (size_t i = 0; i < mpoly_.size(); ++i) os << (i ? "," : "") << mpoly_[i];
  os << "]";
  return os.str();
}

namespace {
std::vector<int64_t> parse_int_list(const std::string& s, size_t& pos,
                                    const std::string& key) {
  std::string tag = key + "=[";
  size_t at = s.find(tag, pos);
  if (at == std::string::npos) throw ParseError("descriptor: missing " + key);
  size_t end = s.find(']', at);
  if (end == std::string::npos) throw ParseError("descriptor: unterminated " + key);
  std::vector<int64_t> out;
  std::string body = s.substr(at + tag.size(), end - at - tag.size());
  pos = end + 1;
  if (body.empty()) return out;
  std::istringstream is(body);
  std::string item;
  while (std::getline(is, item, ',')) {
    try {
      size_t used = 0;
      int64_t v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument("");
      out.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("descriptor: bad integer in " + key);
    }
  }
  return out;
}
}  // namespace

FieldTower FieldTower::from_descriptor(const std::string& text) {
  size_t pos = text.find("p=");
  if (pos == std::string::npos) throw ParseError("descriptor: missing p");
  int64_t p = 0;
  try {
    p = std::stoll(text.substr(pos + 2));
  } catch (const std::exception&) {
    throw ParseError("descriptor: bad p");
  }
  size_t cur = pos;
  std::vector<int64_t> qpoly = parse_int_list(text, cur, "qpoly");
  std::vector<int64_t> mpoly = parse_int_list(text, cur, "mpoly");
  try {
    return FieldTower(p, qpoly, mpoly);
  } catch (const ParamError& e) {
    throw ParseError(std::string("descriptor: ") + e.what());
  }
}

std::string FieldTower::to_string(Element e) const {
  if (e.code < 0 || e.code >= size_of(e.level))
    throw ParamError("FieldTower::to_string: element code out of range");
  int n = flat_degree(e.level);
  std::ostringstream os;
  int64_t r = e.code;
  for (int i = 0; i < n; ++i) {
    os << (i ? "," : "") << (r % p_);
    r /= p_;
  }
  return os.str();
}

Element FieldTower::parse_element(Level l, const std::string& text) const {
  int n = flat_degree(l);
  std::istringstream is(text);
  std::string item;
  std::vector<int64_t> digits;
  while (std::getline(is, item, ',')) {
    try {
      size_t used = 0;
      int64_t v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument("");
      digits.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("parse_element: bad digit '" + item + "'");
    }
  }
  if ((int)digits.size() != n) throw ParseError("parse_element: wrong digit count");
  int64_t code = 0;
  for (int i = n - 1; i >= 0; --i) {
    if (digits[i] < 0 || digits[i] >= p_) throw ParseError("parse_element: digit out of range");
    code = code * p_ + digits[i];
  }
  return Element{l, (int32_t)code};
}

// ---- polynomials ----

int poly_deg(const Polynomial& f) {
  int d = (int)f.c.size() - 1;
  while (d >= 0 && f.c[d].code == 0) --d;
  return d;
}

bool poly_is_zero(const Polynomial& f) { return poly_deg(f) < 0; }

Polynomial poly_trim(Polynomial f) {
  f.c.resize(poly_deg(f) + 1);
  return f;
}

Polynomial poly_from_codes(Level l, const std::vector<int64_t>& codes) {
  Polynomial f;
  f.level = l;
  for (int64_t c : codes) f.c.push_back(Element{l, (int32_t)c});
  return poly_trim(std::move(f));
}

Polynomial poly_one(Level l) { return Polynomial{l, {Element{l, 1}}}; }

Polynomial poly_x(Level l) { return Polynomial{l, {Element{l, 0}, Element{l, 1}}}; }

namespace {
void check_poly_levels(const Polynomial& a, const Polynomial& b, const char* who) {
  if (a.level != b.level) throw LevelMismatch(std::string(who) + ": level mismatch");
}
}  // namespace

Polynomial poly_add(const FieldTower& t, const Polynomial& a, const Polynomial& b) {
  check_poly_levels(a, b, "poly_add");
  Polynomial r;
  r.level = a.level;
  r.c.resize(std::max(a.c.size(), b.c.size()), t.zero(a.level));
  for (size_t i = 0; i < r.c.size(); ++i) {
    Element x = i < a.c.size() ? a.c[i] : t.zero(a.level);
    Element y = i < b.c.size() ? b.c[i] : t.zero(a.level);
    r.c[i] = t.add(x, y);
  }
  return poly_trim(std::move(r));
}

Polynomial poly_sub(const FieldTower& t, const Polynomial& a, const Polynomial& b) {
  check_poly_levels(a, b, "poly_sub");
  Polynomial nb = b;
  for (auto& e : nb.c) e = t.neg(e);
  return poly_add(t, a, nb);
}

Polynomial poly_mul(const FieldTower& t, const Polynomial& a, const Polynomial& b) {
  check_poly_levels(a, b, "poly_mul");
  int da = poly_deg(a), db = poly_deg(b);
  Polynomial r;
  r.level = a.level;
  if (da < 0 || db < 0) return r;
  r.c.assign(da + db + 1, t.zero(a.level));
  for (int i = 0; i <= da; ++i) {
    if (a.c[i].code == 0) continue;
    for (int j = 0; j <= db; ++j) {
      if (b.c[j].code == 0) continue;
      r.c[i + j] = t.add(r.c[i + j], t.mul(a.c[i], b.c[j]));
    }
  }
  return r;
}

Polynomial poly_scale(const FieldTower& t, const Polynomial& a, Element c) {
  Polynomial r = a;
  for (auto& e : r.c) e = t.mul(e, c);
  return poly_trim(std::move(r));
}

std::pair<Polynomial, Polynomial> poly_divmod(const FieldTower& t,
                                              const Polynomial& a,
                                              const Polynomial& b) {
  check_poly_levels(a, b, "poly_divmod");
  int db = poly_deg(b);
  if (db < 0) throw DivisionByZero("poly_divmod: zero divisor");
  Polynomial rem = poly_trim(a);
  Polynomial quot;
  quot.level = a.level;
  int da = poly_deg(rem);
  if (da < db) return {quot, rem};
  quot.c.assign(da - db + 1, t.zero(a.level));
  Element lead_inv = t.inv(b.c[db]);
  for (int d = da; d >= db; --d) {
    if ((int)rem.c.size() <= d || rem.c[d].code == 0) continue;
    Element f = t.mul(rem.c[d], lead_inv);
    quot.c[d - db] = f;
    for (int i = 0; i <= db; ++i)
      rem.c[d - db + i] = t.sub(rem.c[d - db + i], t.mul(f, b.c[i]));
  }
  return {poly_trim(std::move(quot)), poly_trim(std::move(rem))};
}

Polynomial poly_mod(const FieldTower& t, const Polynomial& a, const Polynomial& b) {
  return poly_divmod(t, a, b).second;
}

Polynomial poly_monic(const FieldTower& t, const Polynomial& a) {
  int d = poly_deg(a);
  if (d < 0) return a;
  if (a.c[d] == t.one(a.level)) return poly_trim(a);
  return poly_scale(t, poly_trim(a), t.inv(a.c[d]));
}

Polynomial poly_gcd(const FieldTower& t, Polynomial a, Polynomial b) {
  a = poly_trim(std::move(a));
  b = poly_trim(std::move(b));
  while (!poly_is_zero(b)) {
    Polynomial r = poly_mod(t, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(t, a);
}

Polynomial poly_lcm(const FieldTower& t, const Polynomial& a, const Polynomial& b) {
  if (poly_is_zero(a) || poly_is_zero(b)) return Polynomial{a.level, {}};
  Polynomial g = poly_gcd(t, a, b);
  Polynomial prod = poly_mul(t, a, b);
  return poly_monic(t, poly_divmod(t, prod, g).first);
}

Element poly_eval(const FieldTower& t, const Polynomial& f, Element x) {
  if ((int)f.level > (int)x.level)
    throw LevelMismatch("poly_eval: coefficients above the point's level");
  Element acc = t.zero(x.level);
  for (int i = poly_deg(f); i >= 0; --i)
    acc = t.add(t.mul(acc, x), t.lift(f.c[i], x.level));
  return acc;
}

Polynomial poly_pow_mod(const FieldTower& t, Polynomial base, int64_t e,
                        const Polynomial& mod) {
  if (e < 0) throw ParamError("poly_pow_mod: negative exponent");
  Polynomial r = poly_one(base.level);
  base = poly_mod(t, base, mod);
  while (e > 0) {
    if (e & 1) r = poly_mod(t, poly_mul(t, r, base), mod);
    base = poly_mod(t, poly_mul(t, base, base), mod);
    e >>= 1;
  }
  return r;
}

bool poly_is_irreducible(const FieldTower& t, const Polynomial& f0) {
  Polynomial f = poly_monic(t, f0);
  int d = poly_deg(f);
  if (d <= 0) return false;
  if (d == 1) return true;
  int64_t base = t.size_of(f.level);

  int64_t candidates = 0;
  {
    int64_t pw = 1;
    for (int e = 1; e <= d / 2 && candidates <= kTrialDivisionBudget; ++e) {
      if (pw > kTrialDivisionBudget) { candidates = kTrialDivisionBudget + 1; break; }
      pw *= base;
      candidates += pw;
    }
  }

  if (candidates <= kTrialDivisionBudget) {
    for (int e = 1; e <= d / 2; ++e) {
      int64_t count = 1;
      for (int i = 0; i < e; ++i) count *= base;
      for (int64_t v = 0; v < count; ++v) {
        std::vector<int64_t> codes(e + 1, 0);
        int64_t r = v;
        for (int i = 0; i < e; ++i) { codes[i] = r % base; r /= base; }
        codes[e] = 1;
        Polynomial g = poly_from_codes(f.level, codes);
        if (poly_is_zero(poly_mod(t, f, g))) return false;
      }
    }
    return true;
  }

  // Rabin: f irreducible over F_B iff X^{B^d} = X mod f and
  // gcd(X^{B^{d/l}} - X, f) = 1 for every prime l dividing d.
  std::vector<Polynomial> frob(d + 1);
  frob[0] = poly_mod(t, poly_x(f.level), f);
  for (int k = 1; k <= d; ++k)
    frob[k] = poly_pow_mod(t, frob[k - 1], base, f);
  Polynomial x = poly_mod(t, poly_x(f.level), f);
  if (!(poly_sub(t, frob[d], x).c.empty() || poly_is_zero(poly_sub(t, frob[d], x))))
    return false;
  int dd = d;
  for (int l = 2; l <= dd; ++l) {
    if (dd % l != 0) continue;
    while (dd % l == 0) dd /= l;
    Polynomial g = poly_gcd(t, poly_sub(t, frob[d / l], x), f);
    if (poly_deg(g) != 0) return false;
  }
  return true;
}

std::vector<Element> find_roots(const FieldTower& t, const Polynomial& f) {
  if (poly_is_zero(f)) throw ParamError("find_roots: zero polynomial");
  std::vector<Element> roots;
  for (int64_t code = 0; code < t.top_size(); ++code) {
    Element x = t.element(Level::top, code);
    if (poly_eval(t, f, x).code == 0) roots.push_back(x);
  }
  return roots;
}

}  // namespace althull
