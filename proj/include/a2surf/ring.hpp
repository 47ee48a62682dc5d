#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace a2surf {

using BigInt = boost::multiprecision::cpp_int;

struct NotDivisible : std::runtime_error {
  NotDivisible() : std::runtime_error("polynomial is not exactly divisible") {}
};

namespace detail {

inline std::string monomial_text(const BigInt& absc, int e, const char* var) {
  std::string v = var;
  if (e == 0) return absc.str();
  std::string m = (e == 1) ? v : v + "^" + std::to_string(e);
  if (absc == 1) return m;
  return absc.str() + "*" + m;
}

// Joins signed terms as "t0 + t1 - t2".
inline std::string join_terms(const std::vector<std::pair<BigInt, std::string>>& parts) {
  if (parts.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [c, body] : parts) {
    if (first) {
      out += (c < 0) ? "-" + body : body;
      first = false;
    } else {
      out += (c < 0) ? " - " : " + ";
      out += body;
    }
  }
  return out;
}

}  // namespace detail

// Integer Laurent polynomial in a, stored densely from the lowest exponent.
class LaurentA {
 public:
  LaurentA() = default;
  LaurentA(long long c) {  // NOLINT: integers embed as constants
    if (c != 0) { lo_ = 0; c_.push_back(BigInt(c)); }
  }
  static LaurentA monomial(const BigInt& c, int e) {
    LaurentA p;
    if (c != 0) { p.lo_ = e; p.c_.push_back(c); }
    return p;
  }
  static LaurentA a_pow(int e) { return monomial(1, e); }
  static LaurentA from_terms(const std::map<int, BigInt>& t) {
    LaurentA p;
    if (t.empty()) return p;
    p.lo_ = t.begin()->first;
    p.c_.assign(t.rbegin()->first - p.lo_ + 1, BigInt(0));
    for (const auto& [e, c] : t) p.c_[e - p.lo_] += c;
    p.trim();
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(c_.size()) - 1; }
  BigInt coeff(int e) const {
    if (c_.empty() || e < lo_ || e > hi()) return 0;
    return c_[e - lo_];
  }
  std::vector<std::pair<int, BigInt>> terms() const {
    std::vector<std::pair<int, BigInt>> t;
    for (size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) t.emplace_back(lo_ + static_cast<int>(i), c_[i]);
    return t;
  }

  LaurentA& operator+=(const LaurentA& q) { add_scaled(q, 1); return *this; }
  LaurentA& operator-=(const LaurentA& q) { add_scaled(q, -1); return *this; }
  friend LaurentA operator+(LaurentA p, const LaurentA& q) { return p += q; }
  friend LaurentA operator-(LaurentA p, const LaurentA& q) { return p -= q; }
  friend LaurentA operator-(LaurentA p) {
    for (auto& c : p.c_) c = -c;
    return p;
  }
  friend LaurentA operator*(const LaurentA& p, const LaurentA& q) {
    LaurentA r;
    if (p.is_zero() || q.is_zero()) return r;
    r.lo_ = p.lo_ + q.lo_;
    r.c_.assign(p.c_.size() + q.c_.size() - 1, BigInt(0));
    for (size_t i = 0; i < p.c_.size(); ++i) {
      if (p.c_[i] == 0) continue;
      for (size_t j = 0; j < q.c_.size(); ++j) r.c_[i + j] += p.c_[i] * q.c_[j];
    }
    r.trim();
    return r;
  }
  LaurentA& operator*=(const LaurentA& q) { return *this = *this * q; }
  friend bool operator==(const LaurentA& p, const LaurentA& q) {
    return p.c_ == q.c_ && (p.c_.empty() || p.lo_ == q.lo_);
  }
  friend bool operator!=(const LaurentA& p, const LaurentA& q) { return !(p == q); }

  LaurentA pow(unsigned n) const {
    LaurentA r(1), b = *this;
    while (n) {
      if (n & 1u) r *= b;
      n >>= 1u;
      if (n) b *= b;
    }
    return r;
  }
  // Multiplies by a^k.
  LaurentA shifted(int k) const {
    LaurentA r = *this;
    if (!r.is_zero()) r.lo_ += k;
    return r;
  }
  // Substitutes a -> a^-1.
  LaurentA mirror() const {
    LaurentA r;
    if (is_zero()) return r;
    r.c_.assign(c_.rbegin(), c_.rend());
    r.lo_ = -hi();
    return r;
  }
  // Substitutes a -> a^k for k > 0.
  LaurentA substitute_power(int k) const {
    std::map<int, BigInt> t;
    for (const auto& [e, c] : terms()) t[e * k] += c;
    return from_terms(t);
  }
  bool is_constant() const { return is_zero() || (c_.size() == 1 && lo_ == 0); }
  BigInt constant_value() const { return coeff(0); }

  // Terms in ascending exponent order, e.g. "a^-24 + a^-18 + a^-6".
  std::string str(const char* var = "a") const {
    std::vector<std::pair<BigInt, std::string>> parts;
    for (const auto& [e, c] : terms()) parts.emplace_back(c, detail::monomial_text(abs(c), e, var));
    return detail::join_terms(parts);
  }

 private:
  void add_scaled(const LaurentA& q, int s) {
    if (q.is_zero()) return;
    if (is_zero()) {
      *this = q;
      if (s < 0) for (auto& c : c_) c = -c;
      return;
    }
    int nlo = std::min(lo_, q.lo_), nhi = std::max(hi(), q.hi());
    if (nlo < lo_) c_.insert(c_.begin(), lo_ - nlo, BigInt(0));
    lo_ = nlo;
    c_.resize(nhi - nlo + 1, BigInt(0));
    for (size_t j = 0; j < q.c_.size(); ++j) {
      auto& t = c_[q.lo_ - lo_ + j];
      if (s > 0) t += q.c_[j]; else t -= q.c_[j];
    }
    trim();
  }
  void trim() {
    size_t b = 0;
    while (b < c_.size() && c_[b] == 0) ++b;
    if (b == c_.size()) { c_.clear(); lo_ = 0; return; }
    size_t e = c_.size();
    while (c_[e - 1] == 0) --e;
    c_.erase(c_.begin() + e, c_.end());
    c_.erase(c_.begin(), c_.begin() + b);
    lo_ += static_cast<int>(b);
  }

  int lo_ = 0;
  std::vector<BigInt> c_;
};

enum class Constant { A, B, DELTA };

inline LaurentA named_constant(Constant which) {
  switch (which) {
    case Constant::A: return LaurentA::a_pow(-6) + 1 + LaurentA::a_pow(6);
    case Constant::B: return LaurentA::a_pow(-3) + LaurentA::a_pow(3);
    case Constant::DELTA: {
      LaurentA A = named_constant(Constant::A);
      return A * A - 1;
    }
  }
  return {};
}

inline const LaurentA& circle_value() {
  static const LaurentA v = named_constant(Constant::A);
  return v;
}
inline const LaurentA& bigon_value() {
  static const LaurentA v = named_constant(Constant::B);
  return v;
}

// Exact division in Z[a, a^-1]; throws NotDivisible.
inline LaurentA exact_div(const LaurentA& p, const LaurentA& q) {
  if (q.is_zero()) throw std::invalid_argument("division by zero polynomial");
  LaurentA r = p, quot;
  const BigInt ql = q.coeff(q.lo());
  while (!r.is_zero()) {
    int t = r.lo() - q.lo();
    if (t > p.hi() - q.hi()) throw NotDivisible();
    BigInt rl = r.coeff(r.lo());
    if (rl % ql != 0) throw NotDivisible();
    LaurentA m = LaurentA::monomial(rl / ql, t);
    quot += m;
    r -= m * q;
  }
  return quot;
}

inline bool divides(const LaurentA& q, const LaurentA& p) {
  try {
    exact_div(p, q);
    return true;
  } catch (const NotDivisible&) {
    return false;
  }
}

// Bivariate key (x-degree, y-degree).
using XY = std::pair<int, int>;

namespace detail {
inline std::string xy_text(const XY& k) {
  return "x^" + std::to_string(k.first) + "*y^" + std::to_string(k.second);
}
}  // namespace detail

// Polynomial in x, y with LaurentA coefficients.
class SurfacePoly {
 public:
  SurfacePoly() = default;
  SurfacePoly(const LaurentA& c) { add(XY{0, 0}, c); }  // NOLINT
  static SurfacePoly term(const LaurentA& c, int i, int j) {
    SurfacePoly p;
    p.add(XY{i, j}, c);
    return p;
  }
  static SurfacePoly x() { return term(1, 1, 0); }
  static SurfacePoly y() { return term(1, 0, 1); }

  void add(const XY& k, const LaurentA& c) {
    if (c.is_zero()) return;
    auto it = t_.find(k);
    if (it == t_.end()) {
      t_.emplace(k, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }
  const std::map<XY, LaurentA>& terms() const { return t_; }
  LaurentA coeff(int i, int j) const {
    auto it = t_.find(XY{i, j});
    return it == t_.end() ? LaurentA() : it->second;
  }
  bool is_zero() const { return t_.empty(); }

  SurfacePoly& operator+=(const SurfacePoly& q) {
    for (const auto& [k, c] : q.t_) add(k, c);
    return *this;
  }
  SurfacePoly& operator-=(const SurfacePoly& q) {
    for (const auto& [k, c] : q.t_) add(k, -c);
    return *this;
  }
  friend SurfacePoly operator+(SurfacePoly p, const SurfacePoly& q) { return p += q; }
  friend SurfacePoly operator-(SurfacePoly p, const SurfacePoly& q) { return p -= q; }
  friend SurfacePoly operator*(const SurfacePoly& p, const SurfacePoly& q) {
    SurfacePoly r;
    for (const auto& [k1, c1] : p.t_)
      for (const auto& [k2, c2] : q.t_) r.add(XY{k1.first + k2.first, k1.second + k2.second}, c1 * c2);
    return r;
  }
  friend SurfacePoly operator*(const LaurentA& c, const SurfacePoly& p) {
    SurfacePoly r;
    for (const auto& [k, v] : p.t_) r.add(k, c * v);
    return r;
  }
  friend bool operator==(const SurfacePoly& p, const SurfacePoly& q) { return p.t_ == q.t_; }
  friend bool operator!=(const SurfacePoly& p, const SurfacePoly& q) { return !(p == q); }

  SurfacePoly pow(unsigned n) const {
    SurfacePoly r(LaurentA(1));
    for (unsigned i = 0; i < n; ++i) r = r * *this;
    return r;
  }
  SurfacePoly mirror() const {
    SurfacePoly r;
    for (const auto& [k, c] : t_) r.add(k, c.mirror());
    return r;
  }
  // Divides every coefficient exactly by q; throws NotDivisible.
  SurfacePoly exact_div_coeffs(const LaurentA& q) const {
    SurfacePoly r;
    for (const auto& [k, c] : t_) r.add(k, exact_div(c, q));
    return r;
  }
  // Total degree when homogeneous, -1 otherwise (and for zero).
  int homogeneous_degree() const {
    int d = -1;
    for (const auto& [k, c] : t_) {
      int s = k.first + k.second;
      if (d >= 0 && s != d) return -1;
      d = s;
    }
    return d;
  }

  // "(a^-6 + 1 + a^6)*x^2*y^0 + ..." with keys in lexicographic order.
  std::string str() const {
    if (t_.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : t_) {
      if (!out.empty()) out += " + ";
      out += "(" + c.str() + ")*" + detail::xy_text(k);
    }
    return out;
  }

 private:
  std::map<XY, LaurentA> t_;
};

enum class Modulus { A6P1, A12P1, PHI18 };

inline int modulus_degree(Modulus m) {
  switch (m) {
    case Modulus::A6P1: return 6;
    case Modulus::A12P1: return 12;
    case Modulus::PHI18: return 6;
  }
  return 0;
}

inline const char* modulus_name(Modulus m) {
  switch (m) {
    case Modulus::A6P1: return "a6+1";
    case Modulus::A12P1: return "a12+1";
    case Modulus::PHI18: return "phi18";
  }
  return "?";
}

// Accepts a6+1, a^6+1, a12+1, a^12+1 and phi18.
inline Modulus parse_modulus(std::string s) {
  s.erase(std::remove(s.begin(), s.end(), '^'), s.end());
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "a6+1") return Modulus::A6P1;
  if (s == "a12+1") return Modulus::A12P1;
  if (s == "phi18" || s == "a6-a3+1") return Modulus::PHI18;
  throw std::invalid_argument("unknown modulus " + s);
}

// Monic modulus polynomial, coefficients of a^0..a^deg.
inline std::vector<int> modulus_poly(Modulus m) {
  switch (m) {
    case Modulus::A6P1: return {1, 0, 0, 0, 0, 0, 1};
    case Modulus::A12P1: return {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1};
    case Modulus::PHI18: return {1, 0, 0, -1, 0, 0, 1};
  }
  return {};
}

// Element of Z[a]/(m(a)), stored by its canonical representative of degree < deg m.
class QuotientElem {
 public:
  explicit QuotientElem(Modulus m = Modulus::A6P1) : m_(m), c_(modulus_degree(m), BigInt(0)) {}
  QuotientElem(Modulus m, long long v) : QuotientElem(m) { c_[0] = v; }

  // Reduces an ordinary polynomial (exponents >= 0) by long division.
  static QuotientElem from_poly(Modulus m, std::vector<BigInt> p) {
    const auto mod = modulus_poly(m);
    const int d = modulus_degree(m);
    for (int e = static_cast<int>(p.size()) - 1; e >= d; --e) {
      if (p[e] == 0) continue;
      BigInt c = p[e];
      for (int k = 0; k <= d; ++k) p[e - d + k] -= c * mod[k];
    }
    QuotientElem q(m);
    for (int i = 0; i < d && i < static_cast<int>(p.size()); ++i) q.c_[i] = p[i];
    return q;
  }
  static QuotientElem a(Modulus m) {
    std::vector<BigInt> p{0, 1};
    return from_poly(m, p);
  }
  // Inverse of a, computed once per modulus and cached.
  static const QuotientElem& a_inverse(Modulus m) {
    static const std::array<QuotientElem, 3> inv = [] {
      std::array<QuotientElem, 3> r{QuotientElem(Modulus::A6P1), QuotientElem(Modulus::A12P1),
                                    QuotientElem(Modulus::PHI18)};
      for (int i = 0; i < 3; ++i) {
        Modulus mm = static_cast<Modulus>(i);
        // m(a) = a*h(a) + m0 with m0 = 1, so a * (-h(a)) = 1.
        auto mod = modulus_poly(mm);
        std::vector<BigInt> h(mod.size() - 1);
        for (size_t k = 1; k < mod.size(); ++k) h[k - 1] = -mod[k];
        r[i] = from_poly(mm, h);
      }
      return r;
    }();
    return inv[static_cast<int>(m)];
  }
  static QuotientElem a_power(Modulus m, int e) {
    QuotientElem base = e >= 0 ? a(m) : a_inverse(m);
    QuotientElem r(m, 1);
    for (int k = 0; k < std::abs(e); ++k) r = r * base;
    return r;
  }

  Modulus modulus() const { return m_; }
  const std::vector<BigInt>& coeffs() const { return c_; }
  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const BigInt& v) { return v == 0; });
  }
  bool is_integer() const {
    return std::all_of(c_.begin() + 1, c_.end(), [](const BigInt& v) { return v == 0; });
  }

  friend QuotientElem operator+(QuotientElem p, const QuotientElem& q) {
    check(p, q);
    for (size_t i = 0; i < p.c_.size(); ++i) p.c_[i] += q.c_[i];
    return p;
  }
  friend QuotientElem operator-(QuotientElem p, const QuotientElem& q) {
    check(p, q);
    for (size_t i = 0; i < p.c_.size(); ++i) p.c_[i] -= q.c_[i];
    return p;
  }
  friend QuotientElem operator-(QuotientElem p) {
    for (auto& v : p.c_) v = -v;
    return p;
  }
  friend QuotientElem operator*(const QuotientElem& p, const QuotientElem& q) {
    check(p, q);
    std::vector<BigInt> r(p.c_.size() + q.c_.size() - 1, BigInt(0));
    for (size_t i = 0; i < p.c_.size(); ++i)
      for (size_t j = 0; j < q.c_.size(); ++j) r[i + j] += p.c_[i] * q.c_[j];
    return from_poly(p.m_, r);
  }
  QuotientElem& operator+=(const QuotientElem& q) { return *this = *this + q; }
  friend bool operator==(const QuotientElem& p, const QuotientElem& q) {
    return p.m_ == q.m_ && p.c_ == q.c_;
  }
  friend bool operator!=(const QuotientElem& p, const QuotientElem& q) { return !(p == q); }

  std::string str() const {
    std::vector<std::pair<BigInt, std::string>> parts;
    for (size_t e = 0; e < c_.size(); ++e)
      if (c_[e] != 0) parts.emplace_back(c_[e], detail::monomial_text(abs(c_[e]), static_cast<int>(e), "a"));
    return detail::join_terms(parts);
  }

 private:
  static void check(const QuotientElem& p, const QuotientElem& q) {
    if (p.m_ != q.m_) throw std::invalid_argument("quotient elements over different moduli");
  }
  Modulus m_;
  std::vector<BigInt> c_;
};

// Polynomial in x, y over a quotient ring.
class QuotientPoly {
 public:
  explicit QuotientPoly(Modulus m = Modulus::A6P1) : m_(m) {}
  Modulus modulus() const { return m_; }
  void add(const XY& k, const QuotientElem& c) {
    if (c.is_zero()) return;
    auto it = t_.find(k);
    if (it == t_.end()) {
      t_.emplace(k, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }
  const std::map<XY, QuotientElem>& terms() const { return t_; }
  QuotientElem coeff(int i, int j) const {
    auto it = t_.find(XY{i, j});
    return it == t_.end() ? QuotientElem(m_) : it->second;
  }
  friend QuotientPoly operator*(const QuotientPoly& p, const QuotientPoly& q) {
    QuotientPoly r(p.m_);
    for (const auto& [k1, c1] : p.t_)
      for (const auto& [k2, c2] : q.t_) r.add(XY{k1.first + k2.first, k1.second + k2.second}, c1 * c2);
    return r;
  }
  friend QuotientPoly operator+(QuotientPoly p, const QuotientPoly& q) {
    for (const auto& [k, c] : q.t_) p.add(k, c);
    return p;
  }
  friend bool operator==(const QuotientPoly& p, const QuotientPoly& q) {
    return p.m_ == q.m_ && p.t_ == q.t_;
  }
  friend bool operator!=(const QuotientPoly& p, const QuotientPoly& q) { return !(p == q); }

  // Builds (u*x + v*y)^h with integer u, v.
  static QuotientPoly linear_power(Modulus m, long long u, long long v, int h) {
    QuotientPoly r(m), base(m);
    r.add(XY{0, 0}, QuotientElem(m, 1));
    base.add(XY{1, 0}, QuotientElem(m, u));
    base.add(XY{0, 1}, QuotientElem(m, v));
    for (int i = 0; i < h; ++i) r = r * base;
    return r;
  }
  QuotientPoly scaled(long long s) const {
    QuotientPoly r(m_);
    for (const auto& [k, c] : t_) r.add(k, c * QuotientElem(m_, s));
    return r;
  }

  std::string str() const {
    if (t_.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : t_) {
      if (!out.empty()) out += " + ";
      out += "(" + c.str() + ")*" + detail::xy_text(k);
    }
    return out;
  }

 private:
  Modulus m_;
  std::map<XY, QuotientElem> t_;
};

// Reduction into Z[a]/(m): negative exponents go through the cached inverse of a.
inline QuotientElem quotient_reduce(const LaurentA& p, Modulus m) {
  if (p.is_zero()) return QuotientElem(m);
  if (p.lo() >= 0) {
    std::vector<BigInt> v(p.hi() + 1, BigInt(0));
    for (const auto& [e, c] : p.terms()) v[e] = c;
    return QuotientElem::from_poly(m, v);
  }
  LaurentA shifted = p.shifted(-p.lo());
  std::vector<BigInt> v(shifted.hi() + 1, BigInt(0));
  for (const auto& [e, c] : shifted.terms()) v[e] = c;
  return QuotientElem::from_poly(m, v) * QuotientElem::a_power(m, p.lo());
}

inline QuotientPoly quotient_reduce(const SurfacePoly& p, Modulus m) {
  QuotientPoly r(m);
  for (const auto& [k, c] : p.terms()) r.add(k, quotient_reduce(c, m));
  return r;
}

}  // namespace a2surf
