// Exact scalars over Q and simple algebraic extensions Q[t]/(m(t)).
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "keller/errors.hpp"

namespace keller {

using Rational = mpq_class;
using RationalPoly = std::vector<Rational>;  // ascending coefficients

/// Parses "p", "-p/q" or "p/q" into a canonical rational.
inline Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0 || r.get_den() == 0) {
    throw ParseError("not a rational number: '" + text + "'");
  }
  r.canonicalize();
  return r;
}

inline std::string rational_string(const Rational& r) { return r.get_str(); }

namespace upoly {

// Dense univariate helpers over Q. Used for reduction modulo min_poly,
// inverses, and the cyclotomic recursion.

inline void trim(RationalPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline RationalPoly mul(const RationalPoly& a, const RationalPoly& b) {
  if (a.empty() || b.empty()) return {};
  RationalPoly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

inline RationalPoly sub(RationalPoly a, const RationalPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

/// Quotient and remainder of a / b; b must be nonzero after trimming.
inline std::pair<RationalPoly, RationalPoly> divmod(RationalPoly a, RationalPoly b) {
  trim(a);
  trim(b);
  if (b.empty()) throw NotInvertibleError("polynomial division by zero");
  if (a.size() < b.size()) return {{}, a};
  const std::size_t shift_max = a.size() - b.size();
  RationalPoly q(shift_max + 1, Rational(0));
  const Rational& lead = b.back();
  for (std::size_t s = shift_max + 1; s-- > 0;) {
    Rational c = a[s + b.size() - 1] / lead;
    q[s] = c;
    if (c == 0) continue;
    for (std::size_t i = 0; i < b.size(); ++i) a[s + i] -= c * b[i];
  }
  trim(a);
  trim(q);
  return {q, a};
}

}  // namespace upoly

class Scalar;

/// Q[t]/(m(t)) for a monic m of degree >= 1. A degree-1 modulus gives plain Q.
/// Reducible moduli are accepted: arithmetic is then in the quotient ring and
/// division fails on zero divisors.
class Field {
 public:
  static Field make(RationalPoly min_poly) {
    upoly::trim(min_poly);
    if (min_poly.size() < 2) throw FieldError("min_poly must have degree >= 1");
    if (min_poly.back() != 1) throw FieldError("min_poly must be monic");
    for (auto& c : min_poly) c.canonicalize();
    return Field(std::make_shared<const RationalPoly>(std::move(min_poly)));
  }

  /// Q, represented with modulus t.
  static Field rationals() {
    static const Field q = make({Rational(0), Rational(1)});
    return q;
  }

  std::size_t degree() const { return min_poly_->size() - 1; }
  const RationalPoly& min_poly() const { return *min_poly_; }
  bool is_rational() const { return degree() == 1; }

  bool operator==(const Field& o) const {
    return min_poly_ == o.min_poly_ || *min_poly_ == *o.min_poly_;
  }
  bool operator!=(const Field& o) const { return !(*this == o); }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_rational(const Rational& q) const;
  Scalar from_int(long v) const;
  /// Residue class of t; in a degree-1 field this is the root -m(0).
  Scalar generator() const;
  /// Interprets an ascending polynomial in t as a field element.
  Scalar from_poly(const RationalPoly& p) const;

 private:
  explicit Field(std::shared_ptr<const RationalPoly> m) : min_poly_(std::move(m)) {}
  std::shared_ptr<const RationalPoly> min_poly_;
};

class Scalar {
 public:
  Scalar() : Scalar(Field::rationals()) {}
  explicit Scalar(Field field) : field_(std::move(field)), coords_(field_.degree(), Rational(0)) {}

  /// Coordinates in the power basis 1, t, ..., t^{deg-1}; length must equal the field degree.
  Scalar(Field field, std::vector<Rational> coords) : field_(std::move(field)), coords_(std::move(coords)) {
    if (coords_.size() != field_.degree()) {
      throw DimensionError("scalar has " + std::to_string(coords_.size()) +
                           " coordinates, field degree is " + std::to_string(field_.degree()));
    }
    for (auto& c : coords_) c.canonicalize();
  }

  const Field& field() const { return field_; }
  const std::vector<Rational>& coords() const { return coords_; }

  bool is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return c == 0; });
  }
  bool is_one() const {
    if (coords_[0] != 1) return false;
    return std::all_of(coords_.begin() + 1, coords_.end(), [](const Rational& c) { return c == 0; });
  }
  /// True when the value lies in the prime field Q (all higher coordinates zero).
  bool is_rational() const {
    return std::all_of(coords_.begin() + 1, coords_.end(), [](const Rational& c) { return c == 0; });
  }
  const Rational& rational_part() const { return coords_[0]; }

  Scalar& operator+=(const Scalar& o) {
    check_same(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    check_same(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    check_same(o);
    if (coords_.size() == 1) {
      coords_[0] *= o.coords_[0];
      return *this;
    }
    coords_ = reduce(upoly::mul(trimmed(coords_), trimmed(o.coords_)));
    return *this;
  }
  Scalar& operator/=(const Scalar& o) {
    check_same(o);
    return *this *= o.inverse();
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const {
    Scalar r = *this;
    for (auto& c : r.coords_) c = -c;
    return r;
  }

  Scalar& operator*=(const Rational& q) {
    for (auto& c : coords_) c *= q;
    return *this;
  }
  friend Scalar operator*(Scalar a, const Rational& q) { return a *= q; }

  bool operator==(const Scalar& o) const { return field_ == o.field_ && coords_ == o.coords_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  /// Multiplicative inverse modulo min_poly via the extended Euclidean algorithm.
  Scalar inverse() const {
    if (is_zero()) throw NotInvertibleError("not invertible modulo min_poly: zero");
    if (coords_.size() == 1) return Scalar(field_, {1 / coords_[0]});
    // Invariant: s_k * a == r_k (mod m).
    RationalPoly r0 = field_.min_poly(), r1 = trimmed(coords_);
    RationalPoly s0, s1 = {Rational(1)};
    while (r1.size() > 1) {
      auto [q, rem] = upoly::divmod(r0, r1);
      RationalPoly s2 = upoly::sub(s0, upoly::mul(q, s1));
      r0 = std::move(r1);
      r1 = std::move(rem);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    if (r1.empty()) throw NotInvertibleError("not invertible modulo min_poly: zero divisor");
    Rational c = 1 / r1[0];
    for (auto& v : s1) v *= c;
    return Scalar(field_, reduce(std::move(s1)));
  }

  Scalar pow(unsigned long k) const {
    Scalar result = field_.one(), base = *this;
    while (k > 0) {
      if (k & 1UL) result *= base;
      k >>= 1UL;
      if (k > 0) base *= base;
    }
    return result;
  }

  /// Rational coordinates joined as "a + b*t + ..." for diagnostics.
  std::string to_string() const {
    if (coords_.size() == 1) return coords_[0].get_str();
    std::string out;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (coords_[i] == 0) continue;
      if (!out.empty()) out += " + ";
      out += "(" + coords_[i].get_str() + ")";
      if (i == 1) out += "*t";
      if (i > 1) out += "*t^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
  }

 private:
  friend class Field;

  void check_same(const Scalar& o) const {
    if (field_ != o.field_) throw FieldMismatchError("scalar operands live in different fields");
  }

  static RationalPoly trimmed(RationalPoly p) {
    upoly::trim(p);
    return p;
  }

  /// Remainder modulo the (monic) min_poly, padded to the field degree.
  std::vector<Rational> reduce(RationalPoly p) const {
    const RationalPoly& m = field_.min_poly();
    const std::size_t deg = m.size() - 1;
    for (std::size_t k = p.size(); k-- > deg;) {
      if (p[k] == 0) continue;
      Rational c = p[k];
      for (std::size_t i = 0; i <= deg; ++i) p[k - deg + i] -= c * m[i];
    }
    p.resize(deg, Rational(0));
    return p;
  }

  Field field_;
  std::vector<Rational> coords_;
};

inline Scalar Field::zero() const { return Scalar(*this); }
inline Scalar Field::one() const { return from_rational(1); }
inline Scalar Field::from_rational(const Rational& q) const {
  Scalar s(*this);
  s.coords_[0] = q;
  s.coords_[0].canonicalize();
  return s;
}
inline Scalar Field::from_int(long v) const { return from_rational(Rational(v)); }
inline Scalar Field::from_poly(const RationalPoly& p) const {
  Scalar s(*this);
  s.coords_ = s.reduce(p);
  return s;
}
inline Scalar Field::generator() const { return from_poly({Rational(0), Rational(1)}); }

/// Ascending coefficients of the d-th cyclotomic polynomial.
inline RationalPoly cyclotomic(unsigned d) {
  if (d == 0) throw std::invalid_argument("cyclotomic: d must be positive");
  // Phi_d = (t^d - 1) / prod_{e | d, e < d} Phi_e
  RationalPoly num(d + 1, Rational(0));
  num[0] = -1;
  num[d] = 1;
  for (unsigned e = 1; e < d; ++e) {
    if (d % e != 0) continue;
    auto [q, r] = upoly::divmod(num, cyclotomic(e));
    num = std::move(q);
  }
  return num;
}

/// Q(zeta_d) with zeta_d the class of t modulo Phi_d.
inline Field cyclotomic_field(unsigned d) { return Field::make(cyclotomic(d)); }

/// Image of a Q-scalar (any degree-1 field element) in another field.
inline Scalar embed_rational(const Scalar& s, const Field& target) {
  if (s.field() == target) return s;
  if (!s.field().is_rational()) {
    throw FieldMismatchError("only elements of a degree-1 field can be embedded");
  }
  return target.from_rational(s.coords()[0]);
}

}  // namespace keller
