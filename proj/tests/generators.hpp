// Seeded random generators for the property tests.
#pragma once

#include <random>
#include <vector>

#include "keller/keller.hpp"

namespace keller::gen {

class Source {
 public:
  explicit Source(std::uint32_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  Rational rational(int bound = 9) {
    Rational r(integer(-bound, bound), integer(1, bound));
    r.canonicalize();
    return r;
  }

  /// Q, Q(i), Q(sqrt 2), Q(zeta_3), Q(zeta_5).
  Field field() {
    switch (integer(0, 4)) {
      case 0: return Field::rationals();
      case 1: return Field::make({1, 0, 1});
      case 2: return Field::make({-2, 0, 1});
      case 3: return cyclotomic_field(3);
      default: return cyclotomic_field(5);
    }
  }

  Scalar scalar(const Field& f, int bound = 9) {
    std::vector<Rational> c;
    for (std::size_t i = 0; i < f.degree(); ++i) c.push_back(coin() || i == 0 ? rational(bound) : Rational(0));
    return Scalar(f, std::move(c));
  }

  Scalar nonzero_scalar(const Field& f, int bound = 9) {
    for (;;) {
      Scalar s = scalar(f, bound);
      if (!s.is_zero()) return s;
    }
  }

  MultiPoly poly(const Field& f, std::size_t nvars, unsigned max_deg = 3, int max_terms = 4) {
    MultiPoly p(f, nvars);
    const int terms = integer(0, max_terms);
    for (int t = 0; t < terms; ++t) {
      Exponents e(nvars, 0);
      unsigned budget = static_cast<unsigned>(integer(0, static_cast<int>(max_deg)));
      for (unsigned k = 0; k < budget; ++k) ++e[static_cast<std::size_t>(integer(0, static_cast<int>(nvars) - 1))];
      p.add_term(std::move(e), scalar(f, 5));
    }
    return p;
  }

  ScalarVector vector(const Field& f, std::size_t n, int bound = 4) {
    ScalarVector v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(f.from_rational(Rational(integer(-bound, bound))));
    return v;
  }

  ScalarVector nonzero_vector(const Field& f, std::size_t n, int bound = 4) {
    for (;;) {
      ScalarVector v = vector(f, n, bound);
      if (!is_zero_vector(v)) return v;
    }
  }

  ScalarMatrix matrix(const Field& f, std::size_t r, std::size_t c, int bound = 5) {
    ScalarMatrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m.at(i, j) = scalar(f, bound);
    return m;
  }

 private:
  std::mt19937 rng_;
};

}  // namespace keller::gen
