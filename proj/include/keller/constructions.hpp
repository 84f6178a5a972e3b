// Generators for the concrete maps H studied with the condition chain:
// the (JC-)/(JC) and (JC+)/(*) counterexamples in dimensions 4 and 5, the
// three-variable families separating (*), (**) and (***), their
// non-homogeneous variants, two small maps, and a GZ-pairing instance.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "keller/properties.hpp"

namespace keller {

enum class FamilyKind { n4, n5, f666, f667, nonhomog_n4, nonhomog_n5, small2, small3 };

inline std::string to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::n4: return "n4";
    case FamilyKind::n5: return "n5";
    case FamilyKind::f666: return "f666";
    case FamilyKind::f667: return "f667";
    case FamilyKind::nonhomog_n4: return "nonhomog_n4";
    case FamilyKind::nonhomog_n5: return "nonhomog_n5";
    case FamilyKind::small2: return "small2";
    case FamilyKind::small3: return "small3";
  }
  return "";
}

inline FamilyKind parse_family_kind(const std::string& s) {
  for (auto k : {FamilyKind::n4, FamilyKind::n5, FamilyKind::f666, FamilyKind::f667, FamilyKind::nonhomog_n4,
                 FamilyKind::nonhomog_n5, FamilyKind::small2, FamilyKind::small3})
    if (to_string(k) == s) return k;
  throw ParseError("unknown family '" + s + "'");
}

struct FamilySpec {
  FamilyKind kind = FamilyKind::n4;
  unsigned d = 3;
  std::optional<std::size_t> n;  // truncation, f666/f667 only
  std::optional<Scalar> nu;      // f666/f667 only, default 1
};

inline bool is_truncatable(FamilyKind k) { return k == FamilyKind::f666 || k == FamilyKind::f667; }

/// Natural dimension of the family's map.
inline std::size_t family_dimension(const FamilySpec& s) {
  switch (s.kind) {
    case FamilyKind::n4: return 4;
    case FamilyKind::n5: return 5;
    case FamilyKind::nonhomog_n4: return 3;
    case FamilyKind::nonhomog_n5: return 4;
    case FamilyKind::small2: return 2;
    case FamilyKind::small3: return 3;
    case FamilyKind::f666:
    case FamilyKind::f667: return s.n.value_or(2 * s.d + 2);
  }
  return 0;
}

inline Field family_field(const FamilySpec& s) {
  return s.kind == FamilyKind::f667 ? cyclotomic_field(s.d) : Field::rationals();
}

/// Throws PreconditionError on an invalid degree/dimension/nu combination.
inline void validate(const FamilySpec& s) {
  const unsigned min_d = (s.kind == FamilyKind::n4 || s.kind == FamilyKind::nonhomog_n4) ? 3 : 2;
  if (s.d < min_d) {
    throw PreconditionError("family " + to_string(s.kind) + " requires d >= " + std::to_string(min_d));
  }
  if (!is_truncatable(s.kind)) {
    if (s.n && *s.n != family_dimension(FamilySpec{s.kind, s.d, std::nullopt, std::nullopt})) {
      throw PreconditionError("family " + to_string(s.kind) + " has fixed dimension " +
                              std::to_string(family_dimension(FamilySpec{s.kind, s.d, {}, {}})));
    }
    if (s.nu) throw PreconditionError("nu applies to f666/f667 only");
    return;
  }
  if (s.n && (*s.n < 3 || *s.n > 2 * s.d + 2)) {
    throw PreconditionError("truncation requires 3 <= n <= 2d+2 = " + std::to_string(2 * s.d + 2));
  }
  if (s.nu && s.nu->field() != family_field(s) && !s.nu->field().is_rational()) {
    throw PreconditionError("nu lives in a field other than the family's");
  }
}

namespace detail {

struct Ring {
  Field f;
  std::size_t n;
  MultiPoly x(std::size_t i) const { return MultiPoly::variable(f, n, i - 1); }  // 1-based
  MultiPoly c(long v) const { return MultiPoly::constant(f, n, v); }
  MultiPoly s(const Scalar& v) const { return MultiPoly::constant(embed_rational(v, f), n); }
  MultiPoly zero() const { return MultiPoly(f, n); }
};

inline Scalar family_nu(const FamilySpec& s, const Field& f) {
  return s.nu ? embed_rational(*s.nu, f) : f.one();
}

/// Full 2d+2 component lists.
inline std::vector<MultiPoly> f666_components(const Ring& r, unsigned d, const Scalar& nu) {
  std::vector<MultiPoly> h = {r.zero(), r.x(1).pow(d).scaled(nu), r.x(1).pow(d) - r.x(2).pow(d)};
  for (unsigned i = 2; i <= d; ++i) h.push_back((r.x(1) + r.c(i) * r.x(3)).pow(d));
  for (unsigned i = 1; i <= d; ++i) h.push_back((r.x(2) + r.c(i) * r.x(3)).pow(d));
  return h;
}

inline std::vector<MultiPoly> f667_components(const Ring& r, unsigned d, const Scalar& nu) {
  const Scalar zeta = r.f.generator();
  std::vector<MultiPoly> h = {r.zero(), r.x(1).pow(d).scaled(nu), r.x(1).pow(d - 1) * r.x(2)};
  for (unsigned i = 1; i < d; ++i) h.push_back((r.x(1).scaled(zeta.pow(i)) + r.x(2) + r.x(3)).pow(d));
  for (unsigned i = 0; i < d; ++i) h.push_back((r.x(1).scaled(zeta.pow(i)) + r.x(2) - r.x(3)).pow(d));
  return h;
}

}  // namespace detail

/// The map H of the named family.
inline PolyMap make_family(const FamilySpec& s) {
  validate(s);
  const Field f = family_field(s);
  const std::size_t n = family_dimension(s);
  const detail::Ring r{f, n};
  const unsigned d = s.d;
  std::vector<MultiPoly> h;
  switch (s.kind) {
    case FamilyKind::n4: {
      MultiPoly inv = r.x(1) * r.x(3) - r.x(2) * r.x(4);
      MultiPoly lead = r.x(1).pow(d - 3);
      h = {r.zero(), r.zero(), lead * r.x(2) * inv, lead * r.x(1) * inv};
      break;
    }
    case FamilyKind::n5:
      h = {r.zero(), r.zero(), r.x(2).pow(d - 1) * r.x(4),
           r.x(1).pow(d - 1) * r.x(3) - r.x(2).pow(d - 1) * r.x(5), r.x(1).pow(d - 1) * r.x(4)};
      break;
    case FamilyKind::nonhomog_n4: {
      // n4 with x2 := 1, H2 dropped, variables shifted down
      MultiPoly inv = r.x(1) * r.x(2) - r.x(3);
      MultiPoly lead = r.x(1).pow(d - 3);
      h = {r.zero(), lead * inv, lead * r.x(1) * inv};
      break;
    }
    case FamilyKind::nonhomog_n5: {
      // n5 with x2^{d-1} := x1^{d-2}, H2 dropped, variables shifted down
      MultiPoly a = r.x(1).pow(d - 1), b = r.x(1).pow(d - 2);
      h = {r.zero(), b * r.x(3), a * r.x(2) - b * r.x(4), a * r.x(3)};
      break;
    }
    case FamilyKind::small2: h = {r.zero(), r.x(1).pow(d) - r.x(1).pow(d - 1)}; break;
    case FamilyKind::small3: h = {r.zero(), r.zero(), r.x(1).pow(d) - r.x(1).pow(d - 1)}; break;
    case FamilyKind::f666:
    case FamilyKind::f667: {
      const Scalar nu = detail::family_nu(s, f);
      h = s.kind == FamilyKind::f666 ? detail::f666_components(r, d, nu) : detail::f667_components(r, d, nu);
      h.resize(n);
      break;
    }
  }
  return PolyMap(f, n, std::move(h));
}

/// The explicit certificate at the strongest level established for the family:
/// f666 triplestar (nu != 0) or doublestar (nu = 0); f667 doublestar for d = 2,
/// nu = 0 and star otherwise; small2 star; small3 doublestar. The linear forms of
/// the components H_i, i >= 4, are read off the generated components.
inline StarCertificate family_certificate(const FamilySpec& s) {
  validate(s);
  const PolyMap h = make_family(s);
  const Field& f = h.field();
  const std::size_t n = h.nvars();
  const unsigned d = s.d;
  auto e = [&](std::size_t i) { return unit_vector(f, n, i - 1); };  // 1-based
  auto form = [&](ScalarVector v) { return LinearForm{std::move(v)}; };
  auto scaled = [](ScalarVector v, const Scalar& k) {
    for (auto& x : v) x *= k;
    return v;
  };
  auto add = [](ScalarVector a, const ScalarVector& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
  };
  // (a_i, d, e_i) for the pure-power components i >= 4
  auto tail_triples = [&](StarCertificate& cert) {
    for (std::size_t i = 4; i <= n; ++i) {
      auto pp = is_pure_power(h[i - 1]);
      if (!pp) throw Error("family component " + std::to_string(i) + " is not a pure power (internal error)");
      cert.triples.push_back(StarTriple{pp->form, pp->degree, scaled(e(i), pp->scale)});
    }
  };

  StarCertificate cert;
  switch (s.kind) {
    case FamilyKind::f666: {
      const Scalar nu = detail::family_nu(s, f);
      cert.level = nu.is_zero() ? StarLevel::doublestar : StarLevel::triplestar;
      cert.triples.push_back(StarTriple{form(e(1)), d, add(scaled(e(2), nu), e(3))});
      cert.triples.push_back(StarTriple{form(e(2)), d, scaled(e(3), f.from_int(-1))});
      tail_triples(cert);
      break;
    }
    case FamilyKind::f667: {
      const Scalar nu = detail::family_nu(s, f);
      if (d == 2 && nu.is_zero()) {
        const Scalar quarter = f.from_rational(Rational(1, 4));
        cert.level = StarLevel::doublestar;
        cert.triples.push_back(StarTriple{form(add(e(1), e(2))), 2, scaled(e(3), quarter)});
        cert.triples.push_back(StarTriple{form(add(e(1), scaled(e(2), f.from_int(-1)))), 2, scaled(e(3), -quarter)});
      } else {
        cert.level = StarLevel::star;
        if (!nu.is_zero()) cert.triples.push_back(StarTriple{form(e(1)), d, scaled(e(2), nu)});
        // x1^{d-1} x2 = d^{-2} sum_i zeta^i (zeta^i x1 + x2)^d
        const Scalar zeta = f.generator();
        const Scalar inv_d2 = f.from_rational(Rational(1, d * d));
        for (unsigned i = 0; i < d; ++i) {
          ScalarVector c = add(scaled(e(1), zeta.pow(i)), e(2));
          cert.triples.push_back(StarTriple{form(std::move(c)), d, scaled(e(3), zeta.pow(i) * inv_d2)});
        }
      }
      tail_triples(cert);
      break;
    }
    case FamilyKind::small2:
    case FamilyKind::small3: {
      cert.level = s.kind == FamilyKind::small2 ? StarLevel::star : StarLevel::doublestar;
      cert.triples.push_back(StarTriple{form(e(1)), d, e(n)});
      cert.triples.push_back(StarTriple{form(e(1)), d - 1, scaled(e(n), f.from_int(-1))});
      break;
    }
    default:
      throw PreconditionError("family_certificate: no certificate for family " + to_string(s.kind));
  }
  return cert;
}

/// A GZ-pairing instance: scale * H = B G with B C = I.
struct GZInstance {
  PolyMap h;          // n variables
  PolyMap g;          // N components in N variables
  ScalarMatrix b;     // n x N
  ScalarMatrix c;     // N x n
  Scalar scale;
};

/// A right inverse of B: pivot columns of B receive the inverse of the pivot
/// minor, all other rows of C are zero.
inline ScalarMatrix right_inverse(const ScalarMatrix& b) {
  Echelon ech = rref(b);
  if (ech.pivot_cols.size() != b.rows()) throw NotInvertibleError("matrix does not have full row rank");
  std::vector<ScalarVector> cols;
  for (auto p : ech.pivot_cols) cols.push_back(b.column(p));
  ScalarMatrix minor_inv = inverse(ScalarMatrix::from_columns(b.field(), b.rows(), cols));
  ScalarMatrix c(b.field(), b.cols(), b.rows());
  for (std::size_t r = 0; r < ech.pivot_cols.size(); ++r)
    for (std::size_t j = 0; j < b.rows(); ++j) c.at(ech.pivot_cols[r], j) = minor_inv.at(r, j);
  return c;
}

/// H of (n5) at d = 3 with the 13 cubes G and the 5 x 13 matrix B.
inline GZInstance gz_example() {
  const Field f = Field::rationals();
  const std::size_t big = 13;
  const detail::Ring r{f, big};
  const MultiPoly zero = r.zero();
  auto cube = [](const MultiPoly& p) { return p.pow(3); };
  std::vector<MultiPoly> g = {zero,
                              zero,
                              cube(r.x(4) - r.x(1)),
                              cube(r.x(4) + r.x(1)),
                              cube(r.x(4)),
                              cube(r.x(4) - r.x(2)),
                              cube(r.x(4) + r.x(2)),
                              cube(r.x(3) - r.x(1)),
                              cube(r.x(3) + r.x(1)),
                              cube(r.x(3)),
                              cube(r.x(5) - r.x(2)),
                              cube(r.x(5) + r.x(2)),
                              cube(r.x(5))};
  const std::vector<std::vector<long>> rows = {
      {1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},  {0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, -2, 1, 1, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0, 0, 1, 1, -2, -1, -1, 2},
      {0, 0, 1, 1, -2, 0, 0, 0, 0, 0, 0, 0, 0}};
  ScalarMatrix b(f, 5, big);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < big; ++j) b.at(i, j) = f.from_int(rows[i][j]);
  return GZInstance{make_family({FamilyKind::n5, 3, std::nullopt, std::nullopt}), PolyMap(f, big, std::move(g)), b,
                    right_inverse(b), f.from_int(6)};
}

struct GZReport {
  Verdict verdict = Verdict::undecided;
  std::vector<std::size_t> mismatched_rows;  // rows where scale * H != B G (0-based)
  bool right_inverse_ok = false;
  std::size_t rank_b = 0;
  std::size_t rank_jg = 0;
};

/// Checks scale * H = B G, B C = I, rank B = n, rank J_x G = n exactly.
inline GZReport gz_verify(const GZInstance& inst) {
  const std::size_t n = inst.h.nvars(), big = inst.g.nvars();
  if (inst.h.n_out() != n || inst.g.n_out() != big || inst.b.rows() != n || inst.b.cols() != big ||
      inst.c.rows() != big || inst.c.cols() != n || big < n) {
    throw DimensionError("gz_verify: inconsistent dimensions");
  }
  GZReport rep;
  const PolyMap h_big = inst.h.extend_vars(big);
  for (std::size_t i = 0; i < n; ++i) {
    MultiPoly bg(inst.g.field(), big);
    for (std::size_t j = 0; j < big; ++j)
      if (!inst.b.at(i, j).is_zero()) bg += inst.g[j].scaled(inst.b.at(i, j));
    if (bg != h_big[i].scaled(inst.scale)) rep.mismatched_rows.push_back(i);
  }
  rep.right_inverse_ok = inst.b * inst.c == ScalarMatrix::identity(inst.b.field(), n);
  rep.rank_b = rank(inst.b);
  rep.rank_jg = matrix_rank(jacobian(inst.g, n));
  const bool ok = rep.mismatched_rows.empty() && rep.right_inverse_ok && rep.rank_b == n && rep.rank_jg == n;
  rep.verdict = verdict_of(ok);
  return rep;
}

}  // namespace keller
