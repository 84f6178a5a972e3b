// Exact verification of the power-sum identities behind families f666/f667,
// relation kernels of powers of linear forms, and the kernel-coordinate
// checker for 2d+2 forms.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "keller/constructions.hpp"

namespace keller {

enum class IdentityName { eq666, eq667, eq667h, pl666, pl667 };

inline std::string to_string(IdentityName n) {
  switch (n) {
    case IdentityName::eq666: return "eq666";
    case IdentityName::eq667: return "eq667";
    case IdentityName::eq667h: return "eq667h";
    case IdentityName::pl666: return "pl666";
    case IdentityName::pl667: return "pl667";
  }
  return "";
}

inline const std::vector<IdentityName>& all_identities() {
  static const std::vector<IdentityName> v = {IdentityName::eq666, IdentityName::eq667, IdentityName::eq667h,
                                              IdentityName::pl666, IdentityName::pl667};
  return v;
}

inline IdentityName parse_identity_name(const std::string& s) {
  for (auto n : all_identities())
    if (to_string(n) == s) return n;
  throw ParseError("unknown identity '" + s + "'");
}

inline Rational binomial(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Rational(r);
}

/// Left side minus right side; the identity holds iff this is zero.
inline MultiPoly identity_difference(IdentityName name, unsigned d) {
  if (d < 2) throw PreconditionError("identities require d >= 2");
  switch (name) {
    case IdentityName::eq666: {
      const detail::Ring r{Field::rationals(), 3};
      MultiPoly diff = r.zero();
      for (unsigned i = 0; i <= d; ++i) {
        Scalar k = r.f.from_rational(binomial(d, i) * (i % 2 ? -1 : 1));
        diff += (r.x(1) + r.c(i) * r.x(3)).pow(d).scaled(k);
        diff -= (r.x(2) + r.c(i) * r.x(3)).pow(d).scaled(k);
      }
      return diff;
    }
    case IdentityName::eq667:
    case IdentityName::eq667h: {
      const detail::Ring r{cyclotomic_field(d), 3};
      const Scalar zeta = r.f.generator();
      MultiPoly lhs = r.zero();
      if (name == IdentityName::eq667h) {
        for (unsigned i = 0; i < d; ++i) lhs += (r.x(1).scaled(zeta.pow(i)) + r.x(2)).pow(d).scaled(zeta.pow(i));
        return lhs - (r.x(1).pow(d - 1) * r.x(2)).scaled(r.f.from_int(d * d));
      }
      for (unsigned i = 0; i < d; ++i) {
        MultiPoly base = r.x(1).scaled(zeta.pow(i)) + r.x(2);
        lhs += (base + r.x(3)).pow(d).scaled(zeta.pow(i));
        lhs += (base - r.x(3)).pow(d).scaled(zeta.pow(i));
      }
      return lhs - (r.x(1).pow(d - 1) * r.x(2)).scaled(r.f.from_int(2 * d * d));
    }
    case IdentityName::pl666: {
      const PolyMap h = make_family({FamilyKind::f666, d, std::nullopt, std::nullopt});
      const Field& f = h.field();
      const detail::Ring r{f, h.nvars()};
      MultiPoly rhs = h[2];
      for (unsigned i = 2; i <= d; ++i) rhs += h[i + 1].scaled(f.from_rational(binomial(d, i) * (i % 2 ? -1 : 1)));
      for (unsigned i = 1; i <= d; ++i)
        rhs -= h[i + d + 1].scaled(f.from_rational(binomial(d, i) * (i % 2 ? -1 : 1)));
      return (r.x(1) + r.x(3)).pow(d).scaled(f.from_int(d)) - rhs;
    }
    case IdentityName::pl667: {
      const PolyMap h = make_family({FamilyKind::f667, d, std::nullopt, std::nullopt});
      const Field& f = h.field();
      const detail::Ring r{f, h.nvars()};
      const Scalar zeta = f.generator();
      MultiPoly rhs = h[2].scaled(f.from_int(2 * d * d));
      for (std::size_t j = 4; j <= 2 * d + 2; ++j) rhs -= h[j - 1].scaled(zeta.pow(static_cast<unsigned>(j - 3)));
      return (r.x(1) + r.x(2) + r.x(3)).pow(d) - rhs;
    }
  }
  throw ParseError("unknown identity");
}

inline bool verify_identity(IdentityName name, unsigned d) { return identity_difference(name, d).is_zero(); }

namespace detail {

inline Field forms_field(const std::vector<LinearForm>& forms) {
  for (const auto& a : forms)
    if (!a.coeffs.empty()) return a.coeffs[0].field();
  return Field::rationals();
}

inline std::size_t forms_nvars(const std::vector<LinearForm>& forms) {
  if (forms.empty()) return 0;
  const std::size_t n = forms[0].nvars();
  for (const auto& a : forms)
    if (a.nvars() != n) throw DimensionError("linear forms have different numbers of variables");
  return n;
}

}  // namespace detail

/// Monomial-coefficient matrix of the powers (a_i^t x)^d: one column per form.
inline ScalarMatrix relation_matrix(const std::vector<LinearForm>& forms, unsigned d) {
  const Field f = detail::forms_field(forms);
  detail::forms_nvars(forms);
  std::vector<MultiPoly> powers;
  std::map<Exponents, std::size_t> row_of;
  for (const auto& a : forms) {
    powers.push_back(a.power(f, d));
    for (const auto& [e, c] : powers.back().terms()) row_of.emplace(e, 0);
  }
  std::size_t idx = 0;
  for (auto& [e, r] : row_of) r = idx++;
  ScalarMatrix m(f, row_of.size(), forms.size());
  for (std::size_t j = 0; j < powers.size(); ++j)
    for (const auto& [e, c] : powers[j].terms()) m.at(row_of[e], j) = c;
  return m;
}

/// Reduced echelon basis of {lambda : sum_i lambda_i (a_i^t x)^d = 0}.
inline std::vector<ScalarVector> relation_kernel(const std::vector<LinearForm>& forms, unsigned d) {
  if (forms.empty()) return {};
  return nullspace(relation_matrix(forms, d));
}

/// sum_i lambda_i (a_i^t x)^d expanded exactly.
inline MultiPoly relation_value(const std::vector<LinearForm>& forms, unsigned d, const ScalarVector& lambda) {
  if (lambda.size() != forms.size()) throw DimensionError("relation_value: length mismatch");
  const Field f = detail::forms_field(forms);
  MultiPoly s(f, detail::forms_nvars(forms));
  for (std::size_t i = 0; i < forms.size(); ++i)
    if (!lambda[i].is_zero()) s += forms[i].power(f, d).scaled(lambda[i]);
  return s;
}

struct AlemReport {
  Verdict verdict = Verdict::undecided;
  std::string failure;  // empty, "hypothesis: pairwise independence", "hypothesis: triple independence",
                        // or "conclusion: lambda_1 lambda_2 = 0"
  std::optional<std::pair<std::size_t, std::size_t>> pair;  // 1-based (i, j) or (j, k)
  std::vector<ScalarVector> kernel;
  bool lambda1_nonzero = false;
  bool lambda2_nonzero = false;
};

/// Checks the hypotheses on the 2d+2 forms and then whether every nonzero kernel
/// vector has lambda_1 lambda_2 != 0.
inline AlemReport check_alem_instance(const std::vector<LinearForm>& forms, unsigned d) {
  if (d < 1) throw PreconditionError("check_alem_instance requires d >= 1");
  if (forms.size() != 2 * d + 2) {
    throw DimensionError("check_alem_instance expects 2d+2 = " + std::to_string(2 * d + 2) + " forms");
  }
  const Field f = detail::forms_field(forms);
  const std::size_t n = detail::forms_nvars(forms);
  auto rank_of = [&](std::initializer_list<std::size_t> idx) {
    std::vector<ScalarVector> rows;
    for (auto i : idx) rows.push_back(forms[i - 1].coeffs);
    return rank(ScalarMatrix::from_rows(f, n, rows));
  };
  AlemReport rep;
  rep.verdict = Verdict::fails;
  const std::size_t m = forms.size();
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = i + 1; j <= m; ++j)
      if (rank_of({i, j}) < 2) {
        rep.failure = "hypothesis: pairwise independence";
        rep.pair = {i, j};
        return rep;
      }
  const std::size_t j0 = std::min<std::size_t>(3, static_cast<std::size_t>(d) * d);
  for (std::size_t j = j0; j <= m; ++j)
    for (std::size_t k = 3; k <= d + 2; ++k) {
      const std::size_t want = (j == k || j == k + d) ? 2 : 3;
      if (rank_of({j, k, k + d}) != want) {
        rep.failure = "hypothesis: triple independence";
        rep.pair = {j, k};
        return rep;
      }
    }
  rep.kernel = relation_kernel(forms, d);
  auto coordinate_rank = [&](std::size_t t) {
    std::vector<ScalarVector> col(1);
    for (const auto& v : rep.kernel) col[0].push_back(v[t]);
    if (rep.kernel.empty()) return std::size_t{0};
    return rank(ScalarMatrix::from_rows(f, rep.kernel.size(), col));
  };
  // kernel meets {lambda_t = 0} trivially iff its dimension equals the rank of coordinate t
  rep.lambda1_nonzero = coordinate_rank(0) == rep.kernel.size();
  rep.lambda2_nonzero = coordinate_rank(1) == rep.kernel.size();
  rep.verdict = verdict_of(rep.lambda1_nonzero && rep.lambda2_nonzero);
  if (rep.verdict == Verdict::fails) rep.failure = "conclusion: lambda_1 lambda_2 = 0";
  return rep;
}

/// x1^{d-1} x2 as a combination of d powers of linear forms over Q(zeta_d).
inline std::vector<PurePower> waring_decomposition(unsigned d) {
  if (d < 2) throw PreconditionError("waring_decomposition requires d >= 2");
  const Field f = cyclotomic_field(d);
  const Scalar zeta = f.generator();
  const Scalar inv_d2 = f.from_rational(Rational(1, d * d));
  std::vector<PurePower> terms;
  for (unsigned i = 0; i < d; ++i)
    terms.push_back(PurePower{LinearForm{{zeta.pow(i), f.one()}}, d, zeta.pow(i) * inv_d2});
  return terms;
}

inline bool waring_sufficiency(unsigned d) {
  const auto terms = waring_decomposition(d);
  const Field f = cyclotomic_field(d);
  MultiPoly s(f, 2);
  for (const auto& t : terms) s += t.form.power(f, t.degree).scaled(t.scale);
  return terms.size() == d && s == MultiPoly::variable(f, 2, 0).pow(d - 1) * MultiPoly::variable(f, 2, 1);
}

}  // namespace keller
