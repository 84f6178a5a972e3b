// Deciders and certificate checks for the condition chain
//   (JC-) <= (JC) <= (JC+) <= (*) <= (**) <= (***)
// on maps F = x + H.
#pragma once

#include <future>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "keller/polymap.hpp"

namespace keller {

enum class Verdict { holds, fails, undecided };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::fails: return "fails";
    case Verdict::undecided: return "undecided";
  }
  return "undecided";
}

inline Verdict verdict_of(bool b) { return b ? Verdict::holds : Verdict::fails; }

enum class StarLevel { star, doublestar, triplestar };

inline std::string to_string(StarLevel l) {
  switch (l) {
    case StarLevel::star: return "star";
    case StarLevel::doublestar: return "doublestar";
    case StarLevel::triplestar: return "triplestar";
  }
  return "star";
}

inline StarLevel parse_star_level(const std::string& s) {
  if (s == "star") return StarLevel::star;
  if (s == "doublestar") return StarLevel::doublestar;
  if (s == "triplestar") return StarLevel::triplestar;
  throw ParseError("unknown certificate level '" + s + "'");
}

/// One summand (c^t x)^d b.
struct StarTriple {
  LinearForm c;
  unsigned d = 1;
  ScalarVector b;
};

struct StarCertificate {
  StarLevel level = StarLevel::star;
  std::vector<StarTriple> triples;

  std::size_t size() const { return triples.size(); }
};

/// H split off F = x + H.
inline PolyMap nonlinear_part(const PolyMap& f) {
  if (!f.is_square()) throw DimensionError("map must be square");
  return f - PolyMap::identity(f.field(), f.nvars());
}

inline PolyMap add_identity(const PolyMap& h) { return h + PolyMap::identity(h.field(), h.nvars()); }

/// Sum of (c_i^t x)^{d_i} b_i.
inline PolyMap certificate_sum(const StarCertificate& cert, const Field& field, std::size_t n) {
  std::vector<MultiPoly> comps(n, MultiPoly(field, n));
  for (const auto& t : cert.triples) {
    if (t.c.nvars() != n || t.b.size() != n) throw DimensionError("certificate vector length differs from n");
    MultiPoly pw = t.c.power(field, t.d);
    for (std::size_t i = 0; i < n; ++i)
      if (!t.b[i].is_zero()) comps[i] += pw.scaled(t.b[i]);
  }
  return PolyMap(field, n, std::move(comps));
}

/// Outcome of checking a certificate; clause names the first violated condition.
struct CertificateCheck {
  bool ok = true;
  std::string clause;
};

/// Clauses in order: degree range, sum, orthogonality c_j^t b_i = 0 (i >= j),
/// count N = n-1 (doublestar, triplestar), independence of the b_i (triplestar).
/// Orthogonality failures are reported as "orthogonality (i,j)" with 1-based
/// b-index i and c-index j.
inline CertificateCheck check_star_certificate(const PolyMap& h, const StarCertificate& cert) {
  if (!h.is_square()) throw DimensionError("certificate check needs a square map");
  const std::size_t n = h.nvars();
  const unsigned deg = h.degree();
  for (const auto& t : cert.triples) {
    if (t.c.nvars() != n || t.b.size() != n) throw DimensionError("certificate vector length differs from n");
    if (t.d < 1 || (deg >= 1 && t.d > deg)) return {false, "degree range"};
  }
  if (certificate_sum(cert, h.field(), n) != h) return {false, "sum mismatch"};
  for (std::size_t i = 0; i < cert.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (!dot(cert.triples[j].c.coeffs, cert.triples[i].b).is_zero())
        return {false, "orthogonality (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")"};
  if (cert.level != StarLevel::star && cert.size() + 1 != n) return {false, "count"};
  if (cert.level == StarLevel::triplestar) {
    std::vector<ScalarVector> bs;
    for (const auto& t : cert.triples) bs.push_back(t.b);
    if (rank(ScalarMatrix::from_columns(h.field(), n, bs)) != cert.size()) return {false, "independence"};
  }
  return {};
}

inline bool verify_star_certificate(const PolyMap& h, const StarCertificate& cert) {
  return check_star_certificate(h, cert).ok;
}

inline bool is_keller(const PolyMap& f) {
  if (!f.is_square()) throw DimensionError("is_keller needs a square map");
  MultiPoly det = matrix_det(jacobian(f));
  return det.is_constant() && !det.is_zero();
}

/// x + H with inverse x - H, i.e. H(x - H) = H.
inline bool is_quasi_translation(const PolyMap& f) {
  PolyMap h = nonlinear_part(f);
  PolyMap x_minus_h = PolyMap::identity(f.field(), f.nvars()) - h;
  return h.substitute(x_minus_h) == h;
}

/// Variables of the fresh vector v_i (0-based) after the n original ones.
inline std::vector<std::size_t> fresh_vector_map(std::size_t n, std::size_t i) {
  std::vector<std::size_t> m(n);
  for (std::size_t j = 0; j < n; ++j) m[j] = n + i * n + j;
  return m;
}

/// Sum over i < k of M|_{x = v_i}, with v_i fresh vectors of indeterminates;
/// the result lives in n + k n variables.
inline PolyMatrix sum_of_substitutions(const PolyMatrix& m, std::size_t k) {
  const std::size_t n = m.nvars();
  const std::size_t total = n + k * n;
  PolyMatrix s(m.field(), total, m.rows(), m.cols());
  for (std::size_t i = 0; i < k; ++i) s = s + m.remap(total, fresh_vector_map(n, i));
  return s;
}

/// Concrete points v_1, ..., v_k (possibly over an extension field).
struct PointWitness {
  Field field;
  std::vector<ScalarVector> points;
};

struct SumConditionResult {
  Verdict verdict = Verdict::undecided;
  std::size_t k = 0;
  PolyMatrix sum;          // sum of JF|_{x=v_i}
  MultiPoly determinant;   // its determinant
  std::optional<PointWitness> witness;
  std::string note;
};

namespace detail {

inline bool rational_sqrt(const Rational& q, Rational& root) {
  if (q < 0) return false;
  mpz_class num = q.get_num(), den = q.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0 || mpz_perfect_square_p(den.get_mpz_t()) == 0) return false;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  root = Rational(rn, rd);
  root.canonicalize();
  return true;
}

/// A root of a nonconstant univariate p over Q, as an element of Q or of
/// Q[t]/(q) for a monic divisor q of p.
inline std::pair<Field, Scalar> find_root(RationalPoly p) {
  upoly::trim(p);
  if (p[0] == 0) return {Field::rationals(), Field::rationals().zero()};
  const Field q = Field::rationals();
  if (p.size() == 2) return {q, q.from_rational(-p[0] / p[1])};
  if (p.size() == 3) {
    Rational a = p[2], b = p[1], c = p[0];
    Rational disc = b * b - 4 * a * c, r;
    if (rational_sqrt(disc, r)) return {q, q.from_rational((-b + r) / (2 * a))};
  }
  Rational lead = p.back();
  for (auto& c : p) c /= lead;
  Field ext = Field::make(p);
  return {ext, ext.generator()};
}

}  // namespace detail

/// Searches points v_1 = ... = v_{k-1} = base, v_k = base with coordinate j
/// replaced by an unknown c (base in {e_1, 0}), for a root of the determinant
/// restricted to that line. Only for maps over Q.
inline std::optional<PointWitness> find_sum_witness(const SumConditionResult& r, std::size_t n) {
  if (!r.determinant.field().is_rational()) return std::nullopt;
  const Field q = r.determinant.field();
  const std::size_t total = r.determinant.nvars();
  for (int base_kind = 0; base_kind < 2; ++base_kind) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<MultiPoly> assign;
      for (std::size_t v = 0; v < total; ++v) {
        const bool in_last = v >= n + (r.k - 1) * n;
        const std::size_t coord = (v - n) % n;
        if (v < n) {
          assign.push_back(MultiPoly(q, 1));
        } else if (in_last && coord == j) {
          assign.push_back(MultiPoly::variable(q, 1, 0));
        } else {
          long val = (base_kind == 0 && coord == 0) ? 1 : 0;
          assign.push_back(MultiPoly::constant(q, 1, val));
        }
      }
      MultiPoly uni = r.determinant.substitute(assign);
      if (uni.is_constant()) continue;
      RationalPoly coeffs(uni.degree() + 1, Rational(0));
      for (const auto& [e, c] : uni.terms()) coeffs[e[0]] = c.rational_part();
      auto [field, root] = detail::find_root(coeffs);
      PointWitness w{field, {}};
      for (std::size_t i = 0; i < r.k; ++i) {
        ScalarVector pt(n, field.zero());
        if (base_kind == 0) pt[0] = field.one();
        if (i + 1 == r.k) pt[j] = root;
        w.points.push_back(std::move(pt));
      }
      return w;
    }
  }
  return std::nullopt;
}

/// Value of sum(JF|_{x=v_i}) at concrete points.
inline ScalarMatrix evaluate_jacobian_sum(const PolyMap& f, const PointWitness& w) {
  PolyMatrix jf = jacobian(f);
  ScalarMatrix acc(w.field, f.n_out(), f.nvars());
  for (const auto& pt : w.points) {
    ScalarMatrix val = jf.evaluate(pt);
    for (std::size_t i = 0; i < acc.rows(); ++i)
      for (std::size_t j = 0; j < acc.cols(); ++j) acc.at(i, j) += val.at(i, j);
  }
  return acc;
}

/// det(sum_{i<=k} JF|_{x=v_i}) over k fresh vectors: holds iff it is a nonzero constant.
/// k = deg F - 1 realizes (JC); k = n realizes (JC+).
inline SumConditionResult check_sum_condition(const PolyMap& f, std::size_t k) {
  if (!f.is_square()) throw DimensionError("check_sum_condition needs a square map");
  if (k < 1) throw PreconditionError("check_sum_condition: k must be >= 1");
  SumConditionResult r;
  r.k = k;
  r.sum = sum_of_substitutions(jacobian(f), k);
  r.determinant = matrix_det(r.sum);
  if (r.determinant.is_constant() && !r.determinant.is_zero()) {
    r.verdict = Verdict::holds;
    return r;
  }
  r.verdict = Verdict::fails;
  const std::size_t n = f.nvars();
  if (r.determinant.is_zero()) {
    r.witness = PointWitness{f.field(), std::vector<ScalarVector>(k, ScalarVector(n, f.field().zero()))};
    r.note = "determinant is identically zero";
    return r;
  }
  r.witness = find_sum_witness(r, n);
  if (r.witness && !determinant(evaluate_jacobian_sum(f, *r.witness)).is_zero()) {
    throw Error("sum-condition witness does not re-verify (internal error)");
  }
  r.note = r.witness ? "determinant vanishes at the witness points"
                     : "determinant is a non-constant polynomial (symbolic witness)";
  return r;
}

/// Factors x_i = 0 and x_j = 0 whose Jacobian product is not nilpotent.
struct PairWitness {
  std::size_t first_var = 0, second_var = 0;
  PolyMatrix product;
};

struct StrongNilpotenceResult {
  Verdict verdict = Verdict::undecided;
  std::optional<PolyMatrix> product;  // nonzero symbolic product on failure
  std::optional<PairWitness> pair;
  std::string note;
};

/// JH|_{w_1} ... JH|_{w_n} over fresh vectors w_i, in n + n^2 variables.
inline PolyMatrix generic_jacobian_product(const PolyMatrix& jh) {
  const std::size_t n = jh.nvars();
  const std::size_t total = n + n * n;
  PolyMatrix prod = jh.remap(total, fresh_vector_map(n, 0));
  for (std::size_t i = 1; i < jh.rows() && !prod.is_zero(); ++i) prod = prod * jh.remap(total, fresh_vector_map(n, i));
  return prod;
}

inline std::optional<PairWitness> find_pair_witness(const PolyMatrix& jh) {
  const std::size_t n = jh.nvars();
  const MultiPoly zero(jh.field(), n);
  std::vector<PolyMatrix> restricted;
  for (std::size_t v = 0; v < n; ++v) restricted.push_back(jh.substitute_var(v, zero));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      PolyMatrix p = restricted[a] * restricted[b];
      if (!matrix_is_nilpotent(p)) return PairWitness{a, b, std::move(p)};
    }
  return std::nullopt;
}

/// Strong nilpotence of JH: the product of n copies of JH at independent
/// generic points vanishes.
inline StrongNilpotenceResult is_strongly_nilpotent(const PolyMap& h) {
  if (!h.is_square()) throw DimensionError("is_strongly_nilpotent needs a square map");
  StrongNilpotenceResult r;
  PolyMatrix jh = jacobian(h);
  if (!matrix_is_nilpotent(jh)) {
    r.verdict = Verdict::fails;
    PolyMatrix power = jh;
    for (std::size_t k = 1; k < jh.rows(); ++k) power = power * jh;
    r.product = std::move(power);
    r.note = "Jacobian is not nilpotent";
    return r;
  }
  PolyMatrix prod = generic_jacobian_product(jh);
  if (prod.is_zero()) {
    r.verdict = Verdict::holds;
    return r;
  }
  r.verdict = Verdict::fails;
  r.product = std::move(prod);
  r.pair = find_pair_witness(jh);
  r.note = r.pair ? "product of two Jacobian restrictions is not nilpotent"
                  : "generic product of n Jacobians is nonzero";
  return r;
}

/// Form (*) via the equivalence with strong nilpotence; asserted only when H(0) = 0.
inline StrongNilpotenceResult decide_star(const PolyMap& h) {
  StrongNilpotenceResult r = is_strongly_nilpotent(h);
  if (!h.vanishes_at_origin()) {
    r.note = "H(0) != 0: strong nilpotence " + to_string(r.verdict) + " (triangularizability reading only)";
    r.verdict = Verdict::undecided;
  }
  return r;
}

/// A constant T such that each J(T^{-1} (c_i^t T x)^{d_i} b_i) is strictly lower
/// triangular. The last r columns of T are the b's picked by a backwards
/// independence scan; the first columns complete them with unit vectors.
inline ScalarMatrix triangularization_from_certificate(const StarCertificate& cert, std::size_t n,
                                                       const Field& field) {
  for (std::size_t i = 0; i < cert.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (!dot(cert.triples[j].c.coeffs, cert.triples[i].b).is_zero()) {
        throw PreconditionError("triangularization_from_certificate: orthogonality (" + std::to_string(i + 1) +
                                "," + std::to_string(j + 1) + ") violated");
      }
  std::vector<ScalarVector> picked;  // reverse order
  for (std::size_t i = cert.size(); i-- > 0;) {
    const ScalarVector& b = cert.triples[i].b;
    if (b.size() != n) throw DimensionError("certificate vector length differs from n");
    std::vector<ScalarVector> trial = picked;
    trial.push_back(b);
    if (rank(ScalarMatrix::from_columns(field, n, trial)) == trial.size()) picked = std::move(trial);
  }
  std::vector<ScalarVector> tail(picked.rbegin(), picked.rend());
  std::vector<ScalarVector> head;
  for (std::size_t e = 0; e < n && head.size() + tail.size() < n; ++e) {
    std::vector<ScalarVector> trial = head;
    trial.push_back(unit_vector(field, n, e));
    trial.insert(trial.end(), tail.begin(), tail.end());
    if (rank(ScalarMatrix::from_columns(field, n, trial)) == trial.size()) head.push_back(unit_vector(field, n, e));
  }
  head.insert(head.end(), tail.begin(), tail.end());
  return ScalarMatrix::from_columns(field, n, head);
}

/// The single-term map (c^t x)^d b.
inline PolyMap triple_map(const StarTriple& t, const Field& field) {
  StarCertificate one{StarLevel::star, {t}};
  return certificate_sum(one, field, t.b.size());
}

/// A (*) certificate read off a triangularization: with G = T^{-1} H(T x) having
/// strictly lower triangular Jacobian, each G_{i+1} is split into powers of
/// linear forms l in x_1..x_i, giving c = T^{-t} l and b = lambda T e_{i+1}.
inline StarCertificate certificate_from_triangularization(const PolyMap& h, const ScalarMatrix& t) {
  PolyMap g = conjugate(h, t);
  if (!jacobian(g).is_strictly_lower_triangular()) {
    throw PreconditionError(
        "certificate_from_triangularization: Jacobian of T^{-1} H(T x) is not strictly lower triangular");
  }
  if (!g[0].is_zero()) throw PreconditionError("certificate_from_triangularization: H(0) must be 0");
  const std::size_t n = h.nvars();
  const ScalarMatrix t_inv_t = inverse(t).transpose();
  StarCertificate cert;
  for (std::size_t i = 1; i < n; ++i) {
    for (auto& pp : power_sum_decomposition(g[i])) {
      ScalarVector b = t.column(i);
      for (auto& s : b) s *= pp.scale;
      cert.triples.push_back(StarTriple{LinearForm{t_inv_t * pp.form.coeffs}, pp.degree, std::move(b)});
    }
  }
  return cert;
}

/// Outcome of a desk-scale decision for (**) or (***).
struct LevelDecision {
  Verdict verdict = Verdict::undecided;
  std::optional<StarCertificate> certificate;
  std::string note;
};

/// n = 2: (**) and (***) mean a single term (c^t x)^d b with c^t b = 0, which is
/// decided exhaustively: all components must be multiples mu_i p of one pure power
/// p = lambda (l^t x)^e, and then c = l, b = lambda mu works iff l^t mu = 0.
inline LevelDecision decide_single_term(const PolyMap& h, StarLevel level) {
  LevelDecision r;
  const Field& f = h.field();
  if (h.nvars() != 2 || !h.is_square()) {
    r.note = "single-term oracle needs n = 2";
    return r;
  }
  if (h.is_zero()) {
    r.verdict = Verdict::holds;
    r.certificate = StarCertificate{level, {StarTriple{LinearForm{{f.zero(), f.zero()}}, 1, {f.zero(), f.one()}}}};
    r.note = "H = 0";
    return r;
  }
  std::size_t k = h[0].is_zero() ? 1 : 0;
  const MultiPoly& p = h[k];
  const auto& [pe, pc] = *p.terms().rbegin();
  ScalarVector mu(2, f.zero());
  for (std::size_t i = 0; i < 2; ++i) {
    mu[i] = h[i].coefficient(pe) / pc;
    if (p.scaled(mu[i]) != h[i]) {
      r.verdict = Verdict::fails;
      r.note = "components are not proportional, no single term exists";
      return r;
    }
  }
  auto pp = is_pure_power(p);
  if (!pp) {
    r.verdict = Verdict::fails;
    r.note = "component " + std::to_string(k + 1) + " is not a power of a linear form";
    return r;
  }
  ScalarVector b = mu;
  for (auto& s : b) s *= pp->scale;
  if (!dot(pp->form.coeffs, b).is_zero()) {
    r.verdict = Verdict::fails;
    r.note = "unique single term violates c^t b = 0";
    return r;
  }
  r.verdict = Verdict::holds;
  r.certificate = StarCertificate{level, {StarTriple{pp->form, pp->degree, std::move(b)}}};
  return r;
}

/// Dimension of the span of the components and a generator when it is 1.
inline std::pair<std::size_t, std::optional<MultiPoly>> component_span(const PolyMap& h) {
  // coefficient matrix: one column per component, one row per monomial
  std::map<Exponents, std::size_t> rows;
  for (const auto& c : h.components())
    for (const auto& [e, s] : c.terms()) rows.try_emplace(e, rows.size());
  ScalarMatrix m(h.field(), rows.size(), h.n_out());
  for (std::size_t j = 0; j < h.n_out(); ++j)
    for (const auto& [e, s] : h[j].terms()) m.at(rows[e], j) = s;
  const std::size_t dim = rank(m);
  if (dim != 1) return {dim, std::nullopt};
  for (const auto& c : h.components())
    if (!c.is_zero()) return {1, c};
  return {dim, std::nullopt};
}

/// (***) fails when the components span a line whose generator is not a pure
/// power: independent b_i give each (c_i^t x)^{d_i} as a linear image of H.
inline LevelDecision decide_triplestar_by_span(const PolyMap& h) {
  LevelDecision r;
  auto [dim, gen] = component_span(h);
  if (dim != 1) {
    r.note = "component span has dimension " + std::to_string(dim);
    return r;
  }
  if (!is_pure_power(*gen)) {
    r.verdict = Verdict::fails;
    r.note = "components span a line spanned by a non-power";
  } else {
    r.note = "components span a line spanned by a power of a linear form";
  }
  return r;
}

enum class Condition { keller, nilpotent, strong_nilpotent, quasi, jc_minus, jc, jc_plus, star, doublestar, triplestar };

inline const std::vector<Condition>& all_conditions() {
  static const std::vector<Condition> all = {Condition::keller,  Condition::nilpotent, Condition::strong_nilpotent,
                                             Condition::quasi,   Condition::jc_minus,  Condition::jc,
                                             Condition::jc_plus, Condition::star,      Condition::doublestar,
                                             Condition::triplestar};
  return all;
}

inline std::string to_string(Condition c) {
  switch (c) {
    case Condition::keller: return "keller";
    case Condition::nilpotent: return "nilpotent";
    case Condition::strong_nilpotent: return "strong_nilpotent";
    case Condition::quasi: return "quasi";
    case Condition::jc_minus: return "jc_minus";
    case Condition::jc: return "jc";
    case Condition::jc_plus: return "jc_plus";
    case Condition::star: return "star";
    case Condition::doublestar: return "doublestar";
    case Condition::triplestar: return "triplestar";
  }
  return "";
}

struct ChainReport {
  std::map<Condition, Verdict> verdicts;
  std::map<Condition, std::string> notes;
  std::optional<SumConditionResult> jc, jc_plus;
  std::optional<StrongNilpotenceResult> strong;
  std::optional<PolyMap> inverse;
  std::map<StarLevel, CertificateCheck> certificate_checks;
  std::map<StarLevel, StarCertificate> constructed_certificates;
  std::optional<MultiPoly> keller_determinant;
};

namespace detail {

inline bool level_at_least(StarLevel have, StarLevel want) {
  return static_cast<int>(have) >= static_cast<int>(want);
}

/// Inverse of F when one can be exhibited: quasi-translation, triangular
/// Jacobian, or triangularization through a verified certificate.
inline std::optional<PolyMap> exhibit_inverse(const PolyMap& f, bool quasi, const std::optional<StarCertificate>& cert,
                                              bool cert_ok, std::string& how) {
  const PolyMap h = nonlinear_part(f);
  const PolyMap id = PolyMap::identity(f.field(), f.nvars());
  if (quasi) {
    how = "quasi-translation: inverse x - H";
    return id - h;
  }
  if (jacobian(h).is_strictly_lower_triangular()) {
    how = "triangular inversion";
    return invert_triangular(f);
  }
  if (cert && cert_ok) {
    ScalarMatrix t = triangularization_from_certificate(*cert, f.nvars(), f.field());
    PolyMap g_conj = invert_triangular(add_identity(conjugate(h, t)));
    // F = T F' T^{-1}  =>  F^{-1} = T F'^{-1} T^{-1}
    PolyMap g = conjugate(g_conj, inverse(t));
    if (map_compose(f, g) == id && map_compose(g, f) == id) {
      how = "triangular inversion after conjugation by the certificate's T";
      return g;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Runs the requested checks on F = x + H. Independent checks may run on up to
/// `threads` concurrent tasks; the report does not depend on completion order.
inline ChainReport chain_report(const PolyMap& f, const std::optional<StarCertificate>& cert = std::nullopt,
                                std::set<Condition> requested = {}, unsigned threads = 1) {
  if (!f.is_square()) throw DimensionError("chain_report needs a square map");
  if (requested.empty()) requested.insert(all_conditions().begin(), all_conditions().end());
  auto wants = [&](Condition c) { return requested.count(c) > 0; };
  const PolyMap h = nonlinear_part(f);
  const std::size_t n = f.nvars();
  const std::size_t jc_k = std::max<unsigned>(f.degree(), 2) - 1;
  ChainReport rep;

  const bool need_strong = wants(Condition::strong_nilpotent) || wants(Condition::star);
  const bool need_quasi = wants(Condition::quasi) || wants(Condition::jc_minus);
  const auto policy = threads > 1 ? std::launch::async : std::launch::deferred;

  auto keller_f = std::async(policy, [&] { return matrix_det(jacobian(f)); });
  auto nil_f = std::async(policy, [&] { return matrix_is_nilpotent(jacobian(h)); });
  auto quasi_f = std::async(policy, [&] { return need_quasi && is_quasi_translation(f); });
  auto jc_f = std::async(policy, [&] {
    return wants(Condition::jc) ? std::optional(check_sum_condition(f, jc_k)) : std::nullopt;
  });
  auto jcp_f = std::async(policy, [&] {
    return wants(Condition::jc_plus) ? std::optional(check_sum_condition(f, n)) : std::nullopt;
  });
  auto strong_f = std::async(policy, [&] {
    return need_strong ? std::optional(is_strongly_nilpotent(h)) : std::nullopt;
  });

  if (wants(Condition::keller)) {
    rep.keller_determinant = keller_f.get();
    rep.verdicts[Condition::keller] =
        verdict_of(rep.keller_determinant->is_constant() && !rep.keller_determinant->is_zero());
  }
  if (wants(Condition::nilpotent)) rep.verdicts[Condition::nilpotent] = verdict_of(nil_f.get());
  const bool quasi = quasi_f.get();
  if (wants(Condition::quasi)) rep.verdicts[Condition::quasi] = verdict_of(quasi);
  rep.jc = jc_f.get();
  if (rep.jc) {
    rep.verdicts[Condition::jc] = rep.jc->verdict;
    rep.notes[Condition::jc] = "k = " + std::to_string(jc_k) + (rep.jc->note.empty() ? "" : "; " + rep.jc->note);
  }
  rep.jc_plus = jcp_f.get();
  if (rep.jc_plus) {
    rep.verdicts[Condition::jc_plus] = rep.jc_plus->verdict;
    rep.notes[Condition::jc_plus] = "k = " + std::to_string(n) + (rep.jc_plus->note.empty() ? "" : "; " + rep.jc_plus->note);
  }
  rep.strong = strong_f.get();
  if (rep.strong && wants(Condition::strong_nilpotent)) {
    rep.verdicts[Condition::strong_nilpotent] = rep.strong->verdict;
    if (!rep.strong->note.empty()) rep.notes[Condition::strong_nilpotent] = rep.strong->note;
  }
  if (wants(Condition::star)) {
    if (h.vanishes_at_origin()) {
      rep.verdicts[Condition::star] = rep.strong->verdict;
    } else {
      rep.verdicts[Condition::star] = Verdict::undecided;
      rep.notes[Condition::star] = "H(0) != 0";
    }
  }

  bool cert_ok = false;
  if (cert) {
    CertificateCheck chk = check_star_certificate(h, *cert);
    cert_ok = chk.ok;
    rep.certificate_checks[cert->level] = chk;
  }
  auto cert_level_holds = [&](StarLevel l) { return cert && cert_ok && detail::level_at_least(cert->level, l); };

  if (cert_level_holds(StarLevel::star) && wants(Condition::star)) {
    rep.verdicts[Condition::star] = Verdict::holds;
  }

  for (StarLevel level : {StarLevel::doublestar, StarLevel::triplestar}) {
    const Condition cond = level == StarLevel::doublestar ? Condition::doublestar : Condition::triplestar;
    if (!wants(cond)) continue;
    Verdict v = Verdict::undecided;
    std::string note;
    if (cert_level_holds(level)) {
      v = Verdict::holds;
      note = "certificate verifies";
    } else if (n == 2) {
      LevelDecision d = decide_single_term(h, level);
      v = d.verdict;
      note = "single-term oracle: " + d.note;
      if (d.certificate) rep.constructed_certificates[level] = *d.certificate;
    } else if (level == StarLevel::triplestar) {
      LevelDecision d = decide_triplestar_by_span(h);
      v = d.verdict;
      note = "component-span oracle: " + d.note;
    } else {
      note = "no certificate and no applicable oracle";
    }
    rep.verdicts[cond] = v;
    rep.notes[cond] = note;
  }

  if (wants(Condition::jc_minus)) {
    std::string how;
    rep.inverse = detail::exhibit_inverse(f, quasi, cert, cert_ok, how);
    rep.verdicts[Condition::jc_minus] = rep.inverse ? Verdict::holds : Verdict::undecided;
    rep.notes[Condition::jc_minus] = rep.inverse ? how : "no inverse exhibited";
  }
  return rep;
}

}  // namespace keller
