// Sparse multivariate polynomials over a Field.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "keller/exactfield.hpp"
#include "keller/linalg.hpp"

namespace keller {

using Exponents = std::vector<std::uint32_t>;

/// Polynomial in nvars variables x_0 .. x_{nvars-1}. Terms are keyed by dense
/// exponent vectors and kept in lexicographic order; zero coefficients are never stored.
class MultiPoly {
 public:
  using TermMap = std::map<Exponents, Scalar>;

  MultiPoly() : MultiPoly(Field::rationals(), 0) {}
  MultiPoly(Field field, std::size_t nvars) : field_(std::move(field)), nvars_(nvars) {}

  static MultiPoly constant(const Scalar& c, std::size_t nvars) {
    MultiPoly p(c.field(), nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
  }
  static MultiPoly constant(const Field& field, std::size_t nvars, long v) {
    return constant(field.from_int(v), nvars);
  }
  static MultiPoly variable(const Field& field, std::size_t nvars, std::size_t i) {
    if (i >= nvars) throw DimensionError("variable index out of range");
    Exponents e(nvars, 0);
    e[i] = 1;
    MultiPoly p(field, nvars);
    p.add_term(std::move(e), field.one());
    return p;
  }
  static MultiPoly monomial(const Scalar& c, Exponents exps) {
    MultiPoly p(c.field(), exps.size());
    p.add_term(std::move(exps), c);
    return p;
  }

  const Field& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && is_constant_exps(terms_.begin()->first));
  }
  Scalar constant_term() const {
    auto it = terms_.find(Exponents(nvars_, 0));
    return it == terms_.end() ? field_.zero() : it->second;
  }

  /// Maximum total degree; the zero polynomial reports 0.
  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
  }

  /// Degree in variable i alone.
  unsigned degree_in(std::size_t i) const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) d = std::max<unsigned>(d, e[i]);
    return d;
  }

  bool depends_on(std::size_t i) const {
    for (const auto& [e, c] : terms_)
      if (e[i] != 0) return true;
    return false;
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    const unsigned d = total_degree(terms_.begin()->first);
    for (const auto& [e, c] : terms_)
      if (total_degree(e) != d) return false;
    return true;
  }

  MultiPoly homogeneous_part(unsigned deg) const {
    MultiPoly r(field_, nvars_);
    for (const auto& [e, c] : terms_)
      if (total_degree(e) == deg) r.terms_.emplace(e, c);
    return r;
  }

  Scalar coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? field_.zero() : it->second;
  }

  void add_term(Exponents exps, const Scalar& c) {
    if (exps.size() != nvars_) throw DimensionError("exponent vector length differs from nvars");
    if (c.field() != field_) throw FieldMismatchError("term coefficient lives in another field");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(std::move(exps), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  MultiPoly operator-() const {
    MultiPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_compatible(b);
    MultiPoly r(a.field_, a.nvars_);
    if (a.is_zero() || b.is_zero()) return r;
    Exponents e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  MultiPoly scaled(const Scalar& s) const {
    if (s.field() != field_) throw FieldMismatchError("scaling by a scalar of another field");
    MultiPoly r(field_, nvars_);
    if (s.is_zero()) return r;
    for (const auto& [e, c] : terms_) r.add_term(e, c * s);
    return r;
  }

  MultiPoly pow(unsigned k) const {
    MultiPoly result = constant(field_.one(), nvars_), base = *this;
    while (k > 0) {
      if (k & 1U) result = result * base;
      k >>= 1U;
      if (k > 0) base = base * base;
    }
    return result;
  }

  bool operator==(const MultiPoly& o) const {
    return nvars_ == o.nvars_ && field_ == o.field_ && terms_ == o.terms_;
  }
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  MultiPoly derivative(std::size_t i) const {
    if (i >= nvars_) throw DimensionError("partial derivative index out of range");
    MultiPoly r(field_, nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponents d = e;
      d[i] -= 1;
      r.add_term(std::move(d), c * Rational(e[i]));
    }
    return r;
  }

  /// Image under x_i := assignment[i]. All assigned polynomials share one field and nvars,
  /// which become the field and nvars of the result.
  MultiPoly substitute(std::span<const MultiPoly> assignment) const {
    if (assignment.size() != nvars_) {
      throw DimensionError("substitution assigns " + std::to_string(assignment.size()) + " of " +
                           std::to_string(nvars_) + " variables");
    }
    if (nvars_ == 0) {
      throw DimensionError("cannot infer target ring for a substitution in zero variables");
    }
    const Field& tf = assignment[0].field();
    const std::size_t tn = assignment[0].nvars();
    for (const auto& a : assignment) {
      if (a.field() != tf) throw FieldMismatchError("substituted polynomials live in different fields");
      if (a.nvars() != tn) throw DimensionError("substituted polynomials have different nvars");
    }
    std::vector<std::vector<MultiPoly>> powers(nvars_);
    auto power_of = [&](std::size_t v, unsigned k) -> const MultiPoly& {
      auto& cache = powers[v];
      if (cache.empty()) cache.push_back(constant(tf.one(), tn));
      while (cache.size() <= k) cache.push_back(cache.back() * assignment[v]);
      return cache[k];
    };
    MultiPoly r(tf, tn);
    for (const auto& [e, c] : terms_) {
      MultiPoly term = constant(embed_rational(c, tf), tn);
      for (std::size_t v = 0; v < nvars_; ++v)
        if (e[v] != 0) term = term * power_of(v, e[v]);
      r += term;
    }
    return r;
  }

  /// Substitutes a single variable, keeping the others.
  MultiPoly substitute_var(std::size_t i, const MultiPoly& value) const {
    std::vector<MultiPoly> a;
    a.reserve(nvars_);
    for (std::size_t v = 0; v < nvars_; ++v) a.push_back(v == i ? value : variable(field_, nvars_, v));
    return substitute(a);
  }

  /// Value at a point; coefficients of a polynomial over a degree-1 field are
  /// embedded into the point's field when the two differ.
  Scalar evaluate(std::span<const Scalar> point) const {
    if (point.size() != nvars_) throw DimensionError("evaluation point has wrong length");
    const Field tf = point.empty() ? field_ : point[0].field();
    Scalar sum = tf.zero();
    for (const auto& [e, c] : terms_) {
      Scalar t = embed_rational(c, tf);
      for (std::size_t v = 0; v < nvars_; ++v)
        if (e[v] != 0) t *= point[v].pow(e[v]);
      sum += t;
    }
    return sum;
  }

  /// Renames variable i to var_map[i] inside a ring of new_nvars variables.
  MultiPoly remap(std::size_t new_nvars, std::span<const std::size_t> var_map) const {
    if (var_map.size() != nvars_) throw DimensionError("variable map has wrong length");
    MultiPoly r(field_, new_nvars);
    for (const auto& [e, c] : terms_) {
      Exponents ne(new_nvars, 0);
      for (std::size_t v = 0; v < nvars_; ++v) {
        if (e[v] == 0) continue;
        if (var_map[v] >= new_nvars) throw DimensionError("variable map target out of range");
        ne[var_map[v]] += e[v];
      }
      r.add_term(std::move(ne), c);
    }
    return r;
  }

  /// Same polynomial in a ring with more (trailing) variables.
  MultiPoly extend_vars(std::size_t new_nvars) const {
    if (new_nvars < nvars_) throw DimensionError("extend_vars cannot drop variables");
    std::vector<std::size_t> id(nvars_);
    for (std::size_t v = 0; v < nvars_; ++v) id[v] = v;
    return remap(new_nvars, id);
  }

  /// Coefficients mapped into another field (source must be a degree-1 field).
  MultiPoly change_field(const Field& target) const {
    if (target == field_) return *this;
    MultiPoly r(target, nvars_);
    for (const auto& [e, c] : terms_) r.add_term(e, embed_rational(c, target));
    return r;
  }

  /// Exact quotient by a divisor known to divide; returns nullopt otherwise.
  std::optional<MultiPoly> divide_exact(const MultiPoly& divisor) const {
    check_compatible(divisor);
    if (divisor.is_zero()) throw NotInvertibleError("division by the zero polynomial");
    MultiPoly q(field_, nvars_), r = *this;
    const auto& [lead_e, lead_c] = *divisor.terms_.rbegin();
    const Scalar lead_inv = lead_c.inverse();
    Exponents shift(nvars_);
    while (!r.is_zero()) {
      const auto& [re, rc] = *r.terms_.rbegin();
      for (std::size_t v = 0; v < nvars_; ++v) {
        if (re[v] < lead_e[v]) return std::nullopt;
        shift[v] = re[v] - lead_e[v];
      }
      Scalar f = rc * lead_inv;
      q.add_term(shift, f);
      for (const auto& [de, dc] : divisor.terms_) {
        Exponents e(nvars_);
        for (std::size_t v = 0; v < nvars_; ++v) e[v] = de[v] + shift[v];
        r.add_term(std::move(e), -(dc * f));
      }
    }
    return q;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!out.empty()) out += " + ";
      out += "(" + it->second.to_string() + ")";
      for (std::size_t v = 0; v < nvars_; ++v) {
        if (it->first[v] == 0) continue;
        out += "*x" + std::to_string(v + 1);
        if (it->first[v] > 1) out += "^" + std::to_string(it->first[v]);
      }
    }
    return out;
  }

  static unsigned total_degree(const Exponents& e) {
    unsigned d = 0;
    for (auto x : e) d += x;
    return d;
  }

 private:
  static bool is_constant_exps(const Exponents& e) {
    for (auto x : e)
      if (x != 0) return false;
    return true;
  }
  void check_compatible(const MultiPoly& o) const {
    if (field_ != o.field_) throw FieldMismatchError("polynomial operands live in different fields");
    if (nvars_ != o.nvars_) throw DimensionError("polynomial operands have different nvars");
  }

  Field field_;
  std::size_t nvars_;
  TermMap terms_;
};

/// The form c^t x without constant term.
struct LinearForm {
  ScalarVector coeffs;

  std::size_t nvars() const { return coeffs.size(); }

  MultiPoly to_poly(const Field& field) const {
    MultiPoly p(field, coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      Exponents e(coeffs.size(), 0);
      e[i] = 1;
      p.add_term(std::move(e), coeffs[i]);
    }
    return p;
  }
  MultiPoly power(const Field& field, unsigned d) const { return to_poly(field).pow(d); }

  bool operator==(const LinearForm&) const = default;
};

/// p = scale * (form^t x)^degree.
struct PurePower {
  LinearForm form;
  unsigned degree = 1;
  Scalar scale;
};

/// Detects p = lambda (c^t x)^d with d >= 1, c normalized so its first nonzero
/// coordinate is 1. The zero polynomial yields (0, 1, 0).
inline std::optional<PurePower> is_pure_power(const MultiPoly& p) {
  const Field& f = p.field();
  const std::size_t n = p.nvars();
  if (p.is_zero()) return PurePower{LinearForm{ScalarVector(n, f.zero())}, 1, f.zero()};
  std::size_t lead = n;
  std::vector<MultiPoly> partials;
  partials.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    partials.push_back(p.derivative(i));
    if (lead == n && !partials.back().is_zero()) lead = i;
  }
  if (lead == n) return std::nullopt;  // nonzero constant
  ScalarVector c(n, f.zero());
  c[lead] = f.one();
  for (std::size_t j = lead + 1; j < n; ++j) {
    if (partials[j].is_zero()) continue;
    auto q = partials[j].divide_exact(partials[lead]);
    if (!q || !q->is_constant()) return std::nullopt;
    c[j] = q->constant_term();
  }
  const unsigned d = p.degree();
  LinearForm form{std::move(c)};
  MultiPoly base = form.power(f, d);
  // base has the same lex-leading monomial as p whenever p is a multiple of it
  const auto& [be, bc] = *base.terms().rbegin();
  Scalar lambda = p.coefficient(be) / bc;
  if (base.scaled(lambda) != p) return std::nullopt;
  return PurePower{std::move(form), d, std::move(lambda)};
}

namespace detail {

inline void compositions(std::size_t parts, unsigned total, std::vector<unsigned>& cur,
                         std::vector<std::vector<unsigned>>& out) {
  if (parts == 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (unsigned k = total + 1; k-- > 0;) {
    cur.push_back(k);
    compositions(parts - 1, total - k, cur, out);
    cur.pop_back();
  }
}

}  // namespace detail

/// Writes p as a sum of pure powers of linear forms without constant term.
/// Each homogeneous part is tried as a single pure power first; otherwise it is
/// expanded over the powers (u^t x)^e with u running through the lattice points
/// of the simplex {u in N^m : |u| = e} on the support variables, whose e-th powers
/// form a basis of the degree-e forms. Requires p(0) = 0.
inline std::vector<PurePower> power_sum_decomposition(const MultiPoly& p) {
  if (!p.constant_term().is_zero()) throw PreconditionError("power_sum_decomposition: nonzero constant term");
  const Field& f = p.field();
  const std::size_t n = p.nvars();
  std::vector<PurePower> out;
  if (p.is_zero()) return out;
  if (auto pp = is_pure_power(p)) {
    out.push_back(std::move(*pp));
    return out;
  }
  for (unsigned e = 1; e <= p.degree(); ++e) {
    MultiPoly part = p.homogeneous_part(e);
    if (part.is_zero()) continue;
    if (auto pp = is_pure_power(part)) {
      out.push_back(std::move(*pp));
      continue;
    }
    std::vector<std::size_t> support;
    for (std::size_t v = 0; v < n; ++v)
      if (part.depends_on(v)) support.push_back(v);
    std::vector<std::vector<unsigned>> points;
    std::vector<unsigned> cur;
    detail::compositions(support.size(), e, cur, points);
    // monomials of degree e in the support variables, same enumeration
    const auto& monos = points;
    ScalarMatrix system(f, monos.size(), points.size() + 1);
    std::vector<LinearForm> forms;
    for (std::size_t col = 0; col < points.size(); ++col) {
      ScalarVector c(n, f.zero());
      for (std::size_t s = 0; s < support.size(); ++s) c[support[s]] = f.from_int(points[col][s]);
      forms.push_back(LinearForm{c});
      MultiPoly pw = forms.back().power(f, e);
      for (std::size_t row = 0; row < monos.size(); ++row) {
        Exponents ex(n, 0);
        for (std::size_t s = 0; s < support.size(); ++s) ex[support[s]] = monos[row][s];
        system.at(row, col) = pw.coefficient(ex);
      }
    }
    for (std::size_t row = 0; row < monos.size(); ++row) {
      Exponents ex(n, 0);
      for (std::size_t s = 0; s < support.size(); ++s) ex[support[s]] = monos[row][s];
      system.at(row, points.size()) = part.coefficient(ex);
    }
    Echelon ech = rref(std::move(system));
    if (ech.pivot_cols.size() != points.size() || ech.pivot_cols.back() != points.size() - 1) {
      throw Error("power_sum_decomposition: lattice powers do not span (internal error)");
    }
    for (std::size_t col = 0; col < points.size(); ++col) {
      Scalar lambda = ech.reduced.at(col, points.size());
      if (lambda.is_zero()) continue;
      out.push_back(PurePower{forms[col], e, lambda});
    }
  }
  return out;
}

}  // namespace keller
