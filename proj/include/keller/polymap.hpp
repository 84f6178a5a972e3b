// Polynomial maps K^n -> K^m and matrices with polynomial entries.
#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <vector>

#include "keller/linalg.hpp"
#include "keller/multipoly.hpp"

namespace keller {

class PolyMatrix;

class PolyMap {
 public:
  PolyMap() : PolyMap(Field::rationals(), 0, {}) {}
  PolyMap(Field field, std::size_t nvars, std::vector<MultiPoly> components)
      : field_(std::move(field)), nvars_(nvars), components_(std::move(components)) {
    for (const auto& c : components_) {
      if (c.field() != field_) throw FieldMismatchError("map component lives in another field");
      if (c.nvars() != nvars_) throw DimensionError("map component has wrong nvars");
    }
  }

  static PolyMap identity(const Field& field, std::size_t n) {
    std::vector<MultiPoly> c;
    for (std::size_t i = 0; i < n; ++i) c.push_back(MultiPoly::variable(field, n, i));
    return PolyMap(field, n, std::move(c));
  }
  static PolyMap zero(const Field& field, std::size_t n_out, std::size_t nvars) {
    return PolyMap(field, nvars, std::vector<MultiPoly>(n_out, MultiPoly(field, nvars)));
  }

  const Field& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  std::size_t n_out() const { return components_.size(); }
  bool is_square() const { return n_out() == nvars_; }
  const std::vector<MultiPoly>& components() const { return components_; }
  const MultiPoly& operator[](std::size_t i) const { return components_[i]; }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& c : components_) d = std::max(d, c.degree());
    return d;
  }
  bool is_zero() const {
    return std::all_of(components_.begin(), components_.end(), [](const MultiPoly& c) { return c.is_zero(); });
  }
  /// Every component has zero constant term.
  bool vanishes_at_origin() const {
    return std::all_of(components_.begin(), components_.end(),
                       [](const MultiPoly& c) { return c.constant_term().is_zero(); });
  }

  friend PolyMap operator+(const PolyMap& a, const PolyMap& b) {
    a.check_same_shape(b);
    std::vector<MultiPoly> c;
    for (std::size_t i = 0; i < a.n_out(); ++i) c.push_back(a[i] + b[i]);
    return PolyMap(a.field_, a.nvars_, std::move(c));
  }
  friend PolyMap operator-(const PolyMap& a, const PolyMap& b) {
    a.check_same_shape(b);
    std::vector<MultiPoly> c;
    for (std::size_t i = 0; i < a.n_out(); ++i) c.push_back(a[i] - b[i]);
    return PolyMap(a.field_, a.nvars_, std::move(c));
  }
  PolyMap operator-() const {
    std::vector<MultiPoly> c;
    for (const auto& p : components_) c.push_back(-p);
    return PolyMap(field_, nvars_, std::move(c));
  }

  bool operator==(const PolyMap& o) const {
    return field_ == o.field_ && nvars_ == o.nvars_ && components_ == o.components_;
  }
  bool operator!=(const PolyMap& o) const { return !(*this == o); }

  /// Components substituted by x := G.
  PolyMap substitute(const PolyMap& g) const {
    if (g.n_out() != nvars_) throw DimensionError("composition: inner map has wrong output size");
    if (g.field() != field_ && !field_.is_rational()) throw FieldMismatchError("composition across fields");
    std::vector<MultiPoly> c;
    for (const auto& p : components_) c.push_back(p.substitute(g.components()));
    return PolyMap(g.field(), g.nvars(), std::move(c));
  }

  PolyMap extend_vars(std::size_t new_nvars) const {
    std::vector<MultiPoly> c;
    for (const auto& p : components_) c.push_back(p.extend_vars(new_nvars));
    return PolyMap(field_, new_nvars, std::move(c));
  }

  std::vector<Scalar> evaluate(std::span<const Scalar> point) const {
    std::vector<Scalar> r;
    for (const auto& p : components_) r.push_back(p.evaluate(point));
    return r;
  }

 private:
  void check_same_shape(const PolyMap& o) const {
    if (field_ != o.field_) throw FieldMismatchError("maps live in different fields");
    if (nvars_ != o.nvars_ || n_out() != o.n_out()) throw DimensionError("maps have different shapes");
  }

  Field field_;
  std::size_t nvars_;
  std::vector<MultiPoly> components_;
};

class PolyMatrix {
 public:
  PolyMatrix() : PolyMatrix(Field::rationals(), 0, 0, 0) {}
  PolyMatrix(Field field, std::size_t nvars, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), nvars_(nvars), rows_(rows), cols_(cols),
        entries_(rows * cols, MultiPoly(field_, nvars)) {}

  static PolyMatrix identity(const Field& field, std::size_t nvars, std::size_t n) {
    PolyMatrix m(field, nvars, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = MultiPoly::constant(field.one(), nvars);
    return m;
  }

  static PolyMatrix from_constant(const ScalarMatrix& s, std::size_t nvars) {
    PolyMatrix m(s.field(), nvars, s.rows(), s.cols());
    for (std::size_t i = 0; i < s.rows(); ++i)
      for (std::size_t j = 0; j < s.cols(); ++j) m.at(i, j) = MultiPoly::constant(s.at(i, j), nvars);
    return m;
  }

  const Field& field() const { return field_; }
  std::size_t nvars() const { return nvars_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  MultiPoly& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const MultiPoly& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const MultiPoly& p) { return p.is_zero(); });
  }
  bool is_constant() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const MultiPoly& p) { return p.is_constant(); });
  }

  ScalarMatrix to_constant() const {
    if (!is_constant()) throw PreconditionError("matrix has non-constant entries");
    ScalarMatrix s(field_, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) s.at(i, j) = at(i, j).constant_term();
    return s;
  }

  /// Lower triangular with zero diagonal.
  bool is_strictly_lower_triangular() const {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i; j < cols_; ++j)
        if (!at(i, j).is_zero()) return false;
    return true;
  }

  PolyMatrix transpose() const {
    PolyMatrix t(field_, nvars_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
    a.check_same_shape(b);
    PolyMatrix r = a;
    for (std::size_t k = 0; k < r.entries_.size(); ++k) r.entries_[k] += b.entries_[k];
    return r;
  }
  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
    a.check_same_shape(b);
    PolyMatrix r = a;
    for (std::size_t k = 0; k < r.entries_.size(); ++k) r.entries_[k] -= b.entries_[k];
    return r;
  }
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product: inner dimensions differ");
    if (a.field_ != b.field_) throw FieldMismatchError("matrix product across fields");
    if (a.nvars_ != b.nvars_) throw DimensionError("matrix product: entries have different nvars");
    PolyMatrix r(a.field_, a.nvars_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const MultiPoly& aik = a.at(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (b.at(k, j).is_zero()) continue;
          r.at(i, j) += aik * b.at(k, j);
        }
      }
    return r;
  }
  PolyMatrix scaled(const Scalar& s) const {
    PolyMatrix r = *this;
    for (auto& e : r.entries_) e = e.scaled(s);
    return r;
  }

  bool operator==(const PolyMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && nvars_ == o.nvars_ && field_ == o.field_ &&
           entries_ == o.entries_;
  }
  bool operator!=(const PolyMatrix& o) const { return !(*this == o); }

  /// Entries under x := assignment.
  PolyMatrix substitute(std::span<const MultiPoly> assignment) const {
    const Field& tf = assignment.empty() ? field_ : assignment[0].field();
    const std::size_t tn = assignment.empty() ? nvars_ : assignment[0].nvars();
    PolyMatrix r(tf, tn, rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k) r.entries_[k] = entries_[k].substitute(assignment);
    return r;
  }

  PolyMatrix remap(std::size_t new_nvars, std::span<const std::size_t> var_map) const {
    PolyMatrix r(field_, new_nvars, rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k) r.entries_[k] = entries_[k].remap(new_nvars, var_map);
    return r;
  }

  PolyMatrix substitute_var(std::size_t v, const MultiPoly& value) const {
    PolyMatrix r = *this;
    for (auto& e : r.entries_) e = e.substitute_var(v, value);
    return r;
  }

  ScalarMatrix evaluate(std::span<const Scalar> point) const {
    const Field tf = point.empty() ? field_ : point[0].field();
    ScalarMatrix s(tf, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) s.at(i, j) = at(i, j).evaluate(point);
    return s;
  }

  std::vector<MultiPoly> diagonal() const {
    std::vector<MultiPoly> d;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) d.push_back(at(i, i));
    return d;
  }

 private:
  void check_same_shape(const PolyMatrix& o) const {
    if (field_ != o.field_) throw FieldMismatchError("matrices live in different fields");
    if (rows_ != o.rows_ || cols_ != o.cols_ || nvars_ != o.nvars_) throw DimensionError("matrix shapes differ");
  }

  Field field_;
  std::size_t nvars_, rows_, cols_;
  std::vector<MultiPoly> entries_;
};

/// (i, j) entry is the derivative of F_i by x_j, for j < ncols (default: all variables).
inline PolyMatrix jacobian(const PolyMap& f, std::size_t ncols) {
  if (ncols > f.nvars()) throw DimensionError("jacobian: more columns than variables");
  PolyMatrix j(f.field(), f.nvars(), f.n_out(), ncols);
  for (std::size_t r = 0; r < f.n_out(); ++r)
    for (std::size_t c = 0; c < ncols; ++c) j.at(r, c) = f[r].derivative(c);
  return j;
}
inline PolyMatrix jacobian(const PolyMap& f) { return jacobian(f, f.nvars()); }

/// The map x -> (A x)^{*d}: component i is (A_i x)^d.
inline PolyMap hadamard_power_map(const PolyMatrix& a, unsigned d) {
  if (!a.is_square()) throw DimensionError("hadamard_power_map: matrix must be square");
  if (!a.is_constant()) throw PreconditionError("hadamard_power_map: entries must be constant");
  if (d < 1) throw PreconditionError("hadamard_power_map: d must be >= 1");
  const ScalarMatrix s = a.to_constant();
  std::vector<MultiPoly> comps;
  for (std::size_t i = 0; i < s.rows(); ++i) comps.push_back(LinearForm{s.row(i)}.power(s.field(), d));
  return PolyMap(s.field(), s.cols(), std::move(comps));
}

/// F o G.
inline PolyMap map_compose(const PolyMap& f, const PolyMap& g) {
  if (g.n_out() != f.nvars()) throw DimensionError("map_compose: G.n_out must equal F.nvars");
  if (g.field() != f.field()) throw FieldMismatchError("map_compose: maps live in different fields");
  return f.substitute(g);
}

/// The linear map x -> T x.
inline PolyMap linear_map(const ScalarMatrix& t) {
  std::vector<MultiPoly> comps;
  for (std::size_t i = 0; i < t.rows(); ++i) comps.push_back(LinearForm{t.row(i)}.to_poly(t.field()));
  return PolyMap(t.field(), t.cols(), std::move(comps));
}

/// T^{-1} F(T x).
inline PolyMap conjugate(const PolyMap& f, const ScalarMatrix& t) {
  if (!f.is_square() || t.rows() != t.cols() || t.rows() != f.nvars()) {
    throw DimensionError("conjugate: T and F sizes differ");
  }
  ScalarMatrix tinv = inverse(t);  // throws on singular T
  PolyMap ftx = f.substitute(linear_map(t));
  std::vector<MultiPoly> comps;
  for (std::size_t i = 0; i < tinv.rows(); ++i) {
    MultiPoly c(f.field(), f.nvars());
    for (std::size_t j = 0; j < tinv.cols(); ++j)
      if (!tinv.at(i, j).is_zero()) c += ftx[j].scaled(tinv.at(i, j));
    comps.push_back(std::move(c));
  }
  return PolyMap(f.field(), f.nvars(), std::move(comps));
}

namespace detail {

inline MultiPoly det_cofactor(const PolyMatrix& m, std::vector<std::size_t>& rows_left, std::size_t col) {
  const std::size_t n = m.cols();
  if (col == n) return MultiPoly::constant(m.field().one(), m.nvars());
  MultiPoly sum(m.field(), m.nvars());
  for (std::size_t k = 0; k < rows_left.size(); ++k) {
    const std::size_t r = rows_left[k];
    if (m.at(r, col).is_zero()) continue;
    rows_left.erase(rows_left.begin() + static_cast<std::ptrdiff_t>(k));
    MultiPoly minor = det_cofactor(m, rows_left, col + 1);
    rows_left.insert(rows_left.begin() + static_cast<std::ptrdiff_t>(k), r);
    if (minor.is_zero()) continue;
    MultiPoly t = m.at(r, col) * minor;
    if (k % 2 == 0)
      sum += t;
    else
      sum -= t;
  }
  return sum;
}

}  // namespace detail

/// Laplace expansion along columns.
inline MultiPoly det_cofactor(const PolyMatrix& m) {
  if (!m.is_square()) throw DimensionError("determinant of a non-square matrix");
  std::vector<std::size_t> rows(m.rows());
  std::iota(rows.begin(), rows.end(), 0);
  return detail::det_cofactor(m, rows, 0);
}

/// Fraction-free Bareiss elimination with exact polynomial division.
inline MultiPoly det_bareiss(PolyMatrix m) {
  if (!m.is_square()) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return MultiPoly::constant(m.field().one(), m.nvars());
  bool negate = false;
  MultiPoly prev = MultiPoly::constant(m.field().one(), m.nvars());
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m.at(p, k).is_zero()) ++p;
      if (p == n) return MultiPoly(m.field(), m.nvars());
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(p, j), m.at(k, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MultiPoly num = m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j);
        auto q = num.divide_exact(prev);
        if (!q) throw Error("Bareiss: inexact division (internal error)");
        m.at(i, j) = std::move(*q);
      }
      m.at(i, k) = MultiPoly(m.field(), m.nvars());
    }
    prev = m.at(k, k);
  }
  MultiPoly d = m.at(n - 1, n - 1);
  return negate ? -d : d;
}

/// Exact determinant; Laplace expansion up to size 4, Bareiss above.
inline MultiPoly matrix_det(const PolyMatrix& m) {
  if (!m.is_square()) throw DimensionError("determinant of a non-square matrix");
  return m.rows() <= 4 ? det_cofactor(m) : det_bareiss(m);
}

/// Rank over the fraction field K(x) by fraction-free elimination. Pivots are
/// chosen with minimal total degree, ties broken by (row, column) position.
inline std::size_t matrix_rank(PolyMatrix m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> row_ids(rows), col_ids(cols);
  std::iota(row_ids.begin(), row_ids.end(), 0);
  std::iota(col_ids.begin(), col_ids.end(), 0);
  auto el = [&](std::size_t i, std::size_t j) -> MultiPoly& { return m.at(row_ids[i], col_ids[j]); };
  MultiPoly prev = MultiPoly::constant(m.field().one(), m.nvars());
  std::size_t rank = 0;
  for (std::size_t k = 0; k < std::min(rows, cols); ++k) {
    bool found = false;
    std::size_t pi = 0, pj = 0;
    unsigned best = 0;
    for (std::size_t i = k; i < rows; ++i)
      for (std::size_t j = k; j < cols; ++j) {
        const MultiPoly& e = el(i, j);
        if (e.is_zero()) continue;
        const unsigned deg = e.degree();
        if (!found || deg < best) {
          found = true;
          best = deg;
          pi = i;
          pj = j;
        }
      }
    if (!found) break;
    std::swap(row_ids[k], row_ids[pi]);
    std::swap(col_ids[k], col_ids[pj]);
    ++rank;
    for (std::size_t i = k + 1; i < rows; ++i) {
      for (std::size_t j = k + 1; j < cols; ++j) {
        MultiPoly num = el(k, k) * el(i, j) - el(i, k) * el(k, j);
        auto q = num.divide_exact(prev);
        if (!q) throw Error("rank elimination: inexact division (internal error)");
        el(i, j) = std::move(*q);
      }
      el(i, k) = MultiPoly(m.field(), m.nvars());
    }
    prev = el(k, k);
  }
  return rank;
}

/// True iff M^k = 0 with k the size of M.
inline bool matrix_is_nilpotent(const PolyMatrix& m) {
  if (!m.is_square()) throw DimensionError("nilpotency of a non-square matrix");
  if (m.rows() == 0) return true;
  PolyMatrix power = m;
  for (std::size_t k = 1; k < m.rows(); ++k) {
    if (power.is_zero()) return true;
    power = power * m;
  }
  return power.is_zero();
}

/// Degree-d homogenization in one extra variable x_{n+1}; a zero (n+1)-th
/// component is appended so that the result is square.
inline PolyMap homogenize(const PolyMap& h, unsigned d) {
  if (h.degree() > d) throw PreconditionError("homogenize: deg H exceeds d");
  if (!h.vanishes_at_origin()) throw PreconditionError("homogenize: H(0) must be 0");
  const std::size_t n = h.nvars();
  std::vector<MultiPoly> comps;
  for (const auto& c : h.components()) {
    MultiPoly p(h.field(), n + 1);
    for (const auto& [e, coeff] : c.terms()) {
      Exponents ne = e;
      ne.push_back(d - MultiPoly::total_degree(e));
      p.add_term(std::move(ne), coeff);
    }
    comps.push_back(std::move(p));
  }
  comps.resize(std::max<std::size_t>(comps.size(), n + 1), MultiPoly(h.field(), n + 1));
  return PolyMap(h.field(), n + 1, std::move(comps));
}

/// Inverse of F = x + H when the Jacobian of H is strictly lower triangular,
/// built by forward substitution G_i = x_i - H_i(G_1, ..., G_{i-1}).
inline PolyMap invert_triangular(const PolyMap& f) {
  if (!f.is_square()) throw DimensionError("invert_triangular: map must be square");
  const std::size_t n = f.nvars();
  PolyMap h = f - PolyMap::identity(f.field(), n);
  if (!jacobian(h).is_strictly_lower_triangular()) {
    throw PreconditionError("invert_triangular: Jacobian of H is not strictly lower triangular");
  }
  std::vector<MultiPoly> g;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<MultiPoly> assign = g;
    for (std::size_t v = i; v < n; ++v) assign.push_back(MultiPoly::variable(f.field(), n, v));
    g.push_back(MultiPoly::variable(f.field(), n, i) - h[i].substitute(assign));
  }
  return PolyMap(f.field(), n, std::move(g));
}

}  // namespace keller
