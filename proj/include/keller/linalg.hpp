// Dense exact linear algebra over a Field.
#pragma once

#include <cstddef>
#include <vector>

#include "keller/exactfield.hpp"

namespace keller {

using ScalarVector = std::vector<Scalar>;

class ScalarMatrix {
 public:
  ScalarMatrix(Field field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

  static ScalarMatrix identity(const Field& field, std::size_t n) {
    ScalarMatrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = field.one();
    return m;
  }

  /// Matrix whose columns are the given vectors (all of length rows).
  static ScalarMatrix from_columns(const Field& field, std::size_t rows, const std::vector<ScalarVector>& cols) {
    ScalarMatrix m(field, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw DimensionError("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
    }
    return m;
  }

  static ScalarMatrix from_rows(const Field& field, std::size_t cols, const std::vector<ScalarVector>& rows) {
    ScalarMatrix m(field, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw DimensionError("row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
  }

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  ScalarVector row(std::size_t i) const {
    return ScalarVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                        data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  ScalarVector column(std::size_t j) const {
    ScalarVector c;
    c.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c.push_back(at(i, j));
    return c;
  }

  ScalarMatrix transpose() const {
    ScalarMatrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  friend ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionError("matrix product: inner dimensions differ");
    ScalarMatrix r(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a.at(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    return r;
  }

  friend ScalarVector operator*(const ScalarMatrix& a, const ScalarVector& v) {
    if (a.cols_ != v.size()) throw DimensionError("matrix-vector product: length mismatch");
    ScalarVector r(a.rows_, a.field_.zero());
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) r[i] += a.at(i, j) * v[j];
    return r;
  }

  bool operator==(const ScalarMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const ScalarMatrix& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const auto& s : data_)
      if (!s.is_zero()) return false;
    return true;
  }

 private:
  Field field_;
  std::size_t rows_, cols_;
  std::vector<Scalar> data_;
};

struct Echelon {
  ScalarMatrix reduced;
  std::vector<std::size_t> pivot_cols;
};

/// Reduced row echelon form by Gauss-Jordan elimination.
inline Echelon rref(ScalarMatrix m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m.at(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
    Scalar inv = m.at(r, c).inverse();
    for (std::size_t j = c; j < m.cols(); ++j) m.at(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      Scalar f = m.at(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const ScalarMatrix& m) { return rref(m).pivot_cols.size(); }

inline Scalar determinant(ScalarMatrix m) {
  if (m.rows() != m.cols()) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  Scalar det = m.field().one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m.at(p, c).is_zero()) ++p;
    if (p == n) return m.field().zero();
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(p, j), m.at(c, j));
      det = -det;
    }
    det *= m.at(c, c);
    Scalar inv = m.at(c, c).inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m.at(i, c).is_zero()) continue;
      Scalar f = m.at(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) m.at(i, j) -= f * m.at(c, j);
    }
  }
  return det;
}

inline ScalarMatrix inverse(const ScalarMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  ScalarMatrix aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = m.field().one();
  }
  Echelon e = rref(std::move(aug));
  if (e.pivot_cols.size() < n || e.pivot_cols[n - 1] != n - 1) throw NotInvertibleError("matrix is singular");
  ScalarMatrix inv(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = e.reduced.at(i, n + j);
  return inv;
}

/// Basis of {v : m v = 0}, returned as the rows of a reduced echelon matrix.
inline std::vector<ScalarVector> nullspace(const ScalarMatrix& m) {
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<ScalarVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    ScalarVector v(m.cols(), m.field().zero());
    v[f] = m.field().one();
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) v[e.pivot_cols[r]] = -e.reduced.at(r, f);
    basis.push_back(std::move(v));
  }
  if (basis.empty()) return basis;
  Echelon b = rref(ScalarMatrix::from_rows(m.field(), m.cols(), basis));
  std::vector<ScalarVector> out;
  for (std::size_t r = 0; r < b.pivot_cols.size(); ++r) out.push_back(b.reduced.row(r));
  return out;
}

inline Scalar dot(const ScalarVector& a, const ScalarVector& b) {
  if (a.size() != b.size()) throw DimensionError("dot product: length mismatch");
  if (a.empty()) return Scalar();
  Scalar s = a[0].field().zero();
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline ScalarVector unit_vector(const Field& field, std::size_t n, std::size_t i) {
  ScalarVector v(n, field.zero());
  v[i] = field.one();
  return v;
}

inline bool is_zero_vector(const ScalarVector& v) {
  for (const auto& s : v)
    if (!s.is_zero()) return false;
  return true;
}

}  // namespace keller
