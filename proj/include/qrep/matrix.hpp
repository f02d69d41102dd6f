#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "qrep/errors.hpp"
#include "qrep/field.hpp"

namespace qrep {

/// Dense row-major matrix over a FieldSpec. Zero-row and zero-column shapes
/// are legal and stand for maps to or from the zero space.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldSpec f, std::size_t rows, std::size_t cols)
      : field_(f), rows_(rows), cols_(cols), e_(rows * cols, Scalar::zero(f)) {}

  static Matrix identity(FieldSpec f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(f);
    return m;
  }

  static Matrix from_rows(FieldSpec f, std::initializer_list<std::initializer_list<long long>> rows) {
    std::vector<std::vector<long long>> v;
    for (auto& r : rows) v.emplace_back(r);
    return from_rows(f, v);
  }

  static Matrix from_rows(FieldSpec f, const std::vector<std::vector<long long>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows.front().size();
    Matrix m(f, rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw MismatchError("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = Scalar::from_int(f, rows[i][j]);
    }
    return m;
  }

  /// Single column from a list of scalars.
  static Matrix column(FieldSpec f, const std::vector<Scalar>& v) {
    Matrix m(f, v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
  }

  const FieldSpec& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  bool is_zero() const {
    for (const auto& s : e_)
      if (!s.is_zero()) return false;
    return true;
  }

  Matrix col(std::size_t j) const {
    Matrix c(field_, rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
    return c;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix b(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
    return *this;
  }
  Matrix& operator*=(const Scalar& s) {
    for (auto& x : e_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Scalar& s) { return a *= s; }
  friend Matrix operator*(const Scalar& s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw MismatchError("matrix product shape " + a.shape() + " * " + b.shape());
    Matrix c(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? " " : "") << m(i, j).str();
      os << ']';
    }
    return os << ']';
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw MismatchError("matrix shape " + shape() + " vs " + o.shape());
  }

  FieldSpec field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> e_;
};

/// Horizontal concatenation; all parts share the row count.
inline Matrix hstack(FieldSpec f, std::size_t rows, const std::vector<Matrix>& parts) {
  std::size_t cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != rows) throw MismatchError("hstack row mismatch");
    cols += p.cols();
  }
  Matrix m(f, rows, cols);
  std::size_t c = 0;
  for (const auto& p : parts) {
    m.set_block(0, c, p);
    c += p.cols();
  }
  return m;
}

inline Matrix block_diag(FieldSpec f, const std::vector<Matrix>& parts) {
  std::size_t r = 0, c = 0;
  for (const auto& p : parts) r += p.rows(), c += p.cols();
  Matrix m(f, r, c);
  r = c = 0;
  for (const auto& p : parts) {
    m.set_block(r, c, p);
    r += p.rows();
    c += p.cols();
  }
  return m;
}

struct RrefResult {
  Matrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Gauss-Jordan elimination to the unique reduced row echelon form.
inline RrefResult rref(Matrix m) {
  RrefResult out;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, c).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    Scalar inv = m(row, c).inverse();
    for (std::size_t j = c; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, c).is_zero()) continue;
      Scalar factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= factor * m(row, j);
    }
    out.pivots.push_back(c);
    ++row;
  }
  out.rank = out.pivots.size();
  out.reduced = std::move(m);
  return out;
}

inline std::size_t rank(const Matrix& m) { return m.empty() ? 0 : rref(m).rank; }

/// Columns form a basis of the null space: one column per free variable,
/// that variable set to 1 and the other free variables to 0.
inline Matrix kernel_basis(const Matrix& m) {
  const FieldSpec& f = m.field();
  RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  Matrix k(f, m.cols(), m.cols() - r.rank);
  std::size_t out = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    k(free, out) = Scalar::one(f);
    for (std::size_t i = 0; i < r.rank; ++i) k(r.pivots[i], out) = -r.reduced(i, free);
    ++out;
  }
  return k;
}

/// Canonical solution of a·x = b (free variables 0), or nullopt when
/// inconsistent. b may carry several columns; each is solved independently
/// and nullopt is returned if any is inconsistent.
inline std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw MismatchError("solve: " + a.shape() + " vs rhs " + b.shape());
  const FieldSpec& f = a.field();
  RrefResult r = rref(hstack(f, a.rows(), {a, b}));
  Matrix x(f, a.cols(), b.cols());
  for (std::size_t i = 0; i < r.rank; ++i) {
    if (r.pivots[i] >= a.cols()) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x(r.pivots[i], j) = r.reduced(i, a.cols() + j);
  }
  return x;
}

inline std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  if (m.rows() == 0) return m;
  RrefResult r = rref(hstack(m.field(), m.rows(), {m, Matrix::identity(m.field(), m.rows())}));
  if (r.rank < m.rows() || r.pivots[m.rows() - 1] != m.rows() - 1) return std::nullopt;
  return r.reduced.block(0, m.cols(), m.rows(), m.cols());
}

inline bool is_invertible(const Matrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

/// Basis of the column space: the pivot columns of m itself.
inline Matrix column_space(const Matrix& m) {
  if (m.empty()) return Matrix(m.field(), m.rows(), 0);
  RrefResult r = rref(m);
  Matrix b(m.field(), m.rows(), r.rank);
  for (std::size_t k = 0; k < r.rank; ++k)
    for (std::size_t i = 0; i < m.rows(); ++i) b(i, k) = m(i, r.pivots[k]);
  return b;
}

/// A subspace with full-column-rank basis B of F^n, extended to a basis of
/// F^n by the first standard unit vectors outside the running span.
/// `coords` is the inverse of [B | complement]: its first rank rows give
/// coordinates in B, the remaining rows give the quotient map F^n -> F^n/span B.
struct SplitSpace {
  Matrix basis;
  Matrix complement;
  Matrix coords;

  std::size_t ambient() const { return basis.rows(); }
  std::size_t dim() const { return basis.cols(); }
  std::size_t codim() const { return complement.cols(); }
  Matrix sub_coords() const { return coords.block(0, 0, dim(), ambient()); }
  Matrix quotient_map() const { return coords.block(dim(), 0, codim(), ambient()); }
};

inline SplitSpace split_space(const Matrix& basis) {
  const FieldSpec& f = basis.field();
  std::size_t n = basis.rows();
  RrefResult r = rref(hstack(f, n, {basis, Matrix::identity(f, n)}));
  if (r.rank < n || (basis.cols() && r.pivots[basis.cols() - 1] != basis.cols() - 1))
    throw MismatchError("split_space: basis columns are dependent");
  SplitSpace s;
  s.basis = basis;
  s.complement = Matrix(f, n, n - basis.cols());
  for (std::size_t k = basis.cols(); k < r.rank; ++k) s.complement(r.pivots[k] - basis.cols(), k - basis.cols()) = Scalar::one(f);
  s.coords = *inverse(hstack(f, n, {s.basis, s.complement}));
  return s;
}

inline Matrix random_matrix(std::size_t rows, std::size_t cols, const FieldSpec& f, Rng& rng) {
  Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_scalar(f, rng);
  return m;
}

/// Rejection-samples random_matrix until invertible.
inline Matrix random_invertible(std::size_t n, const FieldSpec& f, Rng& rng) {
  for (;;) {
    Matrix m = random_matrix(n, n, f, rng);
    if (is_invertible(m)) return m;
  }
}

}  // namespace qrep
