#pragma once

// Dense matrices and Gauss-Jordan elimination over an exact field T.
// T must be constructible from int, support + - * /, == and provide an
// ADL-visible is_zero(const T&).  Pivoting picks the entry with the
// smallest pivot_cost(), which matters for rational-function entries.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "adelic/rational.hpp"

namespace adelic {

inline bool is_zero(const Rational& r) { return r.is_zero(); }
inline std::size_t pivot_cost(const Rational&) { return 0; }

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  // Columns given as vectors of equal length.
  static Matrix from_columns(const std::vector<std::vector<T>>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw std::invalid_argument("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(a_.begin() + static_cast<std::ptrdiff_t>(i * c_),
                          a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * c_));
  }

  Matrix transpose() const {
    Matrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw std::invalid_argument("matrix shape mismatch in product");
    Matrix p(a.r_, b.c_);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t k = 0; k < a.c_; ++k) {
        const T& x = a(i, k);
        if (is_zero(x)) continue;
        for (std::size_t j = 0; j < b.c_; ++j) p(i, j) += x * b(k, j);
      }
    return p;
  }
  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
    if (a.c_ != v.size()) throw std::invalid_argument("matrix shape mismatch in product");
    std::vector<T> out(a.r_, T(0));
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t k = 0; k < a.c_; ++k)
        if (!is_zero(v[k])) out[i] += a(i, k) * v[k];
    return out;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw std::invalid_argument("matrix shape mismatch in sum");
    for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] += b.a_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw std::invalid_argument("matrix shape mismatch in difference");
    for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] -= b.a_[i];
    return a;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
  }

  // Horizontal concatenation.
  Matrix hcat(const Matrix& b) const {
    if (r_ != b.r_) throw std::invalid_argument("row count mismatch in hcat");
    Matrix m(r_, c_ + b.c_);
    for (std::size_t i = 0; i < r_; ++i) {
      for (std::size_t j = 0; j < c_; ++j) m(i, j) = (*this)(i, j);
      for (std::size_t j = 0; j < b.c_; ++j) m(i, c_ + j) = b(i, j);
    }
    return m;
  }
  Matrix vcat(const Matrix& b) const {
    if (c_ != b.c_) throw std::invalid_argument("column count mismatch in vcat");
    Matrix m(r_ + b.r_, c_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) m(i, j) = (*this)(i, j);
    for (std::size_t i = 0; i < b.r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) m(r_ + i, j) = b(i, j);
    return m;
  }

  bool is_zero_matrix() const {
    for (const T& x : a_)
      if (!is_zero(x)) return false;
    return true;
  }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
};

template <class T>
struct Echelon {
  Matrix<T> reduced;               // reduced row echelon form
  std::vector<std::size_t> pivots; // pivot column of each nonzero row
  T det_factor = T(1);             // product of pivots times row-swap sign (square input only)
};

// Gauss-Jordan elimination.  Only the first `ncols` columns are used for
// pivoting (lets callers eliminate augmented systems).
template <class T>
Echelon<T> rref(Matrix<T> m, std::size_t ncols) {
  Echelon<T> e;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.rows(); ++col) {
    std::size_t best = m.rows();
    std::size_t best_cost = 0;
    for (std::size_t i = row; i < m.rows(); ++i) {
      if (is_zero(m(i, col))) continue;
      std::size_t c = pivot_cost(m(i, col));
      if (best == m.rows() || c < best_cost) {
        best = i;
        best_cost = c;
      }
    }
    if (best == m.rows()) {
      e.det_factor = T(0);
      continue;
    }
    if (best != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(best, j), m(row, j));
      e.det_factor = T(0) - e.det_factor;
    }
    T piv = m(row, col);
    e.det_factor = e.det_factor * piv;
    for (std::size_t j = col; j < m.cols(); ++j)
      if (!is_zero(m(row, j))) m(row, j) = m(row, j) / piv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || is_zero(m(i, col))) continue;
      T f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        if (!is_zero(m(row, j))) m(i, j) = m(i, j) - f * m(row, j);
    }
    e.pivots.push_back(col);
    ++row;
  }
  e.reduced = std::move(m);
  return e;
}

template <class T>
Echelon<T> rref(const Matrix<T>& m) {
  return rref(m, m.cols());
}

template <class T>
std::size_t rank(const Matrix<T>& m) {
  return rref(m).pivots.size();
}

template <class T>
T determinant(const Matrix<T>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  if (m.rows() == 0) return T(1);
  Echelon<T> e = rref(m);
  if (e.pivots.size() < m.rows()) return T(0);
  return e.det_factor;
}

// Basis of {v : m v = 0}, as columns of the returned matrix.
template <class T>
Matrix<T> nullspace(const Matrix<T>& m) {
  Echelon<T> e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(m.cols(), T(0));
    v[free] = T(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = T(0) - e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return Matrix<T>::from_columns(basis, m.cols());
}

// Some solution of m x = b, or nullopt when inconsistent.
template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& m, const std::vector<T>& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("rhs length mismatch");
  Matrix<T> aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  Echelon<T> e = rref(aug, m.cols());
  for (std::size_t i = e.pivots.size(); i < m.rows(); ++i)
    if (!is_zero(e.reduced(i, m.cols()))) return std::nullopt;
  std::vector<T> x(m.cols(), T(0));
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, m.cols());
  return x;
}

// Solve m X = B column by column; nullopt if any column is inconsistent.
template <class T>
std::optional<Matrix<T>> solve_matrix(const Matrix<T>& m, const Matrix<T>& b) {
  if (b.rows() != m.rows()) throw std::invalid_argument("rhs row mismatch");
  Matrix<T> aug = m.hcat(b);
  Echelon<T> e = rref(aug, m.cols());
  for (std::size_t i = e.pivots.size(); i < m.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (!is_zero(e.reduced(i, m.cols() + j))) return std::nullopt;
  Matrix<T> x(m.cols(), b.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r)
    for (std::size_t j = 0; j < b.cols(); ++j) x(e.pivots[r], j) = e.reduced(r, m.cols() + j);
  return x;
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  if (rank(m) < m.rows()) return std::nullopt;
  return solve_matrix(m, Matrix<T>::identity(m.rows()));
}

// Linearly independent columns spanning the column space of m.
template <class T>
Matrix<T> column_basis(const Matrix<T>& m) {
  Echelon<T> e = rref(m);
  std::vector<std::vector<T>> cols;
  for (std::size_t p : e.pivots) cols.push_back(m.column(p));
  return Matrix<T>::from_columns(cols, m.rows());
}

template <class T>
bool same_column_span(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("ambient dimension mismatch");
  std::size_t ra = rank(a), rb = rank(b);
  if (ra != rb) return false;
  return rank(a.hcat(b)) == ra;
}

// Is every column of b in the column span of a?
template <class T>
bool column_span_contains(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("ambient dimension mismatch");
  return rank(a.hcat(b)) == rank(a);
}

}  // namespace adelic

namespace adelic {

// Division-free characteristic polynomial (Berkowitz) over a commutative ring.
// Returns c_0..c_n with det(t I - A) = sum_k c_k t^{n-k}, c_0 = 1.
template <class T>
std::vector<T> berkowitz_charpoly(const std::vector<std::vector<T>>& a, const T& zero, const T& one) {
  const std::size_t n = a.size();
  std::vector<T> cur{one};
  for (std::size_t r = 0; r < n; ++r) {
    // Leading block M = a[0..r)[0..r), row R = a[r][0..r), column S = a[0..r)[r].
    std::vector<T> col(r + 2, zero);  // first column of the Toeplitz factor
    col[0] = one;
    col[1] = zero - a[r][r];
    std::vector<T> v(r, zero);  // M^k S
    for (std::size_t i = 0; i < r; ++i) v[i] = a[i][r];
    for (std::size_t k = 0; k < r; ++k) {
      T dot = zero;
      for (std::size_t i = 0; i < r; ++i) dot = dot + a[r][i] * v[i];
      col[k + 2] = zero - dot;
      if (k + 1 < r) {
        std::vector<T> nv(r, zero);
        for (std::size_t i = 0; i < r; ++i)
          for (std::size_t j = 0; j < r; ++j) nv[i] = nv[i] + a[i][j] * v[j];
        v = std::move(nv);
      }
    }
    std::vector<T> next(r + 2, zero);
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= i && j < cur.size(); ++j) next[i] = next[i] + col[i - j] * cur[j];
    cur = std::move(next);
  }
  return cur;
}

template <class T>
T berkowitz_det(const std::vector<std::vector<T>>& a, const T& zero, const T& one) {
  std::vector<T> c = berkowitz_charpoly(a, zero, one);
  T d = c.back();
  return (a.size() % 2 == 0) ? d : zero - d;
}

}  // namespace adelic
