#pragma once

// Dense linear algebra over an exact (Rational) or floating (double) field.
// Everything here is small: matrices of Lie algebras up to a few dozen
// dimensions, so plain row-major storage and Gauss-Jordan are enough.

#include <Eigen/Dense>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "fatcert/errors.hpp"
#include "fatcert/rational.hpp"

namespace fatcert {

template <typename Scalar>
using Vector = std::vector<Scalar>;

template <typename Scalar>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
  }

  static Matrix from_columns(const std::vector<Vector<Scalar>>& columns, std::size_t rows) {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw DimensionMismatch("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  static Matrix from_rows(const std::vector<Vector<Scalar>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw DimensionMismatch("row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<Scalar>& data() const { return data_; }

  Vector<Scalar> column(std::size_t c) const {
    Vector<Scalar> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  Vector<Scalar> row(std::size_t r) const {
    return Vector<Scalar>(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  bool operator==(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

using RatMatrix = Matrix<Rational>;
using RatVector = Vector<Rational>;

template <typename Scalar>
Matrix<Scalar> operator*(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape mismatch");
  Matrix<Scalar> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Scalar& aik = a(i, k);
      if (ScalarTraits<Scalar>::is_zero(aik, 0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

template <typename Scalar>
Matrix<Scalar> operator-(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("matrix difference");
  Matrix<Scalar> c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

template <typename Scalar>
Matrix<Scalar> operator+(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("matrix sum");
  Matrix<Scalar> c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

template <typename Scalar>
Matrix<Scalar> scaled(const Matrix<Scalar>& a, const Scalar& s) {
  Matrix<Scalar> c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) * s;
  return c;
}

template <typename Scalar>
Vector<Scalar> operator*(const Matrix<Scalar>& a, const Vector<Scalar>& x) {
  if (a.cols() != x.size()) throw DimensionMismatch("matrix-vector shape mismatch");
  Vector<Scalar> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (!ScalarTraits<Scalar>::is_zero(x[j], 0.0)) y[i] += a(i, j) * x[j];
  return y;
}

template <typename Scalar>
Scalar dot(const Vector<Scalar>& a, const Vector<Scalar>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot product length mismatch");
  Scalar s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <typename Scalar>
Vector<Scalar> add(const Vector<Scalar>& a, const Vector<Scalar>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector sum length mismatch");
  Vector<Scalar> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

template <typename Scalar>
Vector<Scalar> subtract(const Vector<Scalar>& a, const Vector<Scalar>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("vector difference length mismatch");
  Vector<Scalar> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

template <typename Scalar>
Vector<Scalar> scaled(const Vector<Scalar>& a, const Scalar& s) {
  Vector<Scalar> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] * s;
  return c;
}

template <typename Scalar>
bool is_zero_vector(const Vector<Scalar>& v, double tol = 0.0) {
  return std::all_of(v.begin(), v.end(),
                     [tol](const Scalar& x) { return ScalarTraits<Scalar>::is_zero(x, tol); });
}

template <typename Scalar>
double max_abs(const Matrix<Scalar>& a) {
  double m = 0.0;
  for (const auto& x : a.data()) m = std::max(m, std::abs(ScalarTraits<Scalar>::to_double(x)));
  return m;
}

template <typename Scalar>
double max_abs(const Vector<Scalar>& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(ScalarTraits<Scalar>::to_double(x)));
  return m;
}

/// Relative tolerance used by the floating instantiations of the
/// elimination routines; exact instantiations ignore it.
inline constexpr double kDefaultRelTol = 1e-10;

template <typename Scalar>
struct Echelon {
  Matrix<Scalar> reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Reduced row echelon form. Rational input picks the first nonzero pivot;
/// double input uses partial pivoting with tolerance rel_tol * max|a_ij|.
template <typename Scalar>
Echelon<Scalar> rref(Matrix<Scalar> a, double rel_tol = kDefaultRelTol) {
  using T = ScalarTraits<Scalar>;
  const double tol = T::exact ? 0.0 : rel_tol * std::max(1.0, max_abs(a));
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t best = a.rows();
    if constexpr (T::exact) {
      for (std::size_t r = row; r < a.rows(); ++r)
        if (!T::is_zero(a(r, col))) {
          best = r;
          break;
        }
    } else {
      double best_abs = tol;
      for (std::size_t r = row; r < a.rows(); ++r)
        if (std::abs(T::to_double(a(r, col))) > best_abs) {
          best_abs = std::abs(T::to_double(a(r, col)));
          best = r;
        }
    }
    if (best == a.rows()) {
      if constexpr (!T::exact)
        for (std::size_t r = row; r < a.rows(); ++r) a(r, col) = Scalar(0);
      continue;
    }
    if (best != row)
      for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(row, c), a(best, c));
    const Scalar inv = Scalar(1) / a(row, col);
    for (std::size_t c = col; c < a.cols(); ++c) a(row, c) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || T::is_zero(a(r, col), 0.0)) continue;
      const Scalar f = a(r, col);
      for (std::size_t c = col; c < a.cols(); ++c) a(r, c) -= f * a(row, c);
      if constexpr (!T::exact) a(r, col) = Scalar(0);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(a), std::move(pivots)};
}

template <typename Scalar>
std::size_t rank(const Matrix<Scalar>& a, double rel_tol = kDefaultRelTol) {
  return rref(a, rel_tol).pivots.size();
}

/// Basis of the right null space {x : a x = 0}, one vector per free column,
/// with a 1 in the free position.
template <typename Scalar>
std::vector<Vector<Scalar>> kernel(const Matrix<Scalar>& a, double rel_tol = kDefaultRelTol) {
  const auto ech = rref(a, rel_tol);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  std::vector<Vector<Scalar>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector<Scalar> v(a.cols());
    v[free] = Scalar(1);
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) v[ech.pivots[r]] = -ech.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some solution of a x = b (free variables zero), or nullopt if the system
/// is inconsistent.
template <typename Scalar>
std::optional<Vector<Scalar>> solve(const Matrix<Scalar>& a, const Vector<Scalar>& b,
                                    double rel_tol = kDefaultRelTol) {
  if (b.size() != a.rows()) throw DimensionMismatch("solve: rhs length mismatch");
  Matrix<Scalar> aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const auto ech = rref(aug, rel_tol);
  if (!ech.pivots.empty() && ech.pivots.back() == a.cols()) return std::nullopt;
  Vector<Scalar> x(a.cols());
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) x[ech.pivots[r]] = ech.reduced(r, a.cols());
  if constexpr (!ScalarTraits<Scalar>::exact) {
    const auto res = subtract(a * x, b);
    const double scale = std::max(1.0, std::max(max_abs(a) * max_abs(x), max_abs(b)));
    if (max_abs(res) > 1e3 * rel_tol * scale) return std::nullopt;
  }
  return x;
}

template <typename Scalar>
std::optional<Matrix<Scalar>> inverse(const Matrix<Scalar>& a, double rel_tol = kDefaultRelTol) {
  if (a.rows() != a.cols()) throw DimensionMismatch("inverse of non-square matrix");
  const std::size_t n = a.rows();
  Matrix<Scalar> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = Scalar(1);
  }
  const auto ech = rref(aug, rel_tol);
  if (ech.pivots.size() < n || ech.pivots[n - 1] != n - 1) return std::nullopt;
  Matrix<Scalar> inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = ech.reduced(i, n + j);
  return inv;
}

template <typename Scalar>
Scalar determinant(Matrix<Scalar> a) {
  using T = ScalarTraits<Scalar>;
  if (a.rows() != a.cols()) throw DimensionMismatch("determinant of non-square matrix");
  const std::size_t n = a.rows();
  Scalar det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = n;
    if constexpr (T::exact) {
      for (std::size_t r = k; r < n; ++r)
        if (!T::is_zero(a(r, k))) {
          piv = r;
          break;
        }
    } else {
      double best = 0.0;
      for (std::size_t r = k; r < n; ++r)
        if (std::abs(a(r, k)) > best) {
          best = std::abs(a(r, k));
          piv = r;
        }
    }
    if (piv == n) return Scalar(0);
    if (piv != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(piv, c));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t r = k + 1; r < n; ++r) {
      if (T::is_zero(a(r, k), 0.0)) continue;
      const Scalar f = a(r, k) / a(k, k);
      for (std::size_t c = k; c < n; ++c) a(r, c) -= f * a(k, c);
    }
  }
  return det;
}

/// Pfaffian of a skew-symmetric matrix by congruence elimination: each step
/// pivots on a 2x2 block and clears its rows/columns with unimodular
/// congruences, so Pf(A) is the product of the pivot entries up to the sign
/// of the swaps. Odd size gives 0.
template <typename Scalar>
Scalar pfaffian(Matrix<Scalar> a) {
  using T = ScalarTraits<Scalar>;
  if (a.rows() != a.cols()) throw DimensionMismatch("pfaffian of non-square matrix");
  const std::size_t n = a.rows();
  if (n % 2 == 1) return Scalar(0);
  Scalar pf(1);
  auto swap_index = [&a, n](std::size_t p, std::size_t q) {
    for (std::size_t c = 0; c < n; ++c) std::swap(a(p, c), a(q, c));
    for (std::size_t r = 0; r < n; ++r) std::swap(a(r, p), a(r, q));
  };
  // index i += c * index p, applied as a congruence
  auto add_index = [&a, n](std::size_t i, std::size_t p, const Scalar& c) {
    for (std::size_t col = 0; col < n; ++col) a(i, col) += c * a(p, col);
    for (std::size_t r = 0; r < n; ++r) a(r, i) += c * a(r, p);
  };
  for (std::size_t k = 0; k + 1 < n; k += 2) {
    std::size_t piv = n;
    if constexpr (T::exact) {
      for (std::size_t j = k + 1; j < n; ++j)
        if (!T::is_zero(a(k, j))) {
          piv = j;
          break;
        }
    } else {
      double best = 0.0;
      for (std::size_t j = k + 1; j < n; ++j)
        if (std::abs(a(k, j)) > best) {
          best = std::abs(a(k, j));
          piv = j;
        }
    }
    if (piv == n) return Scalar(0);
    if (piv != k + 1) {
      swap_index(k + 1, piv);
      pf = -pf;
    }
    const Scalar p = a(k, k + 1);
    pf *= p;
    for (std::size_t i = k + 2; i < n; ++i) {
      if (!T::is_zero(a(k, i), 0.0)) add_index(i, k + 1, Scalar(-a(k, i) / p));
      if (!T::is_zero(a(k + 1, i), 0.0)) add_index(i, k, Scalar(a(k + 1, i) / p));
    }
  }
  return pf;
}

template <typename Scalar>
Eigen::MatrixXd to_eigen(const Matrix<Scalar>& a) {
  Eigen::MatrixXd m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = ScalarTraits<Scalar>::to_double(a(i, j));
  return m;
}

template <typename Scalar>
Matrix<double> to_double(const Matrix<Scalar>& a) {
  Matrix<double> m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = ScalarTraits<Scalar>::to_double(a(i, j));
  return m;
}

template <typename Scalar>
Vector<double> to_double(const Vector<Scalar>& v) {
  Vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = ScalarTraits<Scalar>::to_double(v[i]);
  return out;
}

inline Matrix<double> from_eigen(const Eigen::MatrixXd& m) {
  Matrix<double> a(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) a(i, j) = m(i, j);
  return a;
}

/// Inertia of a symmetric matrix.
struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
};

/// Exact inertia by symmetric elimination (Sylvester's law), with 2x2 pivots
/// handled by diagonalizing A(i,j) e_i + e_j combinations when the diagonal
/// vanishes.
Signature signature(const RatMatrix& symmetric);

/// Inertia from eigenvalues, |lambda| <= rel_tol * max|lambda| counted as 0.
Signature signature(const Matrix<double>& symmetric, double rel_tol = 1e-10);

}  // namespace fatcert
