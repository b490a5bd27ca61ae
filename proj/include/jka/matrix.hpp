#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "jka/rational.hpp"

namespace jka {

/// Small dense row-major matrix over an exact or floating field.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Field<T>::zero()) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Field<T>::one();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<T>& data() const { return data_; }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!Field<T>::is_zero(x)) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
  Matrix operator-() const {
    Matrix m(*this);
    for (auto& x : m.data_) x = -x;
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (Field<T>::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (Field<T>::is_zero(b(k, j))) continue;
          c(i, j) += aik * b(k, j);
        }
      }
    return c;
  }

  friend std::vector<T> operator*(const Matrix& a, const std::vector<T>& v) {
    std::vector<T> out(a.rows_, Field<T>::zero());
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (Field<T>::is_zero(a(i, k)) || Field<T>::is_zero(v[k])) continue;
        out[i] += a(i, k) * v[k];
      }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  T trace() const {
    T t = Field<T>::zero();
    for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& x : data_) m = std::max(m, Field<T>::magnitude(x));
    return m;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using QVector = std::vector<Rational>;

template <class T>
Matrix<T> commutator(const Matrix<T>& a, const Matrix<T>& b) {
  return a * b - b * a;
}

/// Lifts an exact matrix into another field (complexification, or float).
template <class To>
Matrix<To> convert(const QMatrix& m) {
  Matrix<To> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Field<To>::from_rational(m(i, j));
  return out;
}

Eigen::MatrixXd to_eigen(const QMatrix& m);
Eigen::VectorXd to_eigen(const QVector& v);

/// Incremental exact row echelon basis. Inserting a vector reduces it
/// against the current basis and keeps it iff it is independent.
class RowReducer {
 public:
  explicit RowReducer(std::size_t width) : width_(width) {}

  /// Returns true if v was independent of the vectors inserted so far.
  bool insert(QVector v);

  /// Coordinates of v in the span, or nullopt when v is not in the span.
  /// Coordinates refer to the originally inserted independent vectors.
  std::optional<QVector> solve(const QVector& v) const;

  std::size_t rank() const { return rows_.size(); }
  std::size_t width() const { return width_; }

 private:
  struct Row {
    QVector vec;         // reduced vector, pivot entry normalized to 1
    std::size_t pivot;   // pivot column
    QVector combo;       // expresses vec in terms of inserted originals
  };
  std::size_t width_;
  std::vector<Row> rows_;
};

/// Rank of the span of the given vectors, exactly.
std::size_t exact_rank(const std::vector<QVector>& vectors);

/// Exact inverse; throws Error when singular.
QMatrix exact_inverse(const QMatrix& m);

/// Characteristic polynomial coefficients c_0..c_n of det(tI - M), exact.
QVector characteristic_polynomial(const QMatrix& m);

/// Exact LDL^T of a symmetric matrix: returns (L unit lower, D diagonal).
/// Throws when a zero pivot is met before the end of a nonzero block.
std::pair<QMatrix, QVector> ldlt(const QMatrix& symmetric);

/// Basis of the null space of m, exact.
std::vector<QVector> exact_nullspace(const QMatrix& m);

}  // namespace jka
