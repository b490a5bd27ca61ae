#include "jka/matrix.hpp"

#include <ostream>

namespace jka {

std::string to_string(const Rational& q) { return q.get_str(); }

std::ostream& operator<<(std::ostream& os, const ComplexRational& z) {
  if (sgn(z.im) == 0) return os << z.re.get_str();
  return os << z.re.get_str() << (sgn(z.im) < 0 ? "" : "+") << z.im.get_str() << "i";
}

Eigen::MatrixXd to_eigen(const QMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).get_d();
  return out;
}

Eigen::VectorXd to_eigen(const QVector& v) {
  Eigen::VectorXd out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out(i) = v[i].get_d();
  return out;
}

bool RowReducer::insert(QVector v) {
  if (v.size() != width_) throw Error("RowReducer: width mismatch");
  const std::size_t index = rows_.size();
  QVector combo(index + 1, Rational(0));
  combo[index] = 1;
  for (const Row& row : rows_) {
    const Rational c = v[row.pivot];
    if (sgn(c) == 0) continue;
    for (std::size_t j = 0; j < width_; ++j)
      if (sgn(row.vec[j]) != 0) v[j] -= c * row.vec[j];
    for (std::size_t j = 0; j < row.combo.size(); ++j)
      if (sgn(row.combo[j]) != 0) combo[j] -= c * row.combo[j];
  }
  std::size_t pivot = width_;
  for (std::size_t j = 0; j < width_; ++j)
    if (sgn(v[j]) != 0) {
      pivot = j;
      break;
    }
  if (pivot == width_) return false;
  const Rational inv = 1 / v[pivot];
  for (auto& x : v) x *= inv;
  for (auto& x : combo) x *= inv;
  // Keep the basis fully reduced so solve() is a single pass.
  for (Row& row : rows_) {
    const Rational c = row.vec[pivot];
    if (sgn(c) == 0) continue;
    for (std::size_t j = 0; j < width_; ++j)
      if (sgn(v[j]) != 0) row.vec[j] -= c * v[j];
    row.combo.resize(index + 1, Rational(0));
    for (std::size_t j = 0; j < combo.size(); ++j)
      if (sgn(combo[j]) != 0) row.combo[j] -= c * combo[j];
  }
  rows_.push_back(Row{std::move(v), pivot, std::move(combo)});
  return true;
}

std::optional<QVector> RowReducer::solve(const QVector& v) const {
  if (v.size() != width_) throw Error("RowReducer: width mismatch");
  QVector rest = v;
  QVector coords(rows_.size(), Rational(0));
  for (const Row& row : rows_) {
    const Rational c = rest[row.pivot];
    if (sgn(c) == 0) continue;
    for (std::size_t j = 0; j < width_; ++j)
      if (sgn(row.vec[j]) != 0) rest[j] -= c * row.vec[j];
    for (std::size_t j = 0; j < row.combo.size(); ++j)
      if (sgn(row.combo[j]) != 0) coords[j] += c * row.combo[j];
  }
  for (const auto& x : rest)
    if (sgn(x) != 0) return std::nullopt;
  return coords;
}

std::size_t exact_rank(const std::vector<QVector>& vectors) {
  if (vectors.empty()) return 0;
  RowReducer reducer(vectors.front().size());
  for (const auto& v : vectors) reducer.insert(v);
  return reducer.rank();
}

QMatrix exact_inverse(const QMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw Error("exact_inverse: matrix not square");
  QMatrix a = m;
  QMatrix inv = QMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(a(piv, col)) == 0) ++piv;
    if (piv == n) throw Error("exact_inverse: singular matrix");
    if (piv != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    const Rational p = 1 / a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) *= p;
      inv(col, j) *= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || sgn(a(i, col)) == 0) continue;
      const Rational c = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= c * a(col, j);
        inv(i, j) -= c * inv(col, j);
      }
    }
  }
  return inv;
}

QVector characteristic_polynomial(const QMatrix& m) {
  // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k.
  const std::size_t n = m.rows();
  QVector c(n + 1, Rational(0));
  c[n] = 1;
  QMatrix mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    QMatrix next = m * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = std::move(next);
    c[n - k] = -(m * mk).trace() / Rational(static_cast<long>(k));
  }
  return c;
}

std::pair<QMatrix, QVector> ldlt(const QMatrix& s) {
  const std::size_t n = s.rows();
  QMatrix l = QMatrix::identity(n);
  QVector d(n, Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    Rational dj = s(j, j);
    for (std::size_t k = 0; k < j; ++k) dj -= l(j, k) * l(j, k) * d[k];
    d[j] = dj;
    for (std::size_t i = j + 1; i < n; ++i) {
      Rational v = s(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= l(i, k) * l(j, k) * d[k];
      if (sgn(dj) == 0) {
        if (sgn(v) != 0) throw Error("ldlt: zero pivot with nonzero column");
        continue;
      }
      l(i, j) = v / dj;
    }
  }
  return {l, d};
}

std::vector<QVector> exact_nullspace(const QMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  QMatrix a = m;
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && sgn(a(piv, c)) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(piv, j), a(r, j));
    const Rational p = 1 / a(r, c);
    for (std::size_t j = 0; j < cols; ++j) a(r, j) *= p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(a(i, c)) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = 0; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  std::vector<QVector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    QVector v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = -a(k, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace jka
