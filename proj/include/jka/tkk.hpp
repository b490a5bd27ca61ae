#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "jka/algebra.hpp"
#include "jka/random.hpp"

namespace jka {

/// X_x + S + Y_y in co(V) = V + str(V) + V*, over a real or complex field.
template <class T>
struct ConformalElementT {
  std::vector<T> x;
  Matrix<T> s;
  std::vector<T> y;

  ConformalElementT& operator+=(const ConformalElementT& o) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] += o.x[i];
      y[i] += o.y[i];
    }
    s += o.s;
    return *this;
  }
  ConformalElementT& operator-=(const ConformalElementT& o) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] -= o.x[i];
      y[i] -= o.y[i];
    }
    s -= o.s;
    return *this;
  }
  ConformalElementT& operator*=(const T& c) {
    for (auto& v : x) v *= c;
    for (auto& v : y) v *= c;
    s *= c;
    return *this;
  }
  friend ConformalElementT operator+(ConformalElementT a, const ConformalElementT& b) { return a += b; }
  friend ConformalElementT operator-(ConformalElementT a, const ConformalElementT& b) { return a -= b; }
  friend ConformalElementT operator*(const T& c, ConformalElementT a) { return a *= c; }
  friend bool operator==(const ConformalElementT& a, const ConformalElementT& b) {
    return a.x == b.x && a.y == b.y && a.s == b.s;
  }
  bool is_zero() const {
    for (const auto& v : x)
      if (!Field<T>::is_zero(v)) return false;
    for (const auto& v : y)
      if (!Field<T>::is_zero(v)) return false;
    return s.is_zero();
  }
  double max_abs() const {
    double m = s.max_abs();
    for (const auto& v : x) m = std::max(m, Field<T>::magnitude(v));
    for (const auto& v : y) m = std::max(m, Field<T>::magnitude(v));
    return m;
  }
};

using ConformalElement = ConformalElementT<Rational>;
using ComplexConformalElement = ConformalElementT<ComplexRational>;

template <class To>
ConformalElementT<To> convert(const ConformalElement& a) {
  ConformalElementT<To> out{{}, convert<To>(a.s), {}};
  for (const auto& v : a.x) out.x.push_back(Field<To>::from_rational(v));
  for (const auto& v : a.y) out.y.push_back(Field<To>::from_rational(v));
  return out;
}

struct LieDims {
  int der;
  int str;
  int u;
  int co;
};

/// The conformal algebra of a Jordan algebra with the TKK bracket. Keeps an
/// exact basis of str(V) chosen among the S_{e_a e_b}, used to test
/// membership and to read off coordinates.
class ConformalAlgebra {
 public:
  explicit ConformalAlgebra(AlgebraPtr alg);

  const Algebra& jordan() const { return *alg_; }
  const AlgebraPtr& jordan_ptr() const { return alg_; }

  ConformalElement zero() const;
  ConformalElement X(const QVector& u) const;
  ConformalElement Y(const QVector& v) const;
  ConformalElement S(const QVector& u, const QVector& v) const;
  ConformalElement L(const QVector& u) const { return S(u, alg_->unit()); }
  ConformalElement from_str(const QMatrix& s) const;

  /// Bracket without membership checks (inputs built by this class).
  template <class T>
  ConformalElementT<T> bracket(const ConformalElementT<T>& a, const ConformalElementT<T>& b) const;
  /// Checked bracket: shapes and str membership of both operands.
  ConformalElement co_bracket(const ConformalElement& a, const ConformalElement& b) const;

  /// theta(X_u) = Y_u, theta(Y_u) = X_u, theta(S) = -S^dagger.
  template <class T>
  ConformalElementT<T> theta(const ConformalElementT<T>& a) const;

  bool in_str(const QMatrix& s) const { return str_coords(s).has_value(); }
  std::optional<QVector> str_coords(const QMatrix& s) const;
  Eigen::VectorXd str_coords(const Eigen::MatrixXd& s) const;
  const std::vector<QMatrix>& str_basis() const { return str_basis_; }
  const std::vector<QMatrix>& der_basis() const { return der_basis_; }

  LieDims dims() const;

  /// Basis X_a, Y_a (a < dim V), then the str basis.
  std::vector<ConformalElement> standard_basis() const;
  /// Coordinates in standard_basis(); throws if the S part leaves str(V).
  QVector coordinates(const ConformalElement& a) const;
  Eigen::VectorXd coordinates(const ConformalElementT<double>& a) const;

  std::vector<ConformalElement> u_spanning() const;  // [L_a, L_b], X_c + Y_c
  std::vector<ConformalElement> p_spanning() const;  // L_c, X_c - Y_c

  /// Random element with small rational parts; S part a combination of two S_uv.
  ConformalElement random(Rng& rng) const;

 private:
  static QVector flatten(const QMatrix& m);

  AlgebraPtr alg_;
  std::vector<QMatrix> der_basis_;
  std::vector<QMatrix> str_basis_;
  RowReducer str_reducer_;
  Eigen::MatrixXd str_matrix_d_;  // flattened str basis as columns
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> str_qr_;
};

LieDims algebra_dims(const Algebra& alg);

/// Gram matrix of (a, b) -> Killing(a, theta b), Killing(a, b) = tr(ad a ad b).
/// Exact; throws Error when the basis does not span co(V).
QMatrix killing_gram(const ConformalAlgebra& co, const std::vector<ConformalElement>& basis);
/// Same in floating point, for large algebras.
Eigen::MatrixXd killing_gram_numeric(const ConformalAlgebra& co, const std::vector<ConformalElement>& basis);
/// Killing(a, b) exactly.
Rational killing(const ConformalAlgebra& co, const ConformalElement& a, const ConformalElement& b);

/// Rational primitive idempotent of the standard frame: E_11, or (e + v1)/2 for Gamma(n).
QVector standard_idempotent(const Algebra& alg);

struct CartanData {
  std::vector<ConformalElement> u_basis;
  std::vector<ConformalElement> p_basis;
  ComplexConformalElement h_alpha0;
  ComplexConformalElement e_plus;
  ComplexConformalElement e_minus;
};

CartanData cartan_data(const ConformalAlgebra& co, const QVector& e11);

/// h_u = i(X_u + Y_u), E_u^{+-} = (i/2)(X_u - Y_u) -+ L_u.
ComplexConformalElement vogan_h(const ConformalAlgebra& co, const QVector& u);
ComplexConformalElement vogan_e(const ConformalAlgebra& co, const QVector& u, int sign);

struct ResidualEntry {
  std::string id;
  double residual;
};

/// sl2 relations at alpha_0 and the four relations among h_u, E_u^{+-}
/// on `samples` random pairs; residuals are exact max-abs values.
std::vector<ResidualEntry> vogan_sl2_check(const ConformalAlgebra& co, const QVector& e11, Rng& rng, int samples = 3);

// ---- template definitions ----

template <class T>
ConformalElementT<T> ConformalAlgebra::bracket(const ConformalElementT<T>& a, const ConformalElementT<T>& b) const {
  const Algebra& alg = *alg_;
  ConformalElementT<T> out;
  out.x = a.s * b.x;
  {
    const auto t = b.s * a.x;
    for (std::size_t i = 0; i < t.size(); ++i) out.x[i] -= t[i];
  }
  out.y = alg.adjoint(b.s) * a.y;
  {
    const auto t = alg.adjoint(a.s) * b.y;
    for (std::size_t i = 0; i < t.size(); ++i) out.y[i] -= t[i];
  }
  out.s = a.s * b.s - b.s * a.s;
  const T two = Field<T>::from_rational(Rational(2));
  out.s -= two * alg.s_map_t(a.x, b.y);
  out.s += two * alg.s_map_t(b.x, a.y);
  return out;
}

template <class T>
ConformalElementT<T> ConformalAlgebra::theta(const ConformalElementT<T>& a) const {
  return {a.y, -alg_->adjoint(a.s), a.x};
}

}  // namespace jka
