#pragma once

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "jka/division_ring.hpp"
#include "jka/matrix.hpp"
#include "jka/random.hpp"

namespace jka {

enum class Family { gamma, herm_r, herm_c, herm_h, herm_o };

std::string family_name(Family f);
Family parse_family(const std::string& name);

struct AlgebraSpec {
  Family family;
  int n;
};

/// Parses "FAMILY:N", e.g. "herm_o:3".
AlgebraSpec parse_algebra_spec(const std::string& text);
std::string to_string(const AlgebraSpec& spec);

/// One simple Euclidean Jordan algebra with a fixed basis.
///
/// The basis is orthogonal for <u|v> = tr(uv)/rho with e_0 = e, but not
/// orthonormal: |e_a|^2 = weight(a) is a positive rational. Coordinates are
/// then exact for every family, and sums over an orthonormal basis are
/// computed as sum_a (.)/weight(a).
class Algebra {
 public:
  struct Entry {
    int index;
    Rational q;
    double d;
  };

  Family family() const { return family_; }
  int n() const { return n_; }
  int rho() const { return rho_; }
  int delta() const { return delta_; }
  int dim() const { return dim_; }
  AlgebraSpec spec() const { return {family_, n_}; }
  std::string name() const;

  const Rational& weight(int a) const { return weights_[a]; }
  const QVector& weights() const { return weights_; }
  const Eigen::VectorXd& weights_d() const { return weights_d_; }
  const std::string& label(int a) const { return labels_[a]; }

  /// e_a e_b as a sparse coordinate list.
  const std::vector<Entry>& product_entries(int a, int b) const { return table_[a * dim_ + b]; }

  QVector unit() const { return basis(0); }
  QVector basis(int a) const;
  QVector zero() const { return QVector(dim_, Rational(0)); }

  template <class T>
  std::vector<T> mul(const std::vector<T>& u, const std::vector<T>& v) const;

  QVector product(const QVector& u, const QVector& v) const { return mul(u, v); }
  Eigen::VectorXd product(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;

  Rational trace(const QVector& u) const { return rho_ * u[0]; }
  double trace(const Eigen::VectorXd& u) const { return rho_ * u(0); }
  Rational inner(const QVector& u, const QVector& v) const;
  double inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;

  /// Matrix of L_u acting on coordinate columns.
  const QMatrix& lmul_basis(int a) const { return lmul_basis_[a]; }
  QMatrix lmul(const QVector& u) const;
  template <class T>
  Matrix<T> lmul_t(const std::vector<T>& u) const;
  Eigen::MatrixXd lmul(const Eigen::VectorXd& u) const;

  /// {uvw} = u(vw) + w(vu) - (uw)v.
  QVector triple(const QVector& u, const QVector& v, const QVector& w) const;
  /// S_uv = [L_u, L_v] + L_{uv}, the map z -> {uvz}.
  QMatrix s_map(const QVector& u, const QVector& v) const;
  template <class T>
  Matrix<T> s_map_t(const std::vector<T>& u, const std::vector<T>& v) const;
  /// P(x) = 2 L_x^2 - L_{x^2}.
  QMatrix quadratic_rep(const QVector& x) const;
  Eigen::MatrixXd quadratic_rep(const Eigen::VectorXd& x) const;

  /// Adjoint of a map with respect to <.|.>: W^{-1} M^T W.
  template <class T>
  Matrix<T> adjoint(const Matrix<T>& m) const;
  Eigen::MatrixXd adjoint(const Eigen::MatrixXd& m) const;

  /// Hermitian-matrix picture (Herm families only), entries row-major.
  std::vector<DivisionRingElement> to_hermitian(const QVector& u) const;
  QVector from_hermitian(const std::vector<DivisionRingElement>& m) const;
  RingKind ring() const { return ring_; }

  friend std::shared_ptr<const Algebra> make_algebra(Family family, int n);

 private:
  Algebra() = default;
  void finish();

  Family family_ = Family::gamma;
  RingKind ring_ = RingKind::real;
  int n_ = 0;
  int rho_ = 0;
  int delta_ = 0;
  int dim_ = 0;
  QVector weights_;
  Eigen::VectorXd weights_d_;
  std::vector<std::string> labels_;
  std::vector<std::vector<Entry>> table_;
  std::vector<QMatrix> lmul_basis_;
  std::vector<Eigen::MatrixXd> lmul_basis_d_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Builds the algebra; throws Error outside the classification range.
AlgebraPtr make_algebra(Family family, int n);
inline AlgebraPtr make_algebra(const AlgebraSpec& s) { return make_algebra(s.family, s.n); }

/// Expected (rho, delta) from the classification table.
std::pair<int, int> rank_and_degree(Family family, int n);

nlohmann::json descriptor_json(const Algebra& alg);
/// Product tensor as CSV rows "alpha,beta,gamma,coefficient".
std::string product_tensor_csv(const Algebra& alg);

/// Element of a specific algebra; the free functions below check that
/// both operands come from the same algebra.
struct JordanElement {
  AlgebraPtr algebra;
  QVector coords;
};

JordanElement element(const AlgebraPtr& alg, QVector coords);
JordanElement jordan_product(const JordanElement& u, const JordanElement& v);
Rational trace(const JordanElement& u);
Rational inner_product(const JordanElement& u, const JordanElement& v);
QMatrix lmul(const JordanElement& u);
JordanElement triple_product(const JordanElement& u, const JordanElement& v, const JordanElement& w);
QMatrix quadratic_rep(const JordanElement& x);

/// Random element with small rational coordinates.
QVector random_element(const Algebra& alg, Rng& rng);

// ---- template definitions ----

template <class T>
std::vector<T> Algebra::mul(const std::vector<T>& u, const std::vector<T>& v) const {
  std::vector<T> out(dim_, Field<T>::zero());
  for (int a = 0; a < dim_; ++a) {
    if (Field<T>::is_zero(u[a])) continue;
    for (int b = 0; b < dim_; ++b) {
      if (Field<T>::is_zero(v[b])) continue;
      const T uv = u[a] * v[b];
      for (const auto& e : table_[a * dim_ + b]) out[e.index] += uv * Field<T>::from_rational(e.q);
    }
  }
  return out;
}

template <class T>
Matrix<T> Algebra::lmul_t(const std::vector<T>& u) const {
  Matrix<T> m(dim_, dim_);
  for (int a = 0; a < dim_; ++a) {
    if (Field<T>::is_zero(u[a])) continue;
    for (int b = 0; b < dim_; ++b)
      for (const auto& e : table_[a * dim_ + b]) m(e.index, b) += u[a] * Field<T>::from_rational(e.q);
  }
  return m;
}

template <class T>
Matrix<T> Algebra::s_map_t(const std::vector<T>& u, const std::vector<T>& v) const {
  const auto lu = lmul_t(u);
  const auto lv = lmul_t(v);
  return lu * lv - lv * lu + lmul_t(mul(u, v));
}

template <class T>
Matrix<T> Algebra::adjoint(const Matrix<T>& m) const {
  Matrix<T> out(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      out(i, j) = m(j, i) * Field<T>::from_rational(weights_[j] / weights_[i]);
  return out;
}

}  // namespace jka
