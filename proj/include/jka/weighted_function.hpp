#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/rational.hpp>

#include "jka/matrix.hpp"
#include "jka/rational.hpp"

namespace jka {

using Exponent = boost::rational<long long>;

/// Exponents of x^1 .. x^{dim-1}; the coordinate x^0 equals r = <e|x> and
/// lives in the r-power of the term.
/// Stored inline; the largest algebra has 26 such coordinates.
class Monomial {
 public:
  static constexpr std::size_t kMax = 31;

  Monomial() = default;
  Monomial(std::size_t n, std::uint8_t value) : n_(static_cast<std::uint8_t>(n)) {
    if (n > kMax) throw Error("Monomial: too many coordinates");
    std::fill_n(e_.begin(), n, value);
  }

  std::size_t size() const { return n_; }
  std::uint8_t& operator[](std::size_t i) { return e_[i]; }
  std::uint8_t operator[](std::size_t i) const { return e_[i]; }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.n_ == b.n_ && a.e_ == b.e_; }
  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.e_ < b.e_;
  }

 private:
  std::array<std::uint8_t, kMax> e_{};
  std::uint8_t n_ = 0;
};

struct TermKey {
  Exponent gamma;  // factor e^{gamma r}
  Exponent s;      // factor r^s
  Monomial mono;

  friend bool operator<(const TermKey& a, const TermKey& b) {
    if (a.gamma != b.gamma) return a.gamma < b.gamma;
    if (a.s != b.s) return a.s < b.s;
    return a.mono < b.mono;
  }
  friend bool operator==(const TermKey& a, const TermKey& b) {
    return a.gamma == b.gamma && a.s == b.s && a.mono == b.mono;
  }
};

/// Finite sum of c e^{gamma r} r^s x^m over an algebra of dimension dim,
/// with exact complex rational coefficients. Terms are merged and zero
/// coefficients dropped after every operation.
class WeightedFunction {
 public:
  using Terms = std::map<TermKey, ComplexRational>;

  explicit WeightedFunction(int dim = 0) : dim_(dim) {}

  static WeightedFunction constant(int dim, const ComplexRational& c);
  /// e^{gamma r} r^s
  static WeightedFunction exp_power(int dim, Exponent gamma, Exponent s);
  /// The coordinate x^alpha (x^0 is r).
  static WeightedFunction coordinate(int dim, int alpha);
  /// sum_alpha c_alpha x^alpha.
  static WeightedFunction linear(const QVector& c);
  static WeightedFunction monomial(int dim, const ComplexRational& c, Exponent gamma, Exponent s,
                                   const std::vector<int>& full_exponents);

  int dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const TermKey& key, const ComplexRational& c);

  WeightedFunction& operator+=(const WeightedFunction& o);
  WeightedFunction& operator-=(const WeightedFunction& o);
  WeightedFunction& operator*=(const ComplexRational& c);
  /// this += c * o
  void add_scaled(const WeightedFunction& o, const ComplexRational& c);
  friend WeightedFunction operator+(WeightedFunction a, const WeightedFunction& b) { return a += b; }
  friend WeightedFunction operator-(WeightedFunction a, const WeightedFunction& b) { return a -= b; }
  friend WeightedFunction operator*(const ComplexRational& c, WeightedFunction a) { return a *= c; }
  friend WeightedFunction operator*(const WeightedFunction& a, const WeightedFunction& b);
  friend bool operator==(const WeightedFunction& a, const WeightedFunction& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  /// Multiplies by r^s.
  WeightedFunction times_rpow(Exponent s) const;
  /// Partial derivative in the coordinate x^alpha.
  WeightedFunction partial(int alpha) const;

  /// Value at the point with coordinates x (x(0) = r > 0 when any s < 0).
  std::complex<double> eval(const Eigen::VectorXd& x) const;
  /// Largest polynomial degree (r-power excluded).
  int degree() const;

  std::string to_string() const;

 private:
  int dim_;
  Terms terms_;
};

/// A vector field sum_beta p_beta d/dx^beta with function coefficients.
struct VectorField {
  std::vector<WeightedFunction> components;

  /// x -> M x for a matrix in coordinates.
  static VectorField linear(const QMatrix& m);
  /// The constant field u.
  static VectorField constant(const QVector& u);

  WeightedFunction apply(const WeightedFunction& f) const;
};

/// sum_{b<=g} q_bg d_b d_g + first, with q stored densely as dim x dim and
/// only the entries b <= g used.
struct SecondOrderOperator {
  int dim = 0;
  std::vector<WeightedFunction> q;
  VectorField first;

  explicit SecondOrderOperator(int d = 0) : dim(d), q(static_cast<std::size_t>(d) * d, WeightedFunction(d)) {}
  WeightedFunction& coeff(int b, int g) { return q[static_cast<std::size_t>(b) * dim + g]; }
  const WeightedFunction& coeff(int b, int g) const { return q[static_cast<std::size_t>(b) * dim + g]; }

  WeightedFunction apply(const WeightedFunction& f) const;
};

}  // namespace jka
