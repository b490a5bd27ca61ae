#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace jka {

/// Exact rational scalar used by every exact computation in the library.
using Rational = mpq_class;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when two operands live in different Jordan algebras.
class AlgebraMismatch : public Error {
 public:
  AlgebraMismatch() : Error("operands belong to different algebras") {}
};

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double d) { return d; }

std::string to_string(const Rational& q);

/// Rational from a small numerator/denominator pair.
inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Gaussian rational a + b i with exact parts.
struct ComplexRational {
  Rational re;
  Rational im;

  ComplexRational() = default;
  ComplexRational(Rational r) : re(std::move(r)) {}  // NOLINT: implicit by design of the field tower
  ComplexRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  ComplexRational(int r) : re(r) {}  // NOLINT

  static ComplexRational i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }

  ComplexRational conj() const { return {re, -im}; }

  ComplexRational& operator+=(const ComplexRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ComplexRational& operator-=(const ComplexRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  ComplexRational& operator*=(const ComplexRational& o) {
    if (sgn(im) == 0 && sgn(o.im) == 0) {
      re *= o.re;
      return *this;
    }
    Rational r = re * o.re - im * o.im;
    Rational s = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(s);
    return *this;
  }
  ComplexRational& operator/=(const ComplexRational& o) {
    Rational den = o.re * o.re + o.im * o.im;
    if (sgn(den) == 0) throw Error("division by zero");
    Rational r = (re * o.re + im * o.im) / den;
    Rational s = (im * o.re - re * o.im) / den;
    re = std::move(r);
    im = std::move(s);
    return *this;
  }
  ComplexRational operator-() const { return {-re, -im}; }

  friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
  friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
  friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
  friend ComplexRational operator/(ComplexRational a, const ComplexRational& b) { return a /= b; }
  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const ComplexRational& a, const ComplexRational& b) { return !(a == b); }

  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
};

std::ostream& operator<<(std::ostream& os, const ComplexRational& z);

/// Scalar-field traits shared by templated exact and floating code paths.
template <class T>
struct Field;

template <>
struct Field<Rational> {
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static bool is_zero(const Rational& q) { return sgn(q) == 0; }
  static double magnitude(const Rational& q) { return std::abs(q.get_d()); }
  static Rational from_rational(const Rational& q) { return q; }
};

template <>
struct Field<ComplexRational> {
  static ComplexRational zero() { return {}; }
  static ComplexRational one() { return {Rational(1)}; }
  static bool is_zero(const ComplexRational& z) { return z.is_zero(); }
  static double magnitude(const ComplexRational& z) { return std::abs(z.to_complex()); }
  static ComplexRational from_rational(const Rational& q) { return {q}; }
};

template <>
struct Field<double> {
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static bool is_zero(double d) { return d == 0.0; }
  static double magnitude(double d) { return std::abs(d); }
  static double from_rational(const Rational& q) { return q.get_d(); }
};

template <>
struct Field<std::complex<double>> {
  using C = std::complex<double>;
  static C zero() { return {}; }
  static C one() { return {1.0, 0.0}; }
  static bool is_zero(const C& z) { return z == C{}; }
  static double magnitude(const C& z) { return std::abs(z); }
  static C from_rational(const Rational& q) { return {q.get_d(), 0.0}; }
};

inline std::complex<double> to_complex(const ComplexRational& z) { return z.to_complex(); }
inline std::complex<double> to_complex(const std::complex<double>& z) { return z; }
inline std::complex<double> to_complex(const Rational& q) { return {q.get_d(), 0.0}; }
inline std::complex<double> to_complex(double d) { return {d, 0.0}; }

}  // namespace jka
