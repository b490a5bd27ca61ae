#pragma once

#include <span>
#include <vector>

#include "jka/rational.hpp"

namespace jka {

enum class RingKind { real, complex, quaternion, octonion };

int ring_dimension(RingKind kind);

/// Element of R, C, H or O with rational coordinates, built by
/// Cayley-Dickson doubling: (a,b)(c,d) = (ac - conj(d) b, d a + b conj(c)).
class DivisionRingElement {
 public:
  explicit DivisionRingElement(RingKind kind);
  DivisionRingElement(RingKind kind, std::vector<Rational> coords);

  static DivisionRingElement unit(RingKind kind, int index);

  RingKind kind() const { return kind_; }
  const std::vector<Rational>& coords() const { return coords_; }
  const Rational& operator[](int i) const { return coords_[i]; }

  DivisionRingElement conj() const;
  Rational norm() const;  // squared Euclidean norm, x conj(x)
  Rational real_part() const { return coords_[0]; }
  bool is_zero() const;

  DivisionRingElement& operator+=(const DivisionRingElement& o);
  DivisionRingElement& operator-=(const DivisionRingElement& o);
  DivisionRingElement& operator*=(const Rational& s);

  friend DivisionRingElement operator+(DivisionRingElement a, const DivisionRingElement& b) { return a += b; }
  friend DivisionRingElement operator-(DivisionRingElement a, const DivisionRingElement& b) { return a -= b; }
  friend DivisionRingElement operator*(const DivisionRingElement& a, const DivisionRingElement& b);
  friend bool operator==(const DivisionRingElement& a, const DivisionRingElement& b) {
    return a.kind_ == b.kind_ && a.coords_ == b.coords_;
  }

 private:
  RingKind kind_;
  std::vector<Rational> coords_;
};

/// Cayley-Dickson product on raw coordinate spans of equal power-of-two size.
void cd_multiply(std::span<const Rational> a, std::span<const Rational> b, std::span<Rational> out);

}  // namespace jka
