#include "jka/division_ring.hpp"

namespace jka {

int ring_dimension(RingKind kind) {
  switch (kind) {
    case RingKind::real: return 1;
    case RingKind::complex: return 2;
    case RingKind::quaternion: return 4;
    case RingKind::octonion: return 8;
  }
  return 1;
}

DivisionRingElement::DivisionRingElement(RingKind kind)
    : kind_(kind), coords_(ring_dimension(kind), Rational(0)) {}

DivisionRingElement::DivisionRingElement(RingKind kind, std::vector<Rational> coords)
    : kind_(kind), coords_(std::move(coords)) {
  if (static_cast<int>(coords_.size()) != ring_dimension(kind))
    throw Error("division ring element: wrong coordinate count");
}

DivisionRingElement DivisionRingElement::unit(RingKind kind, int index) {
  DivisionRingElement u(kind);
  u.coords_.at(index) = 1;
  return u;
}

DivisionRingElement DivisionRingElement::conj() const {
  DivisionRingElement c(*this);
  for (std::size_t i = 1; i < c.coords_.size(); ++i) c.coords_[i] = -c.coords_[i];
  return c;
}

Rational DivisionRingElement::norm() const {
  Rational n = 0;
  for (const auto& x : coords_) n += x * x;
  return n;
}

bool DivisionRingElement::is_zero() const {
  for (const auto& x : coords_)
    if (sgn(x) != 0) return false;
  return true;
}

DivisionRingElement& DivisionRingElement::operator+=(const DivisionRingElement& o) {
  if (o.kind_ != kind_) throw Error("division ring kind mismatch");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

DivisionRingElement& DivisionRingElement::operator-=(const DivisionRingElement& o) {
  if (o.kind_ != kind_) throw Error("division ring kind mismatch");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

DivisionRingElement& DivisionRingElement::operator*=(const Rational& s) {
  for (auto& x : coords_) x *= s;
  return *this;
}

namespace {

std::vector<Rational> conj_of(std::span<const Rational> a) {
  std::vector<Rational> c(a.begin(), a.end());
  for (std::size_t i = 1; i < c.size(); ++i) c[i] = -c[i];
  return c;
}

}  // namespace

void cd_multiply(std::span<const Rational> a, std::span<const Rational> b, std::span<Rational> out) {
  const std::size_t n = a.size();
  if (n == 1) {
    out[0] = a[0] * b[0];
    return;
  }
  const std::size_t h = n / 2;
  auto a1 = a.first(h), a2 = a.subspan(h);
  auto b1 = b.first(h), b2 = b.subspan(h);
  const auto b1c = conj_of(b1);
  const auto b2c = conj_of(b2);
  std::vector<Rational> t1(h), t2(h);
  // first half: a1 b1 - conj(b2) a2
  cd_multiply(a1, b1, t1);
  cd_multiply(b2c, a2, t2);
  for (std::size_t i = 0; i < h; ++i) out[i] = t1[i] - t2[i];
  // second half: b2 a1 + a2 conj(b1)
  cd_multiply(b2, a1, t1);
  cd_multiply(a2, b1c, t2);
  for (std::size_t i = 0; i < h; ++i) out[h + i] = t1[i] + t2[i];
}

DivisionRingElement operator*(const DivisionRingElement& a, const DivisionRingElement& b) {
  if (a.kind_ != b.kind_) throw Error("division ring kind mismatch");
  DivisionRingElement out(a.kind_);
  cd_multiply(a.coords_, b.coords_, out.coords_);
  return out;
}

}  // namespace jka
