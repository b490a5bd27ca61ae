#include "jka/weighted_function.hpp"

#include <cmath>
#include <sstream>

namespace jka {

namespace {

// boost::rational<long long> compared against a plain int recurses forever in
// this boost version, so always compare against an Exponent
const Exponent kZero(0);

Rational to_rational(const Exponent& e) { return rat(static_cast<long>(e.numerator()), static_cast<long>(e.denominator())); }

double to_double(const Exponent& e) { return static_cast<double>(e.numerator()) / static_cast<double>(e.denominator()); }

}  // namespace

WeightedFunction WeightedFunction::constant(int dim, const ComplexRational& c) {
  WeightedFunction f(dim);
  f.add_term({Exponent(0), Exponent(0), Monomial(dim - 1, 0)}, c);
  return f;
}

WeightedFunction WeightedFunction::exp_power(int dim, Exponent gamma, Exponent s) {
  WeightedFunction f(dim);
  f.add_term({gamma, s, Monomial(dim - 1, 0)}, ComplexRational(1));
  return f;
}

WeightedFunction WeightedFunction::coordinate(int dim, int alpha) {
  WeightedFunction f(dim);
  Monomial m(dim - 1, 0);
  Exponent s(0);
  if (alpha == 0)
    s = 1;
  else
    m[alpha - 1] = 1;
  f.add_term({Exponent(0), s, m}, ComplexRational(1));
  return f;
}

WeightedFunction WeightedFunction::linear(const QVector& c) {
  const int dim = static_cast<int>(c.size());
  WeightedFunction f(dim);
  for (int a = 0; a < dim; ++a) {
    if (sgn(c[a]) == 0) continue;
    Monomial m(dim - 1, 0);
    Exponent s(0);
    if (a == 0)
      s = 1;
    else
      m[a - 1] = 1;
    f.add_term({Exponent(0), s, m}, ComplexRational(c[a]));
  }
  return f;
}

WeightedFunction WeightedFunction::monomial(int dim, const ComplexRational& c, Exponent gamma, Exponent s,
                                            const std::vector<int>& full_exponents) {
  WeightedFunction f(dim);
  Monomial m(dim - 1, 0);
  for (int a = 1; a < dim; ++a) m[a - 1] = static_cast<std::uint8_t>(full_exponents.at(a));
  f.add_term({gamma, s + Exponent(full_exponents.at(0)), m}, c);
  return f;
}

void WeightedFunction::add_term(const TermKey& key, const ComplexRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

WeightedFunction& WeightedFunction::operator+=(const WeightedFunction& o) {
  if (dim_ == 0) dim_ = o.dim_;
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

WeightedFunction& WeightedFunction::operator-=(const WeightedFunction& o) {
  if (dim_ == 0) dim_ = o.dim_;
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

void WeightedFunction::add_scaled(const WeightedFunction& o, const ComplexRational& c) {
  if (dim_ == 0) dim_ = o.dim_;
  if (c == ComplexRational(1)) {
    *this += o;
    return;
  }
  for (const auto& [k, v] : o.terms_) add_term(k, v * c);
}

WeightedFunction& WeightedFunction::operator*=(const ComplexRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

WeightedFunction operator*(const WeightedFunction& a, const WeightedFunction& b) {
  WeightedFunction out(a.dim_ ? a.dim_ : b.dim_);
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) {
      TermKey k{ka.gamma + kb.gamma, ka.s + kb.s, ka.mono};
      for (std::size_t i = 0; i < k.mono.size(); ++i) k.mono[i] = static_cast<std::uint8_t>(k.mono[i] + kb.mono[i]);
      out.add_term(k, ca * cb);
    }
  return out;
}

WeightedFunction WeightedFunction::times_rpow(Exponent s) const {
  WeightedFunction out(dim_);
  for (const auto& [k, c] : terms_) out.terms_.emplace(TermKey{k.gamma, k.s + s, k.mono}, c);
  return out;
}

WeightedFunction WeightedFunction::partial(int alpha) const {
  WeightedFunction out(dim_);
  for (const auto& [k, c] : terms_) {
    if (alpha == 0) {
      // d/dr (e^{g r} r^s) = g e^{g r} r^s + s e^{g r} r^{s-1}
      if (k.gamma != kZero) out.add_term(k, c * ComplexRational(to_rational(k.gamma)));
      if (k.s != kZero) out.add_term({k.gamma, k.s - Exponent(1), k.mono}, c * ComplexRational(to_rational(k.s)));
    } else {
      const int p = k.mono[alpha - 1];
      if (p == 0) continue;
      TermKey d = k;
      d.mono[alpha - 1] = static_cast<std::uint8_t>(p - 1);
      out.add_term(d, c * ComplexRational(Rational(p)));
    }
  }
  return out;
}

std::complex<double> WeightedFunction::eval(const Eigen::VectorXd& x) const {
  if (x.size() != dim_) throw Error("WeightedFunction::eval: wrong coordinate count");
  const double r = x(0);
  std::complex<double> sum = 0.0;
  for (const auto& [k, c] : terms_) {
    if (k.s < kZero && !(r > 0.0)) throw Error("WeightedFunction::eval: negative r-power at r <= 0");
    double v = std::exp(to_double(k.gamma) * r);
    if (k.s != kZero) v *= std::pow(r, to_double(k.s));
    for (std::size_t i = 0; i < k.mono.size(); ++i)
      for (int p = 0; p < k.mono[i]; ++p) v *= x(static_cast<int>(i) + 1);
    sum += c.to_complex() * v;
  }
  return sum;
}

int WeightedFunction::degree() const {
  int d = 0;
  for (const auto& [k, c] : terms_) {
    int t = 0;
    for (std::size_t i = 0; i < k.mono.size(); ++i) t += k.mono[i];
    d = std::max(d, t);
  }
  return d;
}

std::string WeightedFunction::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c << ")";
    if (k.gamma != kZero) os << " e^{" << k.gamma << " r}";
    if (k.s != kZero) os << " r^{" << k.s << "}";
    for (std::size_t i = 0; i < k.mono.size(); ++i)
      if (k.mono[i]) os << " x" << i + 1 << (k.mono[i] > 1 ? "^" + std::to_string(k.mono[i]) : "");
  }
  return os.str();
}

VectorField VectorField::linear(const QMatrix& m) {
  VectorField v;
  QVector row(m.cols());
  for (std::size_t b = 0; b < m.rows(); ++b) {
    for (std::size_t g = 0; g < m.cols(); ++g) row[g] = m(b, g);
    v.components.push_back(WeightedFunction::linear(row));
  }
  return v;
}

VectorField VectorField::constant(const QVector& u) {
  VectorField v;
  const int dim = static_cast<int>(u.size());
  for (const auto& c : u) v.components.push_back(WeightedFunction::constant(dim, ComplexRational(c)));
  return v;
}

namespace {

using TermList = std::vector<std::pair<TermKey, ComplexRational>>;

// coordinates a single term actually depends on
void term_vars(const TermKey& k, std::vector<int>& vars) {
  vars.clear();
  if (k.gamma != kZero || k.s != kZero) vars.push_back(0);
  for (std::size_t i = 0; i < k.mono.size(); ++i)
    if (k.mono[i]) vars.push_back(static_cast<int>(i) + 1);
}

void term_partial(const TermKey& k, const ComplexRational& c, int alpha, TermList& out) {
  out.clear();
  if (alpha == 0) {
    if (k.gamma != kZero) out.emplace_back(k, c * ComplexRational(to_rational(k.gamma)));
    if (k.s != kZero) out.emplace_back(TermKey{k.gamma, k.s - Exponent(1), k.mono}, c * ComplexRational(to_rational(k.s)));
    return;
  }
  const int p = k.mono[alpha - 1];
  if (p == 0) return;
  TermKey d = k;
  d.mono[alpha - 1] = static_cast<std::uint8_t>(p - 1);
  out.emplace_back(std::move(d), c * ComplexRational(Rational(p)));
}

// out += g * (c x^k)
void add_product(WeightedFunction& out, const WeightedFunction& g, const TermKey& k, const ComplexRational& c) {
  for (const auto& [kg, cg] : g.terms()) {
    TermKey t{kg.gamma + k.gamma, kg.s + k.s, kg.mono};
    for (std::size_t i = 0; i < t.mono.size(); ++i) t.mono[i] = static_cast<std::uint8_t>(t.mono[i] + k.mono[i]);
    out.add_term(t, cg * c);
  }
}

}  // namespace

WeightedFunction VectorField::apply(const WeightedFunction& f) const {
  WeightedFunction out(f.dim());
  std::vector<int> vars;
  TermList d;
  for (const auto& [k, c] : f.terms()) {
    term_vars(k, vars);
    for (int b : vars) {
      if (components[b].is_zero()) continue;
      term_partial(k, c, b, d);
      for (const auto& [kd, cd] : d) add_product(out, components[b], kd, cd);
    }
  }
  return out;
}

WeightedFunction SecondOrderOperator::apply(const WeightedFunction& f) const {
  WeightedFunction out = first.apply(f);
  std::vector<int> vars;
  TermList d1, d2;
  for (const auto& [k, c] : f.terms()) {
    term_vars(k, vars);
    for (std::size_t i = 0; i < vars.size(); ++i) {
      term_partial(k, c, vars[i], d1);
      for (const auto& [k1, c1] : d1)
        for (std::size_t j = i; j < vars.size(); ++j) {
          const WeightedFunction& q = coeff(vars[i], vars[j]);
          if (q.is_zero()) continue;
          term_partial(k1, c1, vars[j], d2);
          for (const auto& [k2, c2] : d2) add_product(out, q, k2, c2);
        }
    }
  }
  return out;
}

}  // namespace jka
