#include "jka/tkk.hpp"

namespace jka {

QVector ConformalAlgebra::flatten(const QMatrix& m) { return m.data(); }

ConformalAlgebra::ConformalAlgebra(AlgebraPtr alg)
    : alg_(std::move(alg)), str_reducer_(static_cast<std::size_t>(alg_->dim()) * alg_->dim()) {
  const int n = alg_->dim();
  RowReducer der_reducer(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      QMatrix d = commutator(alg_->lmul_basis(a), alg_->lmul_basis(b));
      if (d.is_zero()) continue;
      if (der_reducer.insert(flatten(d))) der_basis_.push_back(std::move(d));
    }
  // S_{ab} = [L_a, L_b] + L_{ab}; the a = 0 row gives the L_b themselves.
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      QMatrix s = alg_->lmul(alg_->product(alg_->basis(a), alg_->basis(b)));
      if (a != b) s += commutator(alg_->lmul_basis(a), alg_->lmul_basis(b));
      if (s.is_zero()) continue;
      if (str_reducer_.insert(flatten(s))) str_basis_.push_back(std::move(s));
    }
  str_matrix_d_.resize(static_cast<Eigen::Index>(n) * n, static_cast<Eigen::Index>(str_basis_.size()));
  for (std::size_t k = 0; k < str_basis_.size(); ++k)
    for (int i = 0; i < n * n; ++i) str_matrix_d_(i, static_cast<Eigen::Index>(k)) = str_basis_[k].data()[i].get_d();
  str_qr_.compute(str_matrix_d_);
}

ConformalElement ConformalAlgebra::zero() const { return {alg_->zero(), QMatrix(alg_->dim(), alg_->dim()), alg_->zero()}; }

ConformalElement ConformalAlgebra::X(const QVector& u) const {
  auto z = zero();
  z.x = u;
  return z;
}

ConformalElement ConformalAlgebra::Y(const QVector& v) const {
  auto z = zero();
  z.y = v;
  return z;
}

ConformalElement ConformalAlgebra::S(const QVector& u, const QVector& v) const {
  auto z = zero();
  z.s = alg_->s_map(u, v);
  return z;
}

ConformalElement ConformalAlgebra::from_str(const QMatrix& s) const {
  if (!in_str(s)) throw Error("matrix is not in the structure algebra");
  auto z = zero();
  z.s = s;
  return z;
}

ConformalElement ConformalAlgebra::co_bracket(const ConformalElement& a, const ConformalElement& b) const {
  const auto n = static_cast<std::size_t>(alg_->dim());
  for (const auto* c : {&a, &b}) {
    if (c->x.size() != n || c->y.size() != n || c->s.rows() != n || c->s.cols() != n) throw AlgebraMismatch();
    if (!in_str(c->s)) throw Error("co_bracket: S part lies outside str(V)");
  }
  return bracket(a, b);
}

std::optional<QVector> ConformalAlgebra::str_coords(const QMatrix& s) const { return str_reducer_.solve(flatten(s)); }

Eigen::VectorXd ConformalAlgebra::str_coords(const Eigen::MatrixXd& s) const {
  // Eigen is column-major and our flattening row-major, hence the transpose.
  const Eigen::MatrixXd st = s.transpose();
  const Eigen::Map<const Eigen::VectorXd> flat(st.data(), st.size());
  return str_qr_.solve(Eigen::VectorXd(flat));
}

LieDims ConformalAlgebra::dims() const {
  const int n = alg_->dim();
  const int dstr = static_cast<int>(str_basis_.size());
  // rank of [L_a, L_b] together with X_c + Y_c, in co coordinates
  RowReducer u_reducer(static_cast<std::size_t>(2 * n + dstr));
  for (const auto& d : der_basis_) {
    QVector c(2 * n + dstr, Rational(0));
    const auto sc = *str_coords(d);
    std::copy(sc.begin(), sc.end(), c.begin() + 2 * n);
    u_reducer.insert(std::move(c));
  }
  for (int a = 0; a < n; ++a) {
    QVector c(2 * n + dstr, Rational(0));
    c[a] = 1;
    c[n + a] = 1;
    u_reducer.insert(std::move(c));
  }
  return {static_cast<int>(der_basis_.size()), dstr, static_cast<int>(u_reducer.rank()), 2 * n + dstr};
}

std::vector<ConformalElement> ConformalAlgebra::standard_basis() const {
  std::vector<ConformalElement> out;
  for (int a = 0; a < alg_->dim(); ++a) out.push_back(X(alg_->basis(a)));
  for (int a = 0; a < alg_->dim(); ++a) out.push_back(Y(alg_->basis(a)));
  for (const auto& s : str_basis_) {
    auto z = zero();
    z.s = s;
    out.push_back(std::move(z));
  }
  return out;
}

QVector ConformalAlgebra::coordinates(const ConformalElement& a) const {
  QVector c = a.x;
  c.insert(c.end(), a.y.begin(), a.y.end());
  const auto sc = str_coords(a.s);
  if (!sc) throw Error("coordinates: S part lies outside str(V)");
  c.insert(c.end(), sc->begin(), sc->end());
  return c;
}

Eigen::VectorXd ConformalAlgebra::coordinates(const ConformalElementT<double>& a) const {
  const int n = alg_->dim();
  const int dstr = static_cast<int>(str_basis_.size());
  Eigen::VectorXd c(2 * n + dstr);
  for (int i = 0; i < n; ++i) {
    c(i) = a.x[i];
    c(n + i) = a.y[i];
  }
  Eigen::MatrixXd s(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s(i, j) = a.s(i, j);
  c.tail(dstr) = str_coords(s);
  return c;
}

std::vector<ConformalElement> ConformalAlgebra::u_spanning() const {
  std::vector<ConformalElement> out;
  const int n = alg_->dim();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      auto z = zero();
      z.s = commutator(alg_->lmul_basis(a), alg_->lmul_basis(b));
      if (!z.s.is_zero()) out.push_back(std::move(z));
    }
  for (int c = 0; c < n; ++c) out.push_back(X(alg_->basis(c)) + Y(alg_->basis(c)));
  return out;
}

std::vector<ConformalElement> ConformalAlgebra::p_spanning() const {
  std::vector<ConformalElement> out;
  const int n = alg_->dim();
  for (int c = 0; c < n; ++c) out.push_back(L(alg_->basis(c)));
  for (int c = 0; c < n; ++c) out.push_back(X(alg_->basis(c)) - Y(alg_->basis(c)));
  return out;
}

ConformalElement ConformalAlgebra::random(Rng& rng) const {
  const auto& a = *alg_;
  auto z = S(random_element(a, rng), random_element(a, rng));
  z.s += rng.rational() * a.s_map(random_element(a, rng), random_element(a, rng));
  z.x = random_element(a, rng);
  z.y = random_element(a, rng);
  return z;
}

LieDims algebra_dims(const Algebra& alg) {
  // the constructor needs a shared pointer; wrap a non-owning alias
  return ConformalAlgebra(AlgebraPtr(AlgebraPtr(), &alg)).dims();
}

namespace {

// ad matrices of the standard basis, exact.
std::vector<QMatrix> standard_ad(const ConformalAlgebra& co, const std::vector<ConformalElement>& std_basis) {
  const std::size_t n = std_basis.size();
  std::vector<QMatrix> ad(n, QMatrix(n, n));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) {
      const auto c = co.coordinates(co.bracket(std_basis[k], std_basis[j]));
      for (std::size_t i = 0; i < n; ++i) ad[k](i, j) = c[i];
    }
  return ad;
}

std::vector<Eigen::MatrixXd> standard_ad_numeric(const ConformalAlgebra& co,
                                                 const std::vector<ConformalElement>& std_basis) {
  const std::size_t n = std_basis.size();
  std::vector<ConformalElementT<double>> b;
  for (const auto& e : std_basis) b.push_back(convert<double>(e));
  std::vector<Eigen::MatrixXd> ad(n, Eigen::MatrixXd::Zero(n, n));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) ad[k].col(j) = co.coordinates(co.bracket(b[k], b[j]));
  return ad;
}

QMatrix coordinate_matrix(const ConformalAlgebra& co, const std::vector<ConformalElement>& elems) {
  const std::size_t n = co.standard_basis().size();
  QMatrix c(n, elems.size());
  for (std::size_t j = 0; j < elems.size(); ++j) {
    const auto v = co.coordinates(elems[j]);
    for (std::size_t i = 0; i < n; ++i) c(i, j) = v[i];
  }
  return c;
}

void check_spans(const QMatrix& c) {
  std::vector<QVector> cols;
  for (std::size_t j = 0; j < c.cols(); ++j) {
    QVector v(c.rows());
    for (std::size_t i = 0; i < c.rows(); ++i) v[i] = c(i, j);
    cols.push_back(std::move(v));
  }
  if (exact_rank(cols) != c.rows()) throw Error("killing_gram: basis does not span co(V)");
}

}  // namespace

QMatrix killing_gram(const ConformalAlgebra& co, const std::vector<ConformalElement>& basis) {
  const auto std_basis = co.standard_basis();
  const std::size_t n = std_basis.size();
  const QMatrix c = coordinate_matrix(co, basis);
  check_spans(c);
  std::vector<ConformalElement> tb;
  for (const auto& b : basis) tb.push_back(co.theta(b));
  const QMatrix d = coordinate_matrix(co, tb);
  const auto ad = standard_ad(co, std_basis);
  QMatrix k(n, n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p; q < n; ++q) {
      Rational t = 0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (sgn(ad[p](i, j)) == 0 || sgn(ad[q](j, i)) == 0) continue;
          t += ad[p](i, j) * ad[q](j, i);
        }
      k(p, q) = t;
      k(q, p) = t;
    }
  return c.transpose() * k * d;
}

Eigen::MatrixXd killing_gram_numeric(const ConformalAlgebra& co, const std::vector<ConformalElement>& basis) {
  const auto std_basis = co.standard_basis();
  const auto n = static_cast<Eigen::Index>(std_basis.size());
  Eigen::MatrixXd c(n, static_cast<Eigen::Index>(basis.size())), d(c.rows(), c.cols());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    c.col(static_cast<Eigen::Index>(j)) = co.coordinates(convert<double>(basis[j]));
    d.col(static_cast<Eigen::Index>(j)) = co.coordinates(convert<double>(co.theta(basis[j])));
  }
  if (Eigen::FullPivLU<Eigen::MatrixXd>(c).rank() != n) throw Error("killing_gram: basis does not span co(V)");
  const auto ad = standard_ad_numeric(co, std_basis);
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index q = p; q < n; ++q) k(p, q) = k(q, p) = (ad[p].array() * ad[q].transpose().array()).sum();
  return c.transpose() * k * d;
}

Rational killing(const ConformalAlgebra& co, const ConformalElement& a, const ConformalElement& b) {
  const auto std_basis = co.standard_basis();
  const std::size_t n = std_basis.size();
  auto ad_of = [&](const ConformalElement& z) {
    QMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      const auto c = co.coordinates(co.bracket(z, std_basis[j]));
      for (std::size_t i = 0; i < n; ++i) m(i, j) = c[i];
    }
    return m;
  };
  return (ad_of(a) * ad_of(b)).trace();
}

QVector standard_idempotent(const Algebra& alg) {
  if (alg.family() == Family::gamma) {
    QVector v = alg.zero();
    v[0] = Rational(1, 2);
    v[1] = Rational(1, 2);
    return v;
  }
  std::vector<DivisionRingElement> m(alg.n() * alg.n(), DivisionRingElement(alg.ring()));
  m[0] = DivisionRingElement::unit(alg.ring(), 0);
  return alg.from_hermitian(m);
}

ComplexConformalElement vogan_h(const ConformalAlgebra& co, const QVector& u) {
  return ComplexRational::i() * convert<ComplexRational>(co.X(u) + co.Y(u));
}

ComplexConformalElement vogan_e(const ConformalAlgebra& co, const QVector& u, int sign) {
  const ComplexRational half_i(Rational(0), Rational(1, 2));
  auto e = half_i * convert<ComplexRational>(co.X(u) - co.Y(u));
  const auto l = convert<ComplexRational>(co.L(u));
  return sign > 0 ? e - l : e + l;
}

CartanData cartan_data(const ConformalAlgebra& co, const QVector& e11) {
  CartanData d;
  d.u_basis = co.u_spanning();
  d.p_basis = co.p_spanning();
  d.h_alpha0 = vogan_h(co, e11);
  d.e_plus = vogan_e(co, e11, +1);
  d.e_minus = vogan_e(co, e11, -1);
  return d;
}

std::vector<ResidualEntry> vogan_sl2_check(const ConformalAlgebra& co, const QVector& e11, Rng& rng, int samples) {
  using C = ComplexConformalElement;
  const Algebra& alg = co.jordan();
  std::vector<ResidualEntry> out;
  auto record = [&](const std::string& id, const C& diff) {
    for (auto& r : out)
      if (r.id == id) {
        r.residual = std::max(r.residual, diff.max_abs());
        return;
      }
    out.push_back({id, diff.max_abs()});
  };
  const ComplexRational two(2), four(4);
  const auto cd = cartan_data(co, e11);
  record("alpha0:[H,E+]=2E+", co.bracket(cd.h_alpha0, cd.e_plus) - two * cd.e_plus);
  record("alpha0:[H,E-]=-2E-", co.bracket(cd.h_alpha0, cd.e_minus) + two * cd.e_minus);
  record("alpha0:[E+,E-]=-H", co.bracket(cd.e_plus, cd.e_minus) + cd.h_alpha0);
  for (int t = 0; t < samples; ++t) {
    const auto u = random_element(alg, rng);
    const auto v = random_element(alg, rng);
    const auto uv = alg.product(u, v);
    auto luv = co.zero();
    luv.s = commutator(alg.lmul(u), alg.lmul(v));
    const C lc = convert<ComplexRational>(luv);
    const C hu = vogan_h(co, u), hv = vogan_h(co, v);
    const C eup = vogan_e(co, u, +1), eum = vogan_e(co, u, -1);
    const C evp = vogan_e(co, v, +1), evm = vogan_e(co, v, -1);
    record("key:[h_u,E_v+]=2E_uv+", co.bracket(hu, evp) - two * vogan_e(co, uv, +1));
    record("key:[h_u,E_v-]=-2E_uv-", co.bracket(hu, evm) + two * vogan_e(co, uv, -1));
    record("key:[E_u+,E_v-]=-h_uv-2[L_u,L_v]", co.bracket(eup, evm) + vogan_h(co, uv) + two * lc);
    record("key:[E_u+,E_v+]=0", co.bracket(eup, evp));
    record("key:[E_u-,E_v-]=0", co.bracket(eum, evm));
    record("key:[h_u,h_v]=4[L_u,L_v]", co.bracket(hu, hv) - four * lc);
  }
  return out;
}

}  // namespace jka
