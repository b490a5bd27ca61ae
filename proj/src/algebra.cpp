#include "jka/algebra.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

namespace jka {

std::string family_name(Family f) {
  switch (f) {
    case Family::gamma: return "gamma";
    case Family::herm_r: return "herm_r";
    case Family::herm_c: return "herm_c";
    case Family::herm_h: return "herm_h";
    case Family::herm_o: return "herm_o";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  for (Family f : {Family::gamma, Family::herm_r, Family::herm_c, Family::herm_h, Family::herm_o})
    if (family_name(f) == name) return f;
  throw Error("unknown algebra family '" + name + "'");
}

AlgebraSpec parse_algebra_spec(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error("algebra must be given as FAMILY:N, got '" + text + "'");
  const Family f = parse_family(text.substr(0, colon));
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(text.substr(colon + 1), &used);
    if (used != text.size() - colon - 1) throw Error("");
  } catch (const std::exception&) {
    throw Error("bad size in algebra spec '" + text + "'");
  }
  return {f, n};
}

std::string to_string(const AlgebraSpec& spec) { return family_name(spec.family) + ":" + std::to_string(spec.n); }

std::string Algebra::name() const { return to_string(spec()); }

std::pair<int, int> rank_and_degree(Family family, int n) {
  switch (family) {
    case Family::gamma: return {2, n - 1};
    case Family::herm_r: return {n, 1};
    case Family::herm_c: return {n, 2};
    case Family::herm_h: return {n, 4};
    case Family::herm_o: return {n, 8};
  }
  return {0, 0};
}

QVector Algebra::basis(int a) const {
  QVector v = zero();
  v.at(a) = 1;
  return v;
}

Eigen::VectorXd Algebra::product(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim_);
  for (int a = 0; a < dim_; ++a) {
    if (u(a) == 0.0) continue;
    for (int b = 0; b < dim_; ++b) {
      const double uv = u(a) * v(b);
      for (const auto& e : table_[a * dim_ + b]) out(e.index) += uv * e.d;
    }
  }
  return out;
}

Rational Algebra::inner(const QVector& u, const QVector& v) const {
  Rational s = 0;
  for (int a = 0; a < dim_; ++a)
    if (sgn(u[a]) != 0 && sgn(v[a]) != 0) s += u[a] * v[a] * weights_[a];
  return s;
}

double Algebra::inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
  return u.cwiseProduct(weights_d_).dot(v);
}

QMatrix Algebra::lmul(const QVector& u) const { return lmul_t(u); }

Eigen::MatrixXd Algebra::lmul(const Eigen::VectorXd& u) const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim_, dim_);
  for (int a = 0; a < dim_; ++a)
    if (u(a) != 0.0) m += u(a) * lmul_basis_d_[a];
  return m;
}

QVector Algebra::triple(const QVector& u, const QVector& v, const QVector& w) const {
  QVector out = product(u, product(v, w));
  const QVector b = product(w, product(v, u));
  const QVector c = product(product(u, w), v);
  for (int a = 0; a < dim_; ++a) out[a] += b[a] - c[a];
  return out;
}

QMatrix Algebra::s_map(const QVector& u, const QVector& v) const { return s_map_t(u, v); }

QMatrix Algebra::quadratic_rep(const QVector& x) const {
  const QMatrix lx = lmul(x);
  return Rational(2) * (lx * lx) - lmul(product(x, x));
}

Eigen::MatrixXd Algebra::quadratic_rep(const Eigen::VectorXd& x) const {
  const Eigen::MatrixXd lx = lmul(x);
  return 2.0 * lx * lx - lmul(product(x, x));
}

Eigen::MatrixXd Algebra::adjoint(const Eigen::MatrixXd& m) const {
  return weights_d_.cwiseInverse().asDiagonal() * m.transpose() * weights_d_.asDiagonal();
}

namespace {

struct HermLayout {
  int n;
  int d;
  // index of F_ij^mu for i<j
  int offdiag(int i, int j, int mu) const {
    int k = 0;
    for (int a = 0; a < i; ++a) k += n - 1 - a;
    k += j - i - 1;
    return n + k * d + mu;
  }
};

}  // namespace

std::vector<DivisionRingElement> Algebra::to_hermitian(const QVector& u) const {
  if (family_ == Family::gamma) throw Error("to_hermitian: not a matrix algebra");
  const HermLayout lay{n_, ring_dimension(ring_)};
  std::vector<DivisionRingElement> m(n_ * n_, DivisionRingElement(ring_));
  // diagonal: u_0 I + sum_k u_k (sum_{i<k} E_ii - k E_kk)
  for (int i = 0; i < n_; ++i) {
    Rational diag = u[0];
    for (int k = 1; k < n_; ++k) {
      if (i < k) diag += u[k];
      else if (i == k) diag -= k * u[k];
    }
    m[i * n_ + i] = DivisionRingElement(ring_, [&] {
      std::vector<Rational> c(lay.d, Rational(0));
      c[0] = diag;
      return c;
    }());
  }
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) {
      std::vector<Rational> c(lay.d);
      for (int mu = 0; mu < lay.d; ++mu) c[mu] = u[lay.offdiag(i, j, mu)];
      DivisionRingElement z(ring_, std::move(c));
      m[j * n_ + i] = z.conj();
      m[i * n_ + j] = std::move(z);
    }
  return m;
}

QVector Algebra::from_hermitian(const std::vector<DivisionRingElement>& m) const {
  if (family_ == Family::gamma) throw Error("from_hermitian: not a matrix algebra");
  const HermLayout lay{n_, ring_dimension(ring_)};
  QVector u = zero();
  std::vector<Rational> diag(n_);
  for (int i = 0; i < n_; ++i) diag[i] = m[i * n_ + i].real_part();
  Rational s = 0;
  for (const auto& x : diag) s += x;
  u[0] = s / n_;
  for (int k = 1; k < n_; ++k) {
    Rational c = 0;
    for (int i = 0; i < k; ++i) c += diag[i];
    c -= k * diag[k];
    u[k] = c / (k + k * k);
  }
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      for (int mu = 0; mu < lay.d; ++mu) u[lay.offdiag(i, j, mu)] = m[i * n_ + j][mu];
  return u;
}

void Algebra::finish() {
  weights_d_.resize(dim_);
  for (int a = 0; a < dim_; ++a) weights_d_(a) = weights_[a].get_d();
  lmul_basis_.clear();
  lmul_basis_d_.clear();
  for (int a = 0; a < dim_; ++a) {
    lmul_basis_.push_back(lmul(basis(a)));
    lmul_basis_d_.push_back(to_eigen(lmul_basis_.back()));
  }
}

namespace {

std::vector<DivisionRingElement> herm_jordan_product(const std::vector<DivisionRingElement>& a,
                                                     const std::vector<DivisionRingElement>& b, int n,
                                                     RingKind kind) {
  std::vector<DivisionRingElement> out(n * n, DivisionRingElement(kind));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      DivisionRingElement s(kind);
      for (int k = 0; k < n; ++k) {
        s += a[i * n + k] * b[k * n + j];
        s += b[i * n + k] * a[k * n + j];
      }
      s *= Rational(1, 2);
      out[i * n + j] = std::move(s);
    }
  return out;
}

}  // namespace

AlgebraPtr make_algebra(Family family, int n) {
  auto alg = std::shared_ptr<Algebra>(new Algebra());
  alg->family_ = family;
  alg->n_ = n;
  switch (family) {
    case Family::gamma:
      if (n < 2) throw Error("gamma:n needs n >= 2");
      break;
    case Family::herm_r:
      if (n < 1) throw Error("herm_r:n needs n >= 1");
      alg->ring_ = RingKind::real;
      break;
    case Family::herm_c:
      if (n < 2) throw Error("herm_c:n needs n >= 2");
      alg->ring_ = RingKind::complex;
      break;
    case Family::herm_h:
      if (n < 2) throw Error("herm_h:n needs n >= 2");
      alg->ring_ = RingKind::quaternion;
      break;
    case Family::herm_o:
      if (n > 3) throw Error("Hermitian octonion matrices form a Jordan algebra only for n <= 3");
      if (n != 3) throw Error("herm_o:n is supported for n = 3 only");
      alg->ring_ = RingKind::octonion;
      break;
  }
  const auto [rho, delta] = rank_and_degree(family, n);
  alg->rho_ = rho;
  alg->delta_ = delta;
  alg->dim_ = rho + delta * rho * (rho - 1) / 2;
  const int dim = alg->dim_;
  alg->table_.assign(dim * dim, {});

  auto store = [&](int a, int b, const QVector& v) {
    auto& cell = alg->table_[a * dim + b];
    for (int g = 0; g < dim; ++g)
      if (sgn(v[g]) != 0) cell.push_back({g, v[g], v[g].get_d()});
  };

  if (family == Family::gamma) {
    alg->weights_.assign(dim, Rational(1));
    alg->labels_.push_back("e");
    for (int i = 1; i < dim; ++i) alg->labels_.push_back("v" + std::to_string(i));
    // (l, u)(m, v) = (lm + u.v, l v + m u)
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        QVector v(dim, Rational(0));
        if (a == 0) v[b] = 1;
        else if (b == 0) v[a] = 1;
        else if (a == b) v[0] = 1;
        store(a, b, v);
      }
  } else {
    const int d = ring_dimension(alg->ring_);
    alg->weights_.assign(dim, Rational(0));
    alg->weights_[0] = 1;
    alg->labels_.push_back("e");
    for (int k = 1; k < n; ++k) {
      alg->weights_[k] = rat(k + k * k, n);
      alg->labels_.push_back("h" + std::to_string(k));
    }
    const HermLayout lay{n, d};
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int mu = 0; mu < d; ++mu) {
          alg->weights_[lay.offdiag(i, j, mu)] = rat(2, n);
          alg->labels_.push_back("F" + std::to_string(i + 1) + std::to_string(j + 1) + "_" + std::to_string(mu));
        }
    std::vector<std::vector<DivisionRingElement>> mats;
    for (int a = 0; a < dim; ++a) mats.push_back(alg->to_hermitian(alg->basis(a)));
    for (int a = 0; a < dim; ++a)
      for (int b = a; b < dim; ++b) {
        const QVector v = alg->from_hermitian(herm_jordan_product(mats[a], mats[b], n, alg->ring_));
        store(a, b, v);
        if (b != a) store(b, a, v);
      }
  }
  alg->finish();
  return alg;
}

nlohmann::json descriptor_json(const Algebra& alg) {
  return {{"family", family_name(alg.family())},
          {"n", alg.n()},
          {"rho", alg.rho()},
          {"delta", alg.delta()},
          {"dim", alg.dim()}};
}

std::string product_tensor_csv(const Algebra& alg) {
  std::ostringstream os;
  os << "alpha,beta,gamma,coefficient\n";
  for (int a = 0; a < alg.dim(); ++a)
    for (int b = 0; b < alg.dim(); ++b)
      for (const auto& e : alg.product_entries(a, b)) os << a << ',' << b << ',' << e.index << ',' << e.q.get_str() << '\n';
  return os.str();
}

namespace {

void check_same(const JordanElement& u, const JordanElement& v) {
  if (!u.algebra || !v.algebra) throw Error("element without algebra");
  if (u.algebra != v.algebra &&
      (u.algebra->family() != v.algebra->family() || u.algebra->n() != v.algebra->n()))
    throw AlgebraMismatch();
}

}  // namespace

JordanElement element(const AlgebraPtr& alg, QVector coords) {
  if (static_cast<int>(coords.size()) != alg->dim()) throw Error("coordinate count differs from dim V");
  return {alg, std::move(coords)};
}

JordanElement jordan_product(const JordanElement& u, const JordanElement& v) {
  check_same(u, v);
  return {u.algebra, u.algebra->product(u.coords, v.coords)};
}

Rational trace(const JordanElement& u) { return u.algebra->trace(u.coords); }

Rational inner_product(const JordanElement& u, const JordanElement& v) {
  check_same(u, v);
  return u.algebra->inner(u.coords, v.coords);
}

QMatrix lmul(const JordanElement& u) { return u.algebra->lmul(u.coords); }

JordanElement triple_product(const JordanElement& u, const JordanElement& v, const JordanElement& w) {
  check_same(u, v);
  check_same(u, w);
  return {u.algebra, u.algebra->triple(u.coords, v.coords, w.coords)};
}

QMatrix quadratic_rep(const JordanElement& x) { return x.algebra->quadratic_rep(x.coords); }

QVector random_element(const Algebra& alg, Rng& rng) {
  QVector v(alg.dim());
  for (auto& x : v) x = rng.rational();
  return v;
}

}  // namespace jka
