#include "jka/spectral.hpp"

#include <cmath>
#include <complex>
#include <map>

#include <Eigen/Eigenvalues>
#include <nlohmann/json.hpp>

#include "jka/random.hpp"

namespace jka {

namespace {

Poly trim(Poly p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
  return p;
}

Poly add(const Poly& a, const Poly& b, const Rational& cb = Rational(1)) {
  Poly out(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t k = 0; k < a.size(); ++k) out[k] += a[k];
  for (std::size_t k = 0; k < b.size(); ++k) out[k] += cb * b[k];
  return trim(out);
}

Poly scale(Poly p, const Rational& c) {
  for (auto& x : p) x *= c;
  return trim(p);
}

Poly times_x(const Poly& p) {
  if (p.empty()) return p;
  Poly out(p.size() + 1, Rational(0));
  for (std::size_t k = 0; k < p.size(); ++k) out[k + 1] = p[k];
  return out;
}

Rational pow_int(const Rational& x, long k) {
  Rational out(1);
  const Rational base = k >= 0 ? x : Rational(1) / x;
  for (long i = 0; i < std::labs(k); ++i) out *= base;
  return out;
}

Exponent to_exponent(const Rational& q) {
  return Exponent(q.get_num().get_si(), q.get_den().get_si());
}

double eval_monomial(const std::vector<int>& m, const Eigen::VectorXd& x) {
  double v = 1.0;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (int k = 0; k < m[i]; ++k) v *= x(static_cast<Eigen::Index>(i));
  return v;
}

void exponents_rec(int vars, int pos, int left, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (pos == vars - 1) {
    cur[pos] = left;
    out.push_back(cur);
    return;
  }
  for (int k = left; k >= 0; --k) {
    cur[pos] = k;
    exponents_rec(vars, pos + 1, left - k, cur, out);
  }
  cur[pos] = 0;
}

// numerical rank of the column-scaled matrix; fills the pivot ratios
int scaled_rank(const Eigen::MatrixXd& m, std::vector<double>& pivots, std::vector<int>& order, double gap) {
  Eigen::MatrixXd s = m;
  for (Eigen::Index j = 0; j < s.cols(); ++j) {
    const double nrm = s.col(j).norm();
    if (nrm > 0) s.col(j) /= nrm;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(s);
  const Eigen::MatrixXd r = qr.matrixR().template triangularView<Eigen::Upper>();
  const Eigen::Index k = std::min(r.rows(), r.cols());
  pivots.clear();
  order.clear();
  const double top = k > 0 ? std::abs(r(0, 0)) : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < k; ++i) {
    const double p = top > 0 ? std::abs(r(i, i)) / top : 0.0;
    pivots.push_back(p);
    if (p > gap) ++rank;
  }
  const auto& perm = qr.colsPermutation().indices();
  for (int i = 0; i < rank; ++i) order.push_back(perm(i));
  return rank;
}

std::vector<Eigen::VectorXd> slice_points(const AlgebraPtr& alg, std::uint64_t seed, int count) {
  std::vector<Eigen::VectorXd> out;
  for (const auto& p : cone_samples(alg, seed, count)) out.push_back(p.x / p.x(0));
  return out;
}

}  // namespace

// ---- polynomials ----

Rational poly_eval(const Poly& p, const Rational& x) {
  Rational v(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
  return v;
}

double poly_eval(const Poly& p, double x) {
  double v = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + it->get_d();
  return v;
}

Poly poly_derivative(const Poly& p) {
  Poly out;
  for (std::size_t k = 1; k < p.size(); ++k) out.push_back(Rational(static_cast<long>(k)) * p[k]);
  return trim(out);
}

// ---- Laguerre ----

LaguerrePoly laguerre(int n, const Rational& alpha) {
  if (n < 0) throw Error("laguerre: negative degree");
  Poly prev{Rational(1)};
  Poly cur = trim({Rational(1) + alpha, Rational(-1)});
  if (n == 0) return {0, alpha, prev};
  for (int k = 1; k < n; ++k) {
    // (k+1) L_{k+1} = (2k+1+a) L_k - x L_k - (k+a) L_{k-1}
    Poly next = add(scale(cur, Rational(2 * k + 1) + alpha), times_x(cur), Rational(-1));
    next = add(next, prev, -(Rational(k) + alpha));
    next = scale(next, rat(1, k + 1));
    prev = std::move(cur);
    cur = std::move(next);
  }
  return {n, alpha, cur};
}

Rational laguerre_eval(int n, const Rational& alpha, const Rational& x) { return laguerre(n, alpha).eval(x); }

double laguerre_eval(int n, double alpha, double x) {
  if (n == 0) return 1.0;
  double prev = 1.0, cur = 1.0 + alpha - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

Poly laguerre_ode_defect(const LaguerrePoly& p) {
  const Poly d1 = poly_derivative(p.coeffs), d2 = poly_derivative(d1);
  Poly out = times_x(d2);
  out = add(out, d1, Rational(1) + p.alpha);
  out = add(out, times_x(d1), Rational(-1));
  return add(out, p.coeffs, Rational(p.n));
}

Poly recursive1_defect(int n, const Rational& alpha) {
  if (n < 1) throw Error("recursive1_defect: n must be at least 1");
  Poly out = scale(laguerre(n, alpha).coeffs, Rational(n));
  out = add(out, laguerre(n - 1, alpha).coeffs, -(Rational(n) + alpha));
  return add(out, times_x(laguerre(n - 1, alpha + 1).coeffs));
}

Poly recursive2_defect(int n, const Rational& alpha) {
  if (n < 1) throw Error("recursive2_defect: n must be at least 1");
  const Poly ln = laguerre(n, alpha).coeffs;
  Poly out = scale(laguerre(n + 1, alpha).coeffs, Rational(n + 1));
  out = add(out, ln, -(Rational(2 * n + 1) + alpha));
  out = add(out, times_x(ln));
  return add(out, laguerre(n - 1, alpha).coeffs, Rational(n) + alpha);
}

GaussLaguerre gauss_laguerre(int order, double alpha) {
  if (order < 1) throw Error("gauss_laguerre: order must be positive");
  if (!(alpha > -1.0)) throw Error("gauss_laguerre: alpha must exceed -1");
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(order, order);
  for (int i = 0; i < order; ++i) {
    j(i, i) = 2 * i + 1 + alpha;
    if (i > 0) j(i, i - 1) = j(i - 1, i) = std::sqrt(i * (i + alpha));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  GaussLaguerre out;
  const double lnorm = std::lgamma(order + alpha + 1) - std::lgamma(order + 1.0);
  for (int i = 0; i < order; ++i) {
    double x = es.eigenvalues()(i);
    for (int it = 0; it < 8; ++it) {
      const double f = laguerre_eval(order, alpha, x);
      const double df = (order * f - (order + alpha) * laguerre_eval(order - 1, alpha, x)) / x;
      const double step = f / df;
      x -= step;
      if (std::abs(step) <= 1e-16 * std::abs(x)) break;
    }
    const double l1 = laguerre_eval(order + 1, alpha, x);
    out.nodes.push_back(x);
    out.weights.push_back(std::exp(lnorm) * x / ((order + 1.0) * (order + 1.0) * l1 * l1));
  }
  return out;
}

double laguerre_orthogonality_check(int n, int m, const Rational& alpha, int order) {
  if (order < n + m + 1) throw Error("laguerre_orthogonality_check: order must be at least n + m + 1");
  const double a = alpha.get_d();
  const auto q = gauss_laguerre(order, a);
  const LaguerrePoly ln = laguerre(n, alpha), lm = laguerre(m, alpha);
  double sum = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) sum += q.weights[i] * ln.eval(q.nodes[i]) * lm.eval(q.nodes[i]);
  const double hn = std::exp(std::lgamma(n + a + 1) - std::lgamma(n + 1.0));
  const double hm = std::exp(std::lgamma(m + a + 1) - std::lgamma(m + 1.0));
  // relative to sqrt(h_n h_m)
  return (sum - (n == m ? hn : 0.0)) / std::sqrt(hn * hm);
}

double laguerre_cross_integral_check(int k, const Rational& alpha, int order) {
  if (k < 1) throw Error("laguerre_cross_integral_check: k must be at least 1");
  if (order < k + 1) throw Error("laguerre_cross_integral_check: order must be at least k + 1");
  const double a = alpha.get_d();
  const auto q = gauss_laguerre(order, a + 2);
  const LaguerrePoly lk = laguerre(k, alpha), lk1 = laguerre(k - 1, alpha + 2);
  double sum = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) sum += q.weights[i] * lk.eval(q.nodes[i]) * lk1.eval(q.nodes[i]);
  const double expected = -2.0 * std::exp(std::lgamma(k + a + 2) - std::lgamma(static_cast<double>(k)));
  return (sum - expected) / std::abs(expected);
}

// ---- polynomials on the slice ----

std::vector<std::vector<int>> monomial_exponents(int vars, int lo, int hi) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(vars, 0);
  for (int deg = lo; deg <= hi; ++deg) exponents_rec(vars, 0, deg, cur, out);
  return out;
}

FilteredBasis restricted_basis(const AlgebraPtr& alg, int d, int n_points, std::uint64_t seed, bool homogeneous) {
  if (d < 0) throw Error("restricted_basis: negative degree");
  FilteredBasis fb;
  fb.degree = d;
  fb.homogeneous = homogeneous;
  fb.monomials = monomial_exponents(alg->dim(), homogeneous ? d : 0, d);
  const int cols = static_cast<int>(fb.monomials.size());
  const int rows = n_points > 0 ? n_points : 3 * cols;
  if (rows < cols) throw Error("restricted_basis: fewer points than monomials");

  auto evaluate = [&](std::uint64_t s) {
    const auto pts = slice_points(alg, s, rows);
    Eigen::MatrixXd e(rows, cols);
    for (int p = 0; p < rows; ++p)
      for (int k = 0; k < cols; ++k) e(p, k) = eval_monomial(fb.monomials[static_cast<std::size_t>(k)], pts[p]);
    return e;
  };

  constexpr double gap = 1e-6;
  fb.evaluation = evaluate(seed);
  const int rank = scaled_rank(fb.evaluation, fb.pivots, fb.selected, gap);
  std::vector<double> pv;
  std::vector<int> order;
  const int again = scaled_rank(evaluate(seed ^ 0x9e3779b97f4a7c15ULL), pv, order, gap);
  if (again != rank)
    throw Error("restricted_basis: rank " + std::to_string(rank) + " changes to " + std::to_string(again) +
                " with other points");
  return fb;
}

// ---- H0tilde on the weighted polynomials ----

H0Matrix h0_matrix(const AlgebraPtr& alg, int d, std::uint64_t seed) {
  if (alg->rho() < 2) throw Error("h0_matrix: needs rank at least 2");
  const int dim = alg->dim();
  const HiddenAction h(alg);
  const Exponent mkappa = -to_exponent(h.constants().kappa);

  H0Matrix out;
  for (int n = 0; n <= d; ++n) {
    const FilteredBasis fb = restricted_basis(alg, n, 0, seed, true);
    for (int k : fb.selected) {
      out.basis.push_back(WeightedFunction::monomial(dim, ComplexRational(1), Exponent(-1), mkappa,
                                                     fb.monomials[static_cast<std::size_t>(k)]));
      out.degrees.push_back(n);
    }
  }
  const int nb = static_cast<int>(out.basis.size());
  const auto op = h.H0tilde();
  std::vector<WeightedFunction> images;
  images.reserve(out.basis.size());
  for (const auto& b : out.basis) images.push_back(op.apply(b));

  const int np = std::max(3 * nb, nb + 10);
  Rng rng(seed + 7);
  std::vector<Eigen::VectorXd> pts;
  for (const auto& p : cone_samples(alg, seed + 11, np)) pts.push_back(p.x * (alg->rho() * rng.uniform(0.5, 2.0)));

  Eigen::MatrixXd bm(np, nb), gm(np, nb);
  double imag = 0.0, gmax = 0.0;
  for (int p = 0; p < np; ++p)
    for (int j = 0; j < nb; ++j) {
      bm(p, j) = out.basis[static_cast<std::size_t>(j)].eval(pts[static_cast<std::size_t>(p)]).real();
      const auto g = images[static_cast<std::size_t>(j)].eval(pts[static_cast<std::size_t>(p)]);
      gm(p, j) = g.real();
      imag = std::max(imag, std::abs(g.imag()));
      gmax = std::max(gmax, std::abs(g));
    }
  Eigen::VectorXd colscale(nb);
  for (int j = 0; j < nb; ++j) colscale(j) = bm.col(j).norm();
  const Eigen::MatrixXd bs = bm * colscale.cwiseInverse().asDiagonal();
  const Eigen::MatrixXd c = bs.colPivHouseholderQr().solve(gm);
  out.matrix = colscale.cwiseInverse().asDiagonal() * c;

  const Eigen::MatrixXd res = bm * out.matrix - gm;
  double worst = gmax > 0 ? imag / gmax : 0.0;
  for (int j = 0; j < nb; ++j) {
    const double nrm = gm.col(j).norm();
    worst = std::max(worst, res.col(j).norm() / std::max(nrm, 1e-300));
  }
  out.closure_residual = worst;
  if (!(worst < 1e-7))
    throw Error("h0_matrix: H0tilde leaves the span (residual " + std::to_string(worst) + ")");
  return out;
}

SpectrumResult h0_matrix_spectrum(const AlgebraPtr& alg, int d, std::uint64_t seed) {
  const H0Matrix m = h0_matrix(alg, d, seed);
  SpectrumResult out;
  out.algebra = alg->name();
  out.family = alg->family();
  out.n = alg->n();
  out.rho = alg->rho();
  out.delta = alg->delta();
  out.degree = d;
  out.closure_residual = m.closure_residual;

  Eigen::EigenSolver<Eigen::MatrixXd> es(m.matrix, false);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const auto z = es.eigenvalues()(i);
    if (std::abs(z.imag()) > 1e-6) throw Error("h0_matrix_spectrum: complex eigenvalue");
    out.eigenvalues.push_back(z.real());
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());

  const double shift = alg->rho() * alg->delta() / 4.0;
  // largest eigenvalue first: I = 0, 1, ...
  for (auto it = out.eigenvalues.rbegin(); it != out.eigenvalues.rend();) {
    const double head = *it;
    double sum = 0.0;
    int count = 0;
    for (; it != out.eigenvalues.rend() && std::abs(*it - head) < 1e-4; ++it) {
      sum += *it;
      ++count;
    }
    SpectrumLevel lv;
    lv.eigenvalue = sum / count;
    lv.multiplicity = count;
    lv.I = static_cast<int>(std::lround(-lv.eigenvalue - shift));
    lv.energy = -0.5 / ((lv.I + shift) * (lv.I + shift));
    out.levels.push_back(lv);
  }
  return out;
}

nlohmann::json spectrum_json(const SpectrumResult& s) {
  auto round9 = [](double x) { return std::round(x * 1e9) / 1e9; };
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& l : s.levels)
    levels.push_back({{"I", l.I},
                      {"eigenvalue", round9(l.eigenvalue)},
                      {"multiplicity", l.multiplicity},
                      {"energy", round9(l.energy)}});
  return {{"algebra", s.algebra}, {"family", family_name(s.family)}, {"n", s.n},  {"rho", s.rho},
          {"delta", s.delta},     {"d", s.degree},                   {"levels", levels}};
}

// ---- bound states ----

Rational bound_state_energy(const Algebra& alg, int I) {
  const Rational ni = Rational(I) + rat(alg.rho() * alg.delta(), 4);
  return rat(-1, 2) / (ni * ni);
}

WeightedFunction rescale_argument(const WeightedFunction& f, const Rational& lambda) {
  WeightedFunction out(f.dim());
  if (f.is_zero()) return out;
  const Exponent lam = to_exponent(lambda);
  const Exponent s0 = f.terms().begin()->first.s;
  for (const auto& [key, c] : f.terms()) {
    const Exponent ds = key.s - s0;
    if (ds.denominator() != 1) throw Error("rescale_argument: r-powers differ by a non-integer");
    long deg = static_cast<long>(ds.numerator());
    for (std::size_t i = 0; i < key.mono.size(); ++i) deg += key.mono[i];
    TermKey k = key;
    k.gamma = key.gamma / lam;
    ComplexRational v = c;
    v *= ComplexRational(pow_int(lambda, -deg));
    out.add_term(k, v);
  }
  return out;
}

BoundStateResult bound_state_check(const AlgebraPtr& alg, int I, int d, std::uint64_t seed) {
  if (I < 0 || I > d) throw Error("bound_state_check: need 0 <= I <= d");
  const H0Matrix m = h0_matrix(alg, d, seed);
  const Rational ni = Rational(I) + rat(alg->rho() * alg->delta(), 4);
  Eigen::EigenSolver<Eigen::MatrixXd> es(m.matrix, true);
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i) + ni.get_d()) < std::abs(es.eigenvalues()(best) + ni.get_d())) best = i;

  BoundStateResult out;
  out.I = I;
  out.eigenvalue = es.eigenvalues()(best).real();
  out.energy = bound_state_energy(*alg, I);
  if (std::abs(out.eigenvalue + ni.get_d()) > 1e-4) throw Error("bound_state_check: no eigenvalue at level I");

  Eigen::VectorXd v = es.eigenvectors().col(best).real();
  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  v /= v(arg);
  WeightedFunction tilde(alg->dim());
  for (Eigen::Index j = 0; j < v.size(); ++j)
    if (v(j) != 0.0) tilde.add_scaled(m.basis[static_cast<std::size_t>(j)], ComplexRational(Rational(v(j))));
  const WeightedFunction psi = rescale_argument(tilde, ni);

  const HiddenAction h(alg);
  const WeightedFunction hpsi = h.hamiltonian().apply(psi);
  const std::complex<double> e(out.energy.get_d(), 0.0);
  double diff = 0.0, scale_ = 0.0;
  Rng rng(seed + 13);
  for (const auto& p : cone_samples(alg, seed + 17, 40)) {
    const Eigen::VectorXd x = p.x * (alg->rho() * ni.get_d() * rng.uniform(0.5, 2.0));
    const auto pv = psi.eval(x);
    diff = std::max(diff, std::abs(hpsi.eval(x) - e * pv));
    scale_ = std::max(scale_, std::abs(e * pv));
  }
  out.residual = scale_ > 0 ? diff / scale_ : diff;
  return out;
}

// ---- Gamma(n) wavefunctions ----

std::vector<WeightedFunction> solid_harmonics(const Algebra& alg, int l) {
  if (alg.family() != Family::gamma) throw Error("solid_harmonics: Gamma(n) only");
  if (l < 0) throw Error("solid_harmonics: negative degree");
  const int dim = alg.dim(), vars = dim - 1;
  auto full = [&](const std::vector<int>& m) {
    std::vector<int> f(1, 0);
    f.insert(f.end(), m.begin(), m.end());
    return f;
  };
  const auto src = monomial_exponents(vars, l, l);
  std::vector<WeightedFunction> out;
  if (l < 2) {
    for (const auto& m : src) out.push_back(WeightedFunction::monomial(dim, 1, Exponent(0), Exponent(0), full(m)));
    return out;
  }
  const auto dst = monomial_exponents(vars, l - 2, l - 2);
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < dst.size(); ++i) index[dst[i]] = i;
  QMatrix lap(dst.size(), src.size());
  for (std::size_t k = 0; k < src.size(); ++k)
    for (int i = 0; i < vars; ++i) {
      if (src[k][static_cast<std::size_t>(i)] < 2) continue;
      auto t = src[k];
      const int e = t[static_cast<std::size_t>(i)];
      t[static_cast<std::size_t>(i)] -= 2;
      lap(index.at(t), k) += Rational(e * (e - 1));
    }
  for (const auto& v : exact_nullspace(lap)) {
    WeightedFunction y(dim);
    for (std::size_t k = 0; k < src.size(); ++k)
      if (sgn(v[k]) != 0) y += WeightedFunction::monomial(dim, v[k], Exponent(0), Exponent(0), full(src[k]));
    out.push_back(std::move(y));
  }
  return out;
}

WeightedFunction phi_klm_gamma(const Algebra& alg, int k, int l, const WeightedFunction& Y) {
  if (alg.family() != Family::gamma) throw Error("phi_klm_gamma: Gamma(n) only");
  if (k < 1 || l < 0) throw Error("phi_klm_gamma: need k >= 1 and l >= 0");
  const Rational alpha = Rational(2 * l) + rat(alg.rho() * alg.delta(), 2) - 1;
  const Exponent mkappa = -to_exponent(hidden_constants(alg).kappa);
  const LaguerrePoly lag = laguerre(k - 1, alpha);
  WeightedFunction radial(alg.dim());
  Rational two_j(1);
  for (std::size_t j = 0; j < lag.coeffs.size(); ++j, two_j *= 2)
    radial.add_scaled(WeightedFunction::exp_power(alg.dim(), Exponent(-1), mkappa + Exponent(static_cast<long long>(j))),
                      ComplexRational(lag.coeffs[j] * two_j));
  return radial * Y;
}

}  // namespace jka
