#include "jka/cone.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "jka/tkk.hpp"

namespace jka {

namespace {

double norm(const Algebra& alg, const Eigen::VectorXd& v) { return std::sqrt(std::max(0.0, alg.inner(v, v))); }

}  // namespace

bool cone_contains(const Algebra& alg, const Eigen::VectorXd& x, double tol) {
  if (x.size() != alg.dim()) throw AlgebraMismatch();
  const double t = alg.trace(x);
  if (!(t > tol)) return false;
  const double nx = norm(alg, x);
  return norm(alg, alg.product(x, x) - t * x) <= tol * nx * nx;
}

ConePoint make_cone_point(const AlgebraPtr& alg, const Eigen::VectorXd& x, double tol) {
  if (!cone_contains(*alg, x, tol)) throw Error("make_cone_point: point is not on the Kepler cone");
  return {alg, x, x(0)};
}

ConePoint cone_sample(const AlgebraPtr& alg, std::uint64_t seed, double spread) {
  Rng rng(seed);
  const double t = rng.uniform(0.5, 2.0);
  const Eigen::VectorXd e11 = to_eigen(standard_idempotent(*alg));
  Eigen::VectorXd x = t * e11;
  if (spread != 0.0) {
    const int dim = alg->dim();
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(dim, dim);
    for (int a = 1; a < dim; ++a)
      for (int b = a + 1; b < dim; ++b) {
        const double c = rng.rational(3, 4).get_d();
        if (c == 0.0) continue;
        const Eigen::MatrixXd la = alg->lmul(to_eigen(alg->basis(a))), lb = alg->lmul(to_eigen(alg->basis(b)));
        d += c * (la * lb - lb * la);
      }
    // keep the generator of moderate size whatever the dimension
    const double scale = spread / std::max(1.0, std::sqrt(static_cast<double>(dim)));
    x = (scale * d).exp() * x;
  }
  return {alg, x, x(0)};
}

std::vector<ConePoint> cone_samples(const AlgebraPtr& alg, std::uint64_t seed, int count) {
  std::vector<ConePoint> out;
  std::vector<std::uint64_t> seeds(count);
  std::mt19937_64 gen(seed);
  for (auto& s : seeds) s = gen();
  for (auto s : seeds) out.push_back(cone_sample(alg, s));
  return out;
}

double lambda_weight(const Eigen::VectorXd& u, const ConePoint& p, double tol) {
  const Algebra& alg = *p.algebra;
  if (!(p.r > tol)) throw Error("lambda_weight: r must be positive");
  const double rho = alg.rho(), delta = alg.delta();
  const double kappa = (rho / 2 - 1) * delta / 2;
  return kappa * alg.inner(u, p.x) / p.r + rho * delta / 4 * u(0);
}

Eigen::MatrixXd projector_lhs(const Algebra& alg, const Eigen::VectorXd& x) {
  const int dim = alg.dim();
  const Eigen::VectorXd& w = alg.weights_d();
  const Eigen::MatrixXd lx = alg.lmul(x);
  // [L_a, L_b] x = a(bx) - b(ax), columns of L_x give e_c x
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(dim, dim);
  std::vector<Eigen::MatrixXd> la(dim);
  for (int a = 0; a < dim; ++a) la[a] = alg.lmul(to_eigen(alg.basis(a)));
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      const Eigen::VectorXd v = la[a] * lx.col(b) - la[b] * lx.col(a);
      sum += v * (w.asDiagonal() * v).transpose() / (w(a) * w(b));
    }
  const double rho = alg.rho(), delta = alg.delta();
  return sum / (rho * rho / 2 * (1 + delta * (rho - 2) / 4));
}

Eigen::MatrixXd projector_rhs(const Algebra& alg, const Eigen::VectorXd& x) {
  const int dim = alg.dim();
  const Eigen::VectorXd& w = alg.weights_d();
  const Eigen::MatrixXd lx = alg.lmul(x);
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(dim, dim);
  for (int a = 0; a < dim; ++a) {
    Eigen::VectorXd ea = Eigen::VectorXd::Zero(dim);
    ea(a) = 1.0;
    sum += ea * (w.asDiagonal() * lx.col(a)).transpose() / w(a);
  }
  return x(0) * sum - x * (w.asDiagonal() * x).transpose();
}

double projector_identity_residual(const ConePoint& p) {
  return (projector_lhs(*p.algebra, p.x) - projector_rhs(*p.algebra, p.x)).cwiseAbs().maxCoeff();
}

Eigen::MatrixXd tangent_projector(const ConePoint& p) {
  const Algebra& alg = *p.algebra;
  const Eigen::MatrixXd l = alg.lmul(p.x / alg.trace(p.x));
  // Peirce projectors of c: V_1 is L(2L - 1), V_1/2 is 4L(1 - L)
  return 3.0 * l - 2.0 * l * l;
}

TangentVector tangent_project(const ConePoint& p, const Eigen::VectorXd& v) { return {p, tangent_projector(p) * v}; }

double kepler_metric(const Algebra& alg, const Eigen::VectorXd& v) {
  return 2.0 / alg.rho() * alg.inner(v, v) - v(0) * v(0);
}

std::pair<double, Eigen::VectorXd> iota(const Algebra& alg, const Eigen::VectorXd& x) {
  return {alg.trace(x) / alg.rho(), std::sqrt(2.0) * x / norm(alg, x)};
}

Eigen::VectorXd to_projective(const Algebra& alg, const Eigen::VectorXd& x) {
  return x * (std::sqrt(2.0 * alg.rho()) / alg.trace(x));
}

nlohmann::json cone_point_json(const ConePoint& p) {
  nlohmann::json j;
  j["family"] = family_name(p.algebra->family());
  j["n"] = p.algebra->n();
  j["coords"] = std::vector<double>(p.x.data(), p.x.data() + p.x.size());
  j["r"] = p.r;
  return j;
}

MonteCarloResult skew_symmetry_mc(const AlgebraPtr& alg, const Eigen::VectorXd& u,
                                  const std::function<double(const Eigen::VectorXd&)>& psi1,
                                  const std::function<double(const Eigen::VectorXd&)>& psi2, int samples,
                                  std::uint64_t seed, bool include_lambda) {
  if (alg->family() != Family::gamma) throw Error("skew_symmetry_mc: only implemented for Gamma(n)");
  if (samples < 2) throw Error("skew_symmetry_mc: need at least two samples");
  const int n = alg->n();
  Rng rng(seed);
  std::gamma_distribution<double> radial(n - 1, 0.5);
  std::normal_distribution<double> gauss;
  double sum = 0.0, sum2 = 0.0, abs_sum = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double r = radial(rng.engine());
    Eigen::VectorXd omega(n);
    for (int i = 0; i < n; ++i) omega(i) = gauss(rng.engine());
    omega.normalize();
    Eigen::VectorXd x(n + 1);
    x(0) = r;
    x.tail(n) = r * omega;
    const ConePoint p{alg, x, r};
    // L-hat_u is the vector field x -> -ux; derivative along it by central differences
    const Eigen::VectorXd dir = -alg->product(u, x);
    const double h = 1e-5 * std::max(1.0, r);
    auto g = [&](const Eigen::VectorXd& y) { return psi1(y) * psi2(y); };
    const double lie = (g(x + h * dir) - g(x - h * dir)) / (2 * h);
    double f = lie;
    if (include_lambda) f -= 2.0 * lambda_weight(u, p) * g(x);
    const double weight = std::exp(2.0 * r);  // divide out the e^{-2r} of the radial density
    sum += f * weight;
    sum2 += f * f * weight * weight;
    abs_sum += std::abs(lie) * weight;
  }
  const double mean = sum / samples;
  const double var = std::max(0.0, sum2 / samples - mean * mean);
  return {mean, std::sqrt(var / (samples - 1)), abs_sum / samples};
}

}  // namespace jka
