#pragma once

#include <cstdint>
#include <functional>
#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "jka/algebra.hpp"
#include "jka/random.hpp"

namespace jka {

/// A point of the Kepler cone {x : x^2 = tr(x) x, tr x > 0}; r = <e|x> = tr(x)/rho.
struct ConePoint {
  AlgebraPtr algebra;
  Eigen::VectorXd x;
  double r = 0.0;
};

struct TangentVector {
  ConePoint base;
  Eigen::VectorXd dir;
};

bool cone_contains(const Algebra& alg, const Eigen::VectorXd& x, double tol = 1e-10);

/// ConePoint from coordinates; throws when x is off the cone.
ConePoint make_cone_point(const AlgebraPtr& alg, const Eigen::VectorXd& x, double tol = 1e-10);

/// t exp(D) e_11 with t uniform in [1/2, 2] and D a random rational
/// combination of the [L_a, L_b] scaled by `spread` (0 gives t e_11).
ConePoint cone_sample(const AlgebraPtr& alg, std::uint64_t seed, double spread = 1.0);
std::vector<ConePoint> cone_samples(const AlgebraPtr& alg, std::uint64_t seed, int count);

/// lambda_u = kappa <u|x>/r + (rho delta/4) <u|e>, kappa = (rho/2 - 1) delta/2.
double lambda_weight(const Eigen::VectorXd& u, const ConePoint& p, double tol = 1e-12);

/// sum_ab |[L_a,L_b]x><[L_a,L_b]x| / (rho^2/2 (1 + delta(rho-2)/4)) as a matrix.
Eigen::MatrixXd projector_lhs(const Algebra& alg, const Eigen::VectorXd& x);
/// r sum_a |e_a><e_a x| - |x><x|.
Eigen::MatrixXd projector_rhs(const Algebra& alg, const Eigen::VectorXd& x);
double projector_identity_residual(const ConePoint& p);

/// Orthogonal projector onto V_1(c) + V_1/2(c), c = x / tr x: the tangent space at x.
Eigen::MatrixXd tangent_projector(const ConePoint& p);
TangentVector tangent_project(const ConePoint& p, const Eigen::VectorXd& v);

/// ds_K^2(v, v) = (2/rho) <v|v> - <e|v>^2.
double kepler_metric(const Algebra& alg, const Eigen::VectorXd& v);
/// The isometry x -> (tr x / rho, sqrt(2) x / |x|) onto R_+ x P.
std::pair<double, Eigen::VectorXd> iota(const Algebra& alg, const Eigen::VectorXd& x);
/// Rescales a cone point onto the slice tr x = sqrt(2 rho).
Eigen::VectorXd to_projective(const Algebra& alg, const Eigen::VectorXd& x);

nlohmann::json cone_point_json(const ConePoint& p);

struct MonteCarloResult {
  double mean;
  double std_error;
  double scale;  // mean of |L_u-hat (psi1 psi2)|, for relative comparisons
};

/// Gamma(n) only: Monte-Carlo value of the integral of
/// (L~_u psi1) psi2 + psi1 (L~_u psi2) against (1/r) vol, where vol = r^{n-1} dr dOmega.
/// Radial samples are drawn from r^{n-2} e^{-2r}, so the psi should carry e^{-r}
/// each; the density is divided out. With include_lambda false the
/// lambda_u term is dropped (a negative control).
MonteCarloResult skew_symmetry_mc(const AlgebraPtr& alg, const Eigen::VectorXd& u,
                                  const std::function<double(const Eigen::VectorXd&)>& psi1,
                                  const std::function<double(const Eigen::VectorXd&)>& psi2, int samples,
                                  std::uint64_t seed, bool include_lambda = true);

}  // namespace jka
