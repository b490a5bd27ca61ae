#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "jka/algebra.hpp"
#include "jka/cone.hpp"
#include "jka/cone_operator.hpp"

namespace jka {

struct HiddenConstants {
  Rational A;
  Rational B;
  Rational kappa;  // (rho/2 - 1) delta / 2
  Rational a;      // constant of the primary quadratic relation
};

/// A = (2/rho^2) / (1 + delta(rho-2)/4), B = (delta/8)(rho-2)((3 rho/2 - 1) delta - 2),
/// a = (rho delta/4)(1 + (rho-2) delta/4).
HiddenConstants hidden_constants(const Algebra& alg);
/// 1/A from the projector identity: (rho^2/2)(1 + delta(rho-2)/4).
Rational inverse_A_from_projector(const Algebra& alg);
/// Closed forms per family: Gamma(n) (1/2, 0), Herm(n,R) (8/(n^2(n+2)), 3(n-2)^2/16), ...
std::pair<Rational, Rational> constants_table_entry(Family f, int n);

/// sum_a L_{e_a}^2 over an orthonormal basis minus rho(1 + (rho-2)delta/4) L_e + (rho^2 delta/4)|e><e|.
/// Exactly zero.
QMatrix lmul_square_sum_defect(const Algebra& alg);

/// The operators of the hidden action on one algebra. All are exact on
/// WeightedFunction; X and Delta are built once.
class HiddenAction {
 public:
  explicit HiddenAction(AlgebraPtr alg);
  HiddenAction(AlgebraPtr alg, HiddenConstants constants);

  const Algebra& algebra() const { return *alg_; }
  const AlgebraPtr& algebra_ptr() const { return alg_; }
  const HiddenConstants& constants() const { return c_; }
  int dim() const { return alg_->dim(); }

  /// <u|x> as a function.
  WeightedFunction inner_x(const QVector& u) const;
  WeightedFunction lambda(const QVector& u) const;
  ConeOperator multiply(const WeightedFunction& g, const std::string& label) const;
  ConeOperator constant(const ComplexRational& c) const;

  ConeOperator hatL(const QVector& u) const;  // -<ux|d>
  ConeOperator tildeL(const QVector& u) const;
  ConeOperator Luv(const QVector& u, const QVector& v) const;  // [hatL u, hatL v]
  ConeOperator delta() const { return delta_; }                  // A sum [hatL_a, hatL_b]^2
  ConeOperator radial() const { return radial_; }                // hatL_e^2 - ((rho-1)delta - 1) hatL_e
  ConeOperator X() const { return x_; }
  ConeOperator tildeS(const QVector& u, const QVector& v) const;
  ConeOperator tildeX(const QVector& u) const;
  ConeOperator tildeY(const QVector& v) const;
  ConeOperator hatS(const QVector& u, const QVector& v) const;
  ConeOperator hatX(const QVector& u) const;
  ConeOperator hatY(const QVector& v) const;
  ConeOperator H0tilde() const;
  ConeOperator hamiltonian() const;  // (1/r)((i/2) X~_e - 1)
  ConeOperator lenz(const QVector& u) const;

  /// By name: hatL, tildeL, X, Delta, tildeS, tildeX, tildeY, hatS, hatX, hatY,
  /// H0tilde, h, lenz, Luv. Throws on unknown kinds or a wrong parameter count.
  ConeOperator build(const std::string& kind, const std::vector<QVector>& params) const;

 private:
  std::string vec(const QVector& u) const;

  AlgebraPtr alg_;
  HiddenConstants c_;
  ConeOperator delta_;
  ConeOperator radial_;
  ConeOperator x_;
};

/// max over (f, x) of |((lhs - rhs) f)(x)| / (1 + |(lhs f)(x)| + |(rhs f)(x)|).
double identity_residual(const ConeOperator& lhs, const ConeOperator& rhs, const std::vector<WeightedFunction>& testset,
                         const std::vector<Eigen::VectorXd>& points);
double identity_residual(const ConeOperator& lhs, const ConeOperator& rhs, const std::vector<WeightedFunction>& testset,
                         const std::vector<ConePoint>& points);

/// {e^{-r} r^{-kappa} x^m : |m| <= d} and {e^{-r} r^{-kappa-1} x^m : |m| <= d-1}, d = max_degree.
std::vector<WeightedFunction> default_test_set(const Algebra& alg, int max_degree = 2);
/// `count` random rational combinations of the default test set.
std::vector<WeightedFunction> mixed_test_set(const Algebra& alg, int count, std::uint64_t seed, int max_degree = 2);

struct IdentityCheck {
  std::string id;
  std::string anchor;  // formula being checked
  double max_residual = 0.0;
  bool pass = false;
};

struct SuiteReport {
  std::string algebra;
  std::string suite;
  std::uint64_t seed = 0;
  double tol = 0.0;
  int points = 0;
  int functions = 0;
  std::vector<IdentityCheck> checks;
  bool pass() const;
  double max_residual() const;
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  double tol = 1e-8;
  int points = 20;
  int samples = 1;  // random (u, v, z, w) draws per identity
  /// 0: the default test set term by term; otherwise this many random combinations of it.
  int mixed = 0;
  /// Polynomial degree of the test set, 1 or 2.
  int max_degree = 2;
  /// Constants used to build X (defaults to the exact ones).
  std::optional<HiddenConstants> constants;
  /// appendixB: B is replaced by B + epsilon.
  Rational epsilon = Rational(1);
  /// Negative control: move the sample points off the cone by adding a multiple of e.
  bool off_cone = false;
};

const std::vector<std::string>& suite_names();
/// Suites: tkk_hidden, vector_fields, quadratic, lenz, appendixB, lemma.
SuiteReport run_identity_suite(const AlgebraPtr& alg, const std::string& suite, const SuiteOptions& opt = {});

nlohmann::json suite_report_json(const SuiteReport& r);

}  // namespace jka
