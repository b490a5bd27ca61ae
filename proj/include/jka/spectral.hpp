#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "jka/hidden_action.hpp"

namespace jka {

/// Polynomials in one variable, coefficients in ascending powers.
using Poly = QVector;

Rational poly_eval(const Poly& p, const Rational& x);
double poly_eval(const Poly& p, double x);
Poly poly_derivative(const Poly& p);

/// Associated Laguerre polynomial L_n^alpha, leading coefficient (-1)^n/n!.
struct LaguerrePoly {
  int n = 0;
  Rational alpha;
  Poly coeffs;

  Rational eval(const Rational& x) const { return poly_eval(coeffs, x); }
  double eval(double x) const { return poly_eval(coeffs, x); }
};

/// Built by (n+1) L_{n+1} = (2n+1+alpha-x) L_n - (n+alpha) L_{n-1}.
LaguerrePoly laguerre(int n, const Rational& alpha);
Rational laguerre_eval(int n, const Rational& alpha, const Rational& x);
/// Float three-term recurrence.
double laguerre_eval(int n, double alpha, double x);

/// x y'' + (alpha+1-x) y' + n y, exactly.
Poly laguerre_ode_defect(const LaguerrePoly& p);
/// n L_n^a - (n+a) L_{n-1}^a + x L_{n-1}^{a+1}, n >= 1.
Poly recursive1_defect(int n, const Rational& alpha);
/// (n+1) L_{n+1}^a - (2n+1+a-x) L_n^a + (n+a) L_{n-1}^a, n >= 1.
Poly recursive2_defect(int n, const Rational& alpha);

struct GaussLaguerre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
/// Nodes and weights for the weight x^alpha e^{-x} on (0, inf): Golub-Welsch,
/// then Newton polishing of the nodes and the closed-form weights.
GaussLaguerre gauss_laguerre(int order, double alpha);
/// Quadrature of int x^a e^{-x} L_n L_m minus Gamma(n+a+1)/n! delta_nm.
/// Throws when order < n + m + 1.
double laguerre_orthogonality_check(int n, int m, const Rational& alpha, int order);
/// Quadrature of int x^{a+2} e^{-x} L_k^a L_{k-1}^{a+2} against -2 Gamma(k+a+2)/(k-1)!, relative.
double laguerre_cross_integral_check(int k, const Rational& alpha, int order);

/// Polynomials of degree <= d restricted to the slice r = 1 of the cone
/// (a copy of the projective space). Full exponent vectors over x^0..x^{dim-1}.
struct FilteredBasis {
  int degree = 0;
  bool homogeneous = false;
  std::vector<std::vector<int>> monomials;
  std::vector<int> selected;    // independent columns, in pivot order
  Eigen::MatrixXd evaluation;   // points x monomials
  std::vector<double> pivots;   // |R_kk| / |R_00| of the column-pivoted QR

  int count() const { return static_cast<int>(selected.size()); }
};

/// n_points = 0 means three times the monomial count. With homogeneous set,
/// only monomials of degree exactly d are used (they span the same space
/// on the slice). Throws if the rank changes when the points are re-seeded.
FilteredBasis restricted_basis(const AlgebraPtr& alg, int d, int n_points = 0, std::uint64_t seed = 1,
                               bool homogeneous = false);

/// All exponent vectors over `vars` coordinates with total degree in [lo, hi].
std::vector<std::vector<int>> monomial_exponents(int vars, int lo, int hi);

struct H0Matrix {
  std::vector<WeightedFunction> basis;  // e^{-r} r^{-kappa} x^m, m homogeneous of degree <= d
  std::vector<int> degrees;
  Eigen::MatrixXd matrix;               // H0tilde b_j = sum_i matrix(i, j) b_i
  double closure_residual = 0.0;
};

/// Matrix of H0tilde on e^{-r} r^{-kappa} (polynomials of degree <= d on the cone),
/// by least squares at 3x oversampled cone points. Throws if the image leaves
/// the span (relative residual above 1e-7).
H0Matrix h0_matrix(const AlgebraPtr& alg, int d, std::uint64_t seed = 1);

struct SpectrumLevel {
  int I = 0;
  double eigenvalue = 0.0;
  int multiplicity = 0;
  double energy = 0.0;  // -(1/2)/(I + rho delta/4)^2
};

struct SpectrumResult {
  std::string algebra;
  Family family = Family::gamma;
  int n = 0;
  int rho = 0;
  int delta = 0;
  int degree = 0;
  std::vector<double> eigenvalues;  // ascending
  std::vector<SpectrumLevel> levels;
  double closure_residual = 0.0;
};

/// Eigenvalues clustered with width 1e-4 and labelled by I = -eigenvalue - rho delta/4.
SpectrumResult h0_matrix_spectrum(const AlgebraPtr& alg, int d, std::uint64_t seed = 1);
nlohmann::json spectrum_json(const SpectrumResult& s);

/// E_I = -(1/2)/(I + rho delta/4)^2, exactly.
Rational bound_state_energy(const Algebra& alg, int I);

/// f(x/lambda) up to the constant factor lambda^{-s0}, s0 the r-power of the
/// first term; all r-powers of f must differ from s0 by integers.
WeightedFunction rescale_argument(const WeightedFunction& f, const Rational& lambda);

struct BoundStateResult {
  int I = 0;
  double eigenvalue = 0.0;  // of H0tilde, near -(I + rho delta/4)
  Rational energy;
  double residual = 0.0;    // relative residual of h psi = E_I psi at cone points
};

/// Takes an H0tilde eigenvector with eigenvalue -n_I, n_I = I + rho delta/4,
/// forms psi(x) = psi~(x/n_I) and checks h psi = E_I psi. Requires I <= d.
BoundStateResult bound_state_check(const AlgebraPtr& alg, int I, int d, std::uint64_t seed = 1);

/// Harmonic homogeneous polynomials of degree l in x^1..x^n for Gamma(n), exact.
std::vector<WeightedFunction> solid_harmonics(const Algebra& alg, int l);
/// r^{-kappa} L_{k-1}^{2l + rho delta/2 - 1}(2r) e^{-r} Y(x), Gamma(n) only.
WeightedFunction phi_klm_gamma(const Algebra& alg, int k, int l, const WeightedFunction& Y);

}  // namespace jka
