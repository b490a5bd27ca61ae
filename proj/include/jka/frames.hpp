#pragma once

#include <map>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "jka/algebra.hpp"
#include "jka/random.hpp"

namespace jka {

struct SpectralPiece {
  double eigenvalue;
  Eigen::VectorXd idempotent;
};

/// a = sum_k lambda_k c_k with orthogonal idempotents summing to e, computed
/// inside the associative subalgebra R[a]. Eigenvalues come back ascending.
/// Throws when two eigenvalues are closer than tol (relative to |a|).
std::vector<SpectralPiece> spectral_decompose(const Algebra& alg, const Eigen::VectorXd& a, double tol = 1e-9);

struct JordanFrame {
  AlgebraPtr algebra;
  std::vector<Eigen::VectorXd> idempotents;                     // e_11 .. e_rr
  std::map<std::tuple<int, int, int>, Eigen::VectorXd> offdiag;  // (i, j, mu), i < j
};

/// Completes the rank-one element x0 to a Jordan frame with e_11 = x0 / tr x0.
JordanFrame jordan_frame(const AlgebraPtr& alg, const Eigen::VectorXd& x0, std::uint64_t seed = 1,
                         double tol = 1e-9);

/// Largest violation of the frame axioms (idempotency, orthogonality, unit
/// sum, traces, Peirce action, squares and lengths of off-diagonal vectors).
double frame_defect(const JordanFrame& frame);

struct PeirceDecomposition {
  std::map<std::pair<int, int>, std::vector<Eigen::VectorXd>> components;  // (i, j), i <= j
};

PeirceDecomposition peirce_decompose(const JordanFrame& frame, double tol = 1e-9);

/// Peirce projector onto V_ij of the frame (i <= j).
Eigen::MatrixXd peirce_projector(const JordanFrame& frame, int i, int j);

/// Labeled coordinate table of the frame, for debugging.
std::string format_frame(const JordanFrame& frame);

}  // namespace jka
