#include "jka/frames.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace jka {

namespace {

double norm(const Algebra& alg, const Eigen::VectorXd& v) { return std::sqrt(std::max(0.0, alg.inner(v, v))); }

// Columns of `vectors` made orthonormal for the weighted inner product,
// keeping only directions above the relative threshold.
std::vector<Eigen::VectorXd> orthonormal_span(const Algebra& alg, const Eigen::MatrixXd& vectors, double rel_tol) {
  const Eigen::VectorXd sw = alg.weights_d().cwiseSqrt();
  const Eigen::MatrixXd b = sw.asDiagonal() * vectors;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  std::vector<Eigen::VectorXd> out;
  if (s.size() == 0 || s(0) == 0.0) return out;
  for (int k = 0; k < s.size(); ++k) {
    if (s(k) <= rel_tol * s(0)) break;
    out.push_back(sw.cwiseInverse().asDiagonal() * svd.matrixU().col(k));
  }
  return out;
}

}  // namespace

std::vector<SpectralPiece> spectral_decompose(const Algebra& alg, const Eigen::VectorXd& a, double tol) {
  const double scale = norm(alg, a);
  if (scale == 0.0) throw Error("spectral_decompose: zero element");
  const Eigen::VectorXd e = to_eigen(alg.unit());
  // W-orthonormal basis of R[a] from successive powers.
  std::vector<Eigen::VectorXd> q;
  Eigen::VectorXd power = e;
  // Powers closer than this to the span so far count as dependent, i.e. a
  // numerically repeated eigenvalue. Near-repeats above it are refused below.
  const double floor = std::min(1e-9, tol * 1e-3);
  for (int k = 0; k <= alg.rho(); ++k) {
    Eigen::VectorXd v = power / std::max(1.0, norm(alg, power));
    const double before = norm(alg, v);
    for (const auto& b : q) v -= alg.inner(b, v) * b;
    const double after = norm(alg, v);
    if (after <= floor * std::max(1.0, before)) break;
    q.push_back(v / after);
    power = alg.product(power, a / scale);
  }
  const int k = static_cast<int>(q.size());
  Eigen::MatrixXd m(k, k);
  for (int i = 0; i < k; ++i) {
    const Eigen::VectorXd aq = alg.product(a, q[i]);
    for (int j = 0; j < k; ++j) m(j, i) = alg.inner(q[j], aq);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (m + m.transpose()));
  std::vector<double> lambda(es.eigenvalues().data(), es.eigenvalues().data() + k);
  std::sort(lambda.begin(), lambda.end());
  for (int i = 1; i < k; ++i) {
    const double gap = lambda[i] - lambda[i - 1];
    if (gap < tol * std::max(1.0, scale)) {
      std::ostringstream os;
      os << "spectral_decompose: eigenvalue cluster, gap " << gap << " below tolerance " << tol;
      throw Error(os.str());
    }
  }
  std::vector<SpectralPiece> pieces;
  for (int i = 0; i < k; ++i) {
    Eigen::VectorXd c = e;
    for (int j = 0; j < k; ++j) {
      if (j == i) continue;
      c = alg.product(c, (a - lambda[j] * e) / (lambda[i] - lambda[j]));
    }
    // polish towards c^2 = c
    for (int it = 0; it < 2; ++it) {
      const Eigen::VectorXd c2 = alg.product(c, c);
      c = 3.0 * c2 - 2.0 * alg.product(c2, c);
    }
    pieces.push_back({lambda[i], c});
  }
  Eigen::VectorXd rebuilt = Eigen::VectorXd::Zero(alg.dim());
  for (const auto& p : pieces) rebuilt += p.eigenvalue * p.idempotent;
  if (norm(alg, rebuilt - a) > 1e-7 * std::max(1.0, scale))
    throw Error("spectral_decompose: reconstruction failed, spectrum too close to degenerate");
  return pieces;
}

namespace {

// Element with simple spectrum in the standard frame: diag(1, 2, ..., n)
// for matrix algebras, (0, v1) for Gamma(n).
Eigen::VectorXd standard_generic(const Algebra& alg) {
  if (alg.family() == Family::gamma) return to_eigen(alg.basis(1));
  std::vector<DivisionRingElement> m(alg.n() * alg.n(), DivisionRingElement(alg.ring()));
  for (int i = 0; i < alg.n(); ++i) {
    std::vector<Rational> c(ring_dimension(alg.ring()), Rational(0));
    c[0] = i + 1;
    m[i * alg.n() + i] = DivisionRingElement(alg.ring(), c);
  }
  return to_eigen(alg.from_hermitian(m));
}

Eigen::VectorXd random_vector(int dim, Rng& rng) {
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.uniform(-1.0, 1.0);
  return v;
}

}  // namespace

JordanFrame jordan_frame(const AlgebraPtr& alg, const Eigen::VectorXd& x0, std::uint64_t seed, double tol) {
  const double t = alg->trace(x0);
  const double scale = std::max(1.0, norm(*alg, x0) * norm(*alg, x0));
  if (!(t > tol) || norm(*alg, alg->product(x0, x0) - t * x0) > 1e-7 * scale)
    throw Error("jordan_frame: seed is not a rank-one semi-positive element");
  const Eigen::VectorXd e = to_eigen(alg->unit());
  JordanFrame frame;
  frame.algebra = alg;
  frame.idempotents.push_back(x0 / t);

  // Pending idempotents of trace > 1, split inside their Peirce-1 subalgebra.
  std::vector<Eigen::VectorXd> pending = {e - x0 / t};
  Rng rng(seed);
  int attempts = 0;
  while (!pending.empty()) {
    if (++attempts > 200) throw Error("jordan_frame: could not split idempotent");
    Eigen::VectorXd c = pending.back();
    const int rank_c = static_cast<int>(std::lround(alg->trace(c)));
    if (rank_c <= 1) {
      pending.pop_back();
      frame.idempotents.push_back(c);
      continue;
    }
    // First try a fixed element so seeds aligned with the standard frame
    // complete to it; later attempts are random.
    const Eigen::VectorXd y = attempts == 1 ? standard_generic(*alg) : random_vector(alg->dim(), rng);
    const Eigen::VectorXd z = alg->quadratic_rep(c) * y;
    // shift the complement of c far away so it stays a single piece
    const double mu = -10.0 * (1.0 + norm(*alg, z));
    std::vector<SpectralPiece> pieces;
    try {
      pieces = spectral_decompose(*alg, z + mu * (e - c), std::max(tol, 1e-6));
    } catch (const Error&) {
      continue;  // clustered sample, draw again
    }
    pending.pop_back();
    for (auto p = pieces.rbegin(); p != pieces.rend(); ++p) {
      if (std::abs(p->eigenvalue - mu) < 1e-6 * std::abs(mu)) continue;
      pending.push_back(p->idempotent);
    }
  }
  if (static_cast<int>(frame.idempotents.size()) != alg->rho())
    throw Error("jordan_frame: frame has the wrong number of idempotents");

  const double len = 1.0 / std::sqrt(static_cast<double>(alg->rho()));
  for (int i = 0; i < alg->rho(); ++i)
    for (int j = i + 1; j < alg->rho(); ++j) {
      const auto vs = orthonormal_span(*alg, peirce_projector(frame, i, j), 1e-8);
      if (static_cast<int>(vs.size()) != alg->delta()) throw Error("jordan_frame: Peirce component has wrong dimension");
      for (int mu = 0; mu < alg->delta(); ++mu) frame.offdiag[{i, j, mu}] = vs[mu] * len;
    }
  return frame;
}

Eigen::MatrixXd peirce_projector(const JordanFrame& frame, int i, int j) {
  const Algebra& alg = *frame.algebra;
  const Eigen::MatrixXd li = alg.lmul(frame.idempotents.at(i));
  if (i == j) return 2.0 * li * li - li;  // P(e_ii) = L(2L - 1)
  const Eigen::MatrixXd lj = alg.lmul(frame.idempotents.at(j));
  return 4.0 * li * lj;
}

double frame_defect(const JordanFrame& frame) {
  const Algebra& alg = *frame.algebra;
  const int r = alg.rho();
  const double len2 = 1.0 / r;
  double d = 0.0;
  auto bump = [&](const Eigen::VectorXd& v) { d = std::max(d, std::sqrt(std::abs(alg.inner(v, v)))); };
  auto bump_s = [&](double x) { d = std::max(d, std::abs(x)); };
  if (static_cast<int>(frame.idempotents.size()) != r) return INFINITY;
  Eigen::VectorXd sum = -to_eigen(alg.unit());
  for (int i = 0; i < r; ++i) {
    const auto& ei = frame.idempotents[i];
    sum += ei;
    bump(alg.product(ei, ei) - ei);
    bump_s(alg.trace(ei) - 1.0);
    bump_s(alg.inner(ei, ei) - len2);
    for (int j = i + 1; j < r; ++j) bump(alg.product(ei, frame.idempotents[j]));
  }
  bump(sum);
  for (const auto& [key, v] : frame.offdiag) {
    const auto [i, j, mu] = key;
    bump(alg.product(frame.idempotents[i], v) - 0.5 * v);
    bump(alg.product(frame.idempotents[j], v) - 0.5 * v);
    bump(alg.product(v, v) - 0.5 * (frame.idempotents[i] + frame.idempotents[j]));
    bump_s(alg.trace(v));
    bump_s(alg.inner(v, v) - len2);
    for (const auto& [key2, w] : frame.offdiag)
      if (key2 != key) bump_s(alg.inner(v, w));
  }
  return d;
}

PeirceDecomposition peirce_decompose(const JordanFrame& frame, double tol) {
  if (frame_defect(frame) > std::max(tol, 1e-8) * 100) throw Error("peirce_decompose: frame axioms violated");
  const Algebra& alg = *frame.algebra;
  PeirceDecomposition out;
  for (int i = 0; i < alg.rho(); ++i)
    for (int j = i; j < alg.rho(); ++j) out.components[{i, j}] = orthonormal_span(alg, peirce_projector(frame, i, j), 1e-8);
  return out;
}

std::string format_frame(const JordanFrame& frame) {
  const Algebra& alg = *frame.algebra;
  std::ostringstream os;
  os << std::setprecision(6) << std::fixed;
  os << std::setw(10) << "vector";
  for (int a = 0; a < alg.dim(); ++a) os << std::setw(12) << alg.label(a);
  os << '\n';
  auto row = [&](const std::string& name, const Eigen::VectorXd& v) {
    os << std::setw(10) << name;
    for (int a = 0; a < alg.dim(); ++a) os << std::setw(12) << v(a);
    os << '\n';
  };
  for (std::size_t i = 0; i < frame.idempotents.size(); ++i)
    row("e" + std::to_string(i + 1) + std::to_string(i + 1), frame.idempotents[i]);
  for (const auto& [key, v] : frame.offdiag) {
    const auto [i, j, mu] = key;
    row("e" + std::to_string(i + 1) + std::to_string(j + 1) + "^" + std::to_string(mu + 1), v);
  }
  return os.str();
}

}  // namespace jka
