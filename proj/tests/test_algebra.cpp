#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "jka/algebra.hpp"

using namespace jka;

namespace {

const std::vector<AlgebraSpec> kSmall = {{Family::gamma, 2}, {Family::gamma, 3}, {Family::gamma, 4},
                                         {Family::herm_r, 2}, {Family::herm_r, 3}, {Family::herm_c, 2},
                                         {Family::herm_c, 3}, {Family::herm_h, 2}, {Family::herm_h, 3},
                                         {Family::herm_o, 3}};

QVector add(QVector a, const QVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

QVector scale(QVector a, const Rational& s) {
  for (auto& x : a) x *= s;
  return a;
}

// Plain matrix of Gaussian rationals, used as an oracle for Herm(n,R) and Herm(n,C).
using CMat = std::vector<std::vector<ComplexRational>>;

CMat as_complex_matrix(const Algebra& alg, const QVector& u) {
  const int n = alg.n();
  const auto h = alg.to_hermitian(u);
  CMat m(n, std::vector<ComplexRational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& z = h[i * n + j];
      m[i][j] = ComplexRational(z[0], z.coords().size() > 1 ? z[1] : Rational(0));
    }
  return m;
}

CMat symmetrized(const CMat& a, const CMat& b) {
  const std::size_t n = a.size();
  CMat c(n, std::vector<ComplexRational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      ComplexRational s;
      for (std::size_t k = 0; k < n; ++k) s += a[i][k] * b[k][j] + b[i][k] * a[k][j];
      c[i][j] = s * ComplexRational(Rational(1, 2));
    }
  return c;
}

}  // namespace

TEST(MakeAlgebra, GammaThree) {
  auto a = make_algebra(Family::gamma, 3);
  EXPECT_EQ(a->rho(), 2);
  EXPECT_EQ(a->delta(), 2);
  EXPECT_EQ(a->dim(), 4);
}

TEST(MakeAlgebra, OctonionThree) {
  auto a = make_algebra(Family::herm_o, 3);
  EXPECT_EQ(a->rho(), 3);
  EXPECT_EQ(a->delta(), 8);
  EXPECT_EQ(a->dim(), 27);
}

TEST(MakeAlgebra, SymmetricFourByFour) { EXPECT_EQ(make_algebra(Family::herm_r, 4)->dim(), 10); }

TEST(MakeAlgebra, RejectsOutOfRange) {
  EXPECT_THROW(make_algebra(Family::herm_o, 4), Error);
  EXPECT_THROW(make_algebra(Family::gamma, 1), Error);
  EXPECT_THROW(parse_algebra_spec("spin:3"), Error);
  EXPECT_THROW(parse_algebra_spec("gamma:x"), Error);
  EXPECT_EQ(parse_algebra_spec("herm_c:4").n, 4);
}

TEST(MakeAlgebra, DescriptorInvariants) {
  for (auto s : kSmall) {
    auto a = make_algebra(s);
    auto [rho, delta] = rank_and_degree(s.family, s.n);
    EXPECT_EQ(a->rho(), rho);
    EXPECT_EQ(a->delta(), delta);
    EXPECT_EQ(a->dim(), rho + delta * rho * (rho - 1) / 2);
    EXPECT_EQ(a->trace(a->unit()), rho);
    EXPECT_EQ(a->inner(a->unit(), a->unit()), 1);
    for (int i = 0; i < a->dim(); ++i)
      for (int j = 0; j < a->dim(); ++j) {
        const auto& p = a->product_entries(i, j);
        const auto& q = a->product_entries(j, i);
        ASSERT_EQ(p.size(), q.size());
        for (std::size_t k = 0; k < p.size(); ++k) {
          EXPECT_EQ(p[k].index, q[k].index);
          EXPECT_EQ(p[k].q, q[k].q);
        }
      }
  }
}

TEST(MakeAlgebra, RealLineAccepted) {
  auto a = make_algebra(Family::herm_r, 1);
  EXPECT_EQ(a->dim(), 1);
  EXPECT_EQ(a->product(a->unit(), a->unit()), a->unit());
}

TEST(JordanProduct, UnitActsTrivially) {
  Rng rng(1);
  for (auto s : kSmall) {
    auto a = make_algebra(s);
    const auto u = random_element(*a, rng);
    EXPECT_EQ(a->product(a->unit(), u), u) << a->name();
  }
}

TEST(JordanProduct, GammaTwoByHand) {
  auto a = make_algebra(Family::gamma, 2);
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    const auto u = random_element(*a, rng);
    const auto v = random_element(*a, rng);
    QVector expect = {u[0] * v[0] + u[1] * v[1] + u[2] * v[2], u[0] * v[1] + v[0] * u[1], u[0] * v[2] + v[0] * u[2]};
    EXPECT_EQ(a->product(u, v), expect);
  }
}

TEST(JordanProduct, HermTwoAnticommutingPair) {
  auto a = make_algebra(Family::herm_r, 2);
  using D = DivisionRingElement;
  auto real = [](long x) { return D(RingKind::real, {Rational(x)}); };
  const auto u = a->from_hermitian({real(0), real(1), real(1), real(0)});
  const auto v = a->from_hermitian({real(1), real(0), real(0), real(-1)});
  EXPECT_EQ(a->product(u, v), a->zero());
}

TEST(JordanProduct, MatchesSymmetrizedMatrixProduct) {
  Rng rng(3);
  for (auto s : std::vector<AlgebraSpec>{{Family::herm_r, 3}, {Family::herm_r, 4}, {Family::herm_c, 3}}) {
    auto a = make_algebra(s);
    for (int t = 0; t < 20; ++t) {
      const auto u = random_element(*a, rng);
      const auto v = random_element(*a, rng);
      EXPECT_EQ(as_complex_matrix(*a, a->product(u, v)),
                symmetrized(as_complex_matrix(*a, u), as_complex_matrix(*a, v)))
          << a->name();
    }
  }
}

TEST(JordanProduct, HermitianRoundTrip) {
  Rng rng(4);
  for (auto s : kSmall) {
    if (s.family == Family::gamma) continue;
    auto a = make_algebra(s);
    const auto u = random_element(*a, rng);
    EXPECT_EQ(a->from_hermitian(a->to_hermitian(u)), u);
  }
}

TEST(Trace, Values) {
  auto g = make_algebra(Family::gamma, 3);
  QVector u = {5, 1, -2, 7};
  EXPECT_EQ(g->trace(u), 10);
  EXPECT_EQ(g->trace(g->zero()), 0);
  for (auto s : kSmall) {
    auto a = make_algebra(s);
    EXPECT_EQ(a->trace(a->unit()), a->rho());
  }
}

TEST(Trace, MatchesMatrixTrace) {
  Rng rng(5);
  auto a = make_algebra(Family::herm_c, 3);
  for (int t = 0; t < 10; ++t) {
    const auto u = random_element(*a, rng);
    const auto m = as_complex_matrix(*a, u);
    EXPECT_EQ(a->trace(u), m[0][0].re + m[1][1].re + m[2][2].re);
  }
}

TEST(InnerProduct, TraceFormAndBasisOrthogonality) {
  Rng rng(6);
  for (auto s : kSmall) {
    auto a = make_algebra(s);
    for (int i = 0; i < a->dim(); ++i)
      for (int j = 0; j < a->dim(); ++j) {
        const Rational ip = a->trace(a->product(a->basis(i), a->basis(j))) / a->rho();
        EXPECT_EQ(ip, i == j ? a->weight(i) : Rational(0)) << a->name() << " " << i << " " << j;
      }
    for (int t = 0; t < 10; ++t) {
      const auto u = random_element(*a, rng);
      const auto v = random_element(*a, rng);
      const auto w = random_element(*a, rng);
      EXPECT_EQ(a->inner(a->product(v, u), w), a->inner(v, a->product(u, w)));
      EXPECT_GT(a->inner(u, u), 0);
    }
  }
}

TEST(InnerProduct, DiagonalUnitsHaveLengthOverRank) {
  for (int n : {2, 3, 4}) {
    auto a = make_algebra(Family::herm_r, n);
    using D = DivisionRingElement;
    std::vector<D> m(n * n, D(RingKind::real));
    m[0] = D(RingKind::real, {Rational(1)});
    const auto e11 = a->from_hermitian(m);
    EXPECT_EQ(a->inner(e11, e11), Rational(1, n));
  }
}

TEST(InnerProduct, MismatchThrows) {
  auto a = make_algebra(Family::gamma, 3);
  auto b = make_algebra(Family::herm_c, 2);
  EXPECT_THROW(inner_product(element(a, a->unit()), element(b, b->unit())), AlgebraMismatch);
  EXPECT_THROW(jordan_product(element(a, a->unit()), element(b, b->unit())), AlgebraMismatch);
  EXPECT_NO_THROW(jordan_product(element(a, a->unit()), element(make_algebra(Family::gamma, 3), a->unit())));
}

TEST(Lmul, IdentityAndJordanIdentity) {
  Rng rng(7);
  for (auto s : kSmall) {
    auto a = make_algebra(s);
    EXPECT_EQ(a->lmul(a->unit()), QMatrix::identity(a->dim()));
    for (int t = 0; t < 50; ++t) {
      const auto u = random_element(*a, rng);
      const auto u2 = a->product(u, u);
      EXPECT_TRUE(commutator(a->lmul(u), a->lmul(u2)).is_zero()) << a->name();
    }
  }
}

TEST(Lmul, CubeFormula) {
  Rng rng(8);
  for (auto s : kSmall) {
    auto a = make_algebra(s);
    for (int t = 0; t < 5; ++t) {
      const auto u = random_element(*a, rng);
      const auto u2 = a->product(u, u);
      const auto lu = a->lmul(u);
      const QMatrix rhs = Rational(3) * (a->lmul(u2) * lu) - Rational(2) * (lu * lu * lu);
      EXPECT_EQ(a->lmul(a->product(u2, u)), rhs) << a->name();
    }
  }
}

TEST(Lmul, SelfAdjoint) {
  Rng rng(9);
  for (auto s : kSmall) {
    auto a = make_algebra(s);
    const auto lu = a->lmul(random_element(*a, rng));
    EXPECT_EQ(a->adjoint(lu), lu) << a->name();
  }
}

TEST(TripleProduct, Basics) {
  Rng rng(10);
  for (auto s : kSmall) {
    auto a = make_algebra(s);
    const auto e = a->unit();
    EXPECT_EQ(a->triple(e, e, e), e);
    const auto u = random_element(*a, rng);
    const auto z = random_element(*a, rng);
    const auto w = random_element(*a, rng);
    EXPECT_EQ(a->triple(u, e, z), a->product(u, z));
    EXPECT_EQ(a->triple(w, u, z), a->triple(z, u, w));
    EXPECT_EQ(a->s_map(u, e), a->lmul(u));
    EXPECT_EQ(a->s_map(u, w) * z, a->triple(u, w, z));
  }
}

TEST(TripleProduct, StructureAlgebraRelation) {
  // [S_uv, S_zw] = S_{{uvz}w} - S_{z{vuw}}
  Rng rng(11);
  for (auto s : kSmall) {
    if (s.family == Family::herm_o) continue;
    auto a = make_algebra(s);
    for (int t = 0; t < 3; ++t) {
      const auto u = random_element(*a, rng), v = random_element(*a, rng);
      const auto z = random_element(*a, rng), w = random_element(*a, rng);
      const QMatrix lhs = commutator(a->s_map(u, v), a->s_map(z, w));
      const QMatrix rhs = a->s_map(a->triple(u, v, z), w) - a->s_map(z, a->triple(v, u, w));
      EXPECT_EQ(lhs, rhs) << a->name();
    }
  }
}

TEST(QuadraticRep, IdentityAndHomogeneity) {
  Rng rng(12);
  for (auto s : kSmall) {
    auto a = make_algebra(s);
    EXPECT_EQ(a->quadratic_rep(a->unit()), QMatrix::identity(a->dim()));
    const auto x = random_element(*a, rng);
    EXPECT_EQ(a->quadratic_rep(scale(x, 2)), Rational(4) * a->quadratic_rep(x));
    EXPECT_EQ(a->quadratic_rep(x) * a->unit(), a->product(x, x));
  }
}

TEST(QuadraticRep, EquivariantUnderAutomorphisms) {
  Rng rng(13);
  for (auto s : kSmall) {
    auto a = make_algebra(s);
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(a->dim(), a->dim());
    for (int t = 0; t < 3; ++t) {
      const auto u = random_element(*a, rng), v = random_element(*a, rng);
      d += to_eigen(commutator(a->lmul(u), a->lmul(v))) * 0.1;
    }
    const Eigen::MatrixXd g = d.exp();
    const Eigen::VectorXd x = to_eigen(random_element(*a, rng));
    const Eigen::MatrixXd lhs = a->quadratic_rep(Eigen::VectorXd(g * x));
    const Eigen::MatrixXd rhs = g * a->quadratic_rep(x) * a->adjoint(g);
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-9 * (1 + rhs.cwiseAbs().maxCoeff())) << a->name();
  }
}

TEST(Properties, CommutativityOnManyPairs) {
  for (auto s : kSmall) {
    auto a = make_algebra(s);
    Rng rng(100);
    for (int t = 0; t < 100; ++t) {
      const auto u = random_element(*a, rng), v = random_element(*a, rng);
      ASSERT_EQ(a->product(u, v), a->product(v, u)) << a->name();
    }
  }
}

TEST(Properties, PowerAssociativity) {
  Rng rng(14);
  for (auto s : kSmall) {
    auto a = make_algebra(s);
    const auto u = random_element(*a, rng);
    std::vector<QVector> pw = {a->unit(), u};
    for (int k = 2; k <= 6; ++k) pw.push_back(a->product(pw[k - 1], u));
    for (int r = 1; r <= 5; ++r)
      for (int t = 1; r + t <= 6; ++t) EXPECT_EQ(a->product(pw[r], pw[t]), pw[r + t]) << a->name();
  }
}

TEST(Properties, DoubleCommutatorOfMultiplications) {
  // [[L_u, L_v], L_z] = L_{u(vz) - v(uz)}
  Rng rng(15);
  for (auto s : kSmall) {
    auto a = make_algebra(s);
    for (int t = 0; t < 5; ++t) {
      const auto u = random_element(*a, rng), v = random_element(*a, rng), z = random_element(*a, rng);
      const QMatrix lhs = commutator(commutator(a->lmul(u), a->lmul(v)), a->lmul(z));
      const QVector arg = add(a->product(u, a->product(v, z)), scale(a->product(v, a->product(u, z)), -1));
      EXPECT_EQ(lhs, a->lmul(arg)) << a->name();
    }
  }
}

TEST(Properties, LowRankIsomorphisms) {
  // Gamma(2) = Herm(2,R) and Gamma(3) = Herm(2,C): (l, a, b[, c]) maps to the
  // matrix [[l + a, b + c i], [b - c i, l - a]], which in our bases is the
  // identity on coordinates. The product tensors must therefore coincide.
  const std::vector<std::pair<AlgebraSpec, AlgebraSpec>> pairs = {
      {{Family::gamma, 2}, {Family::herm_r, 2}}, {{Family::gamma, 3}, {Family::herm_c, 2}}, {{Family::gamma, 5}, {Family::herm_h, 2}}};
  Rng rng(16);
  for (auto [gs, hs] : pairs) {
    auto g = make_algebra(gs);
    auto h = make_algebra(hs);
    ASSERT_EQ(g->dim(), h->dim());
    EXPECT_EQ(g->rho(), h->rho());
    EXPECT_EQ(g->delta(), h->delta());
    // The isomorphism as an explicit matrix map, checked against the oracle picture.
    for (int t = 0; t < 10; ++t) {
      const auto u = random_element(*g, rng), v = random_element(*g, rng);
      const auto hm = h->to_hermitian(u);
      EXPECT_EQ(hm[0][0], u[0] + u[1]);
      EXPECT_EQ(hm[3][0], u[0] - u[1]);
      EXPECT_EQ(g->product(u, v), h->product(u, v));
      Eigen::VectorXcd ev_g = to_eigen(g->lmul(u)).eigenvalues();
      Eigen::VectorXcd ev_h = to_eigen(h->lmul(u)).eigenvalues();
      std::vector<double> a1, a2;
      for (int i = 0; i < ev_g.size(); ++i) {
        a1.push_back(ev_g(i).real());
        a2.push_back(ev_h(i).real());
      }
      std::sort(a1.begin(), a1.end());
      std::sort(a2.begin(), a2.end());
      for (std::size_t i = 0; i < a1.size(); ++i) EXPECT_NEAR(a1[i], a2[i], 1e-9);
    }
  }
}

TEST(DivisionRing, CompositionAndAlternativity) {
  Rng rng(17);
  for (auto kind : {RingKind::real, RingKind::complex, RingKind::quaternion, RingKind::octonion}) {
    for (int t = 0; t < 50; ++t) {
      std::vector<Rational> cx, cy;
      for (int i = 0; i < ring_dimension(kind); ++i) {
        cx.push_back(rng.rational());
        cy.push_back(rng.rational());
      }
      DivisionRingElement x(kind, cx), y(kind, cy);
      EXPECT_EQ((x * y).norm(), x.norm() * y.norm());
      EXPECT_EQ((x * x) * y, x * (x * y));
      EXPECT_EQ((y * x) * x, y * (x * x));
      EXPECT_EQ(x.conj().conj(), x);
      EXPECT_EQ((x * y).conj(), y.conj() * x.conj());
    }
  }
}

TEST(DivisionRing, QuaternionsMatchHamilton) {
  // i j = k, j i = -k, i^2 = -1 for the Hamilton product.
  using D = DivisionRingElement;
  const D i = D::unit(RingKind::quaternion, 1), j = D::unit(RingKind::quaternion, 2);
  const D ij = i * j, ji = j * i;
  EXPECT_EQ(ij + ji, D(RingKind::quaternion));
  EXPECT_EQ(ij.norm(), 1);
  EXPECT_EQ(ij[0], 0);
  EXPECT_EQ(ij[1], 0);
  EXPECT_EQ(ij[2], 0);
  EXPECT_EQ((i * i)[0], -1);
}

TEST(DivisionRing, OctonionsAreNotAssociative) {
  using D = DivisionRingElement;
  bool found = false;
  for (int a = 1; a < 8 && !found; ++a)
    for (int b = 1; b < 8 && !found; ++b)
      for (int c = 1; c < 8 && !found; ++c) {
        const D x = D::unit(RingKind::octonion, a), y = D::unit(RingKind::octonion, b), z = D::unit(RingKind::octonion, c);
        found = !((x * y) * z == x * (y * z));
      }
  EXPECT_TRUE(found);
}

TEST(Export, JsonDescriptorAndCsv) {
  auto a = make_algebra(Family::herm_o, 3);
  const auto j = descriptor_json(*a);
  EXPECT_EQ(j["family"], "herm_o");
  EXPECT_EQ(j["dim"], 27);
  EXPECT_EQ(j["rho"], 3);
  EXPECT_EQ(j["delta"], 8);
  auto g = make_algebra(Family::gamma, 2);
  const std::string csv = product_tensor_csv(*g);
  EXPECT_EQ(csv.rfind("alpha,beta,gamma,coefficient\n", 0), 0u);
  EXPECT_NE(csv.find("1,1,0,1\n"), std::string::npos);
  // one row per nonzero coefficient: 3 (e row) + 2 (e column) + 2 (diagonal v_i^2)
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 7);
}
