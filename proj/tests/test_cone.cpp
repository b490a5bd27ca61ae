#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "jka/cone.hpp"
#include "jka/frames.hpp"
#include "jka/tkk.hpp"

using namespace jka;

namespace {

const std::vector<AlgebraSpec> kAll = {{Family::gamma, 2}, {Family::gamma, 3}, {Family::gamma, 4},
                                       {Family::herm_r, 3}, {Family::herm_c, 3}, {Family::herm_h, 3},
                                       {Family::herm_o, 3}};

Eigen::VectorXd random_vec(const Algebra& alg, Rng& rng) { return to_eigen(random_element(alg, rng)); }

}  // namespace

TEST(ConeContains, Examples) {
  auto g3 = make_algebra(Family::gamma, 3);
  Eigen::VectorXd x(4);
  x << 5, 3, 0, 4;
  EXPECT_TRUE(cone_contains(*g3, x));
  EXPECT_FALSE(cone_contains(*g3, Eigen::VectorXd(Eigen::Vector4d(5, 3, 0, 3))));
  EXPECT_FALSE(cone_contains(*g3, -x));
  for (auto s : kAll) {
    auto a = make_algebra(s);
    EXPECT_FALSE(cone_contains(*a, to_eigen(a->unit())));
    const auto frame = jordan_frame(a, cone_sample(a, 3).x);
    for (const auto& c : frame.idempotents) EXPECT_TRUE(cone_contains(*a, c));
  }
  EXPECT_THROW(make_cone_point(g3, to_eigen(g3->unit())), Error);
}

TEST(ConeSample, Properties) {
  for (auto s : kAll) {
    auto a = make_algebra(s);
    const auto flat = cone_sample(a, 7, 0.0);
    Rng rng(7);
    const double t = rng.uniform(0.5, 2.0);
    EXPECT_LT((flat.x - t * to_eigen(standard_idempotent(*a))).norm(), 1e-15);
    for (const auto& p : cone_samples(a, 11, 20)) {
      EXPECT_TRUE(cone_contains(*a, p.x, 1e-10)) << a->name();
      const double tr = a->trace(p.x);
      EXPECT_GE(tr, 0.5);
      EXPECT_LE(tr, 2.0);
      EXPECT_NEAR(p.r, tr / a->rho(), 1e-12);
      const Eigen::VectorXd c = p.x / tr;
      EXPECT_LT((a->product(c, c) - c).norm(), 1e-10);
      EXPECT_NEAR(a->trace(c), 1.0, 1e-12);
    }
    EXPECT_EQ(cone_sample(a, 5).x, cone_sample(a, 5).x);
  }
}

TEST(Lambda, Examples) {
  Rng rng(41);
  for (auto s : kAll) {
    auto a = make_algebra(s);
    const double rho = a->rho(), delta = a->delta();
    const auto p = cone_sample(a, 12);
    EXPECT_NEAR(lambda_weight(to_eigen(a->unit()), p), (rho / 2 - 1) * delta / 2 + rho * delta / 4, 1e-12);
    const Eigen::VectorXd u = random_vec(*a, rng), v = random_vec(*a, rng);
    EXPECT_NEAR(lambda_weight(2.0 * u - v, p), 2.0 * lambda_weight(u, p) - lambda_weight(v, p), 1e-12);
    const ConePoint p2{a, 2.0 * p.x, 2.0 * p.r};
    EXPECT_NEAR(lambda_weight(u, p2), lambda_weight(u, p), 1e-12);
    if (s.family == Family::gamma) EXPECT_NEAR(lambda_weight(u, p), (s.n - 1) / 2.0 * u(0), 1e-12);
    EXPECT_THROW(lambda_weight(u, ConePoint{a, 0.0 * p.x, 0.0}), Error);
  }
}

TEST(ProjectorIdentity, FiftyPointsEachFamily) {
  for (auto s : kAll) {
    auto a = make_algebra(s);
    double worst = 0.0;
    for (const auto& p : cone_samples(a, 13, 50)) worst = std::max(worst, projector_identity_residual(p));
    EXPECT_LT(worst, 1e-9) << a->name();
  }
}

TEST(ProjectorIdentity, FailsOffCone) {
  for (auto s : kAll) {
    auto a = make_algebra(s);
    const Eigen::VectorXd x = to_eigen(a->unit()) + cone_sample(a, 14).x;
    EXPECT_GT((projector_lhs(*a, x) - projector_rhs(*a, x)).cwiseAbs().maxCoeff(), 1e-3) << a->name();
  }
}

TEST(ProjectorIdentity, TraceForm) {
  // trace of the right side: r tr(L_x) - |x|^2, with tr(L_x) = (1 + (rho-1) delta/2) tr x on the cone
  for (auto s : kAll) {
    auto a = make_algebra(s);
    const auto p = cone_sample(a, 15);
    const double expect =
        p.r * (1 + (a->rho() - 1) * a->delta() / 2.0) * a->trace(p.x) - a->inner(p.x, p.x);
    EXPECT_NEAR(projector_lhs(*a, p.x).trace(), expect, 1e-9);
  }
}

TEST(ProjectorIdentity, HermTwoHandComputed) {
  auto a = make_algebra(Family::herm_r, 2);
  const Eigen::VectorXd x = to_eigen(standard_idempotent(*a));
  // r = 1/2; L_x has eigenvalues 1, 0, 1/2 on e11, e22, e12 and |x><x| gives 1/2 on x
  Eigen::EigenSolver<Eigen::MatrixXd> es(projector_rhs(*a, x));
  std::vector<double> ev;
  for (int i = 0; i < 3; ++i) ev.push_back(es.eigenvalues()(i).real());
  std::sort(ev.begin(), ev.end());
  EXPECT_NEAR(ev[0], 0.0, 1e-14);
  EXPECT_NEAR(ev[1], 0.0, 1e-14);
  EXPECT_NEAR(ev[2], 0.25, 1e-14);
  EXPECT_LT((projector_lhs(*a, x) - projector_rhs(*a, x)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Tangent, ProjectionProperties) {
  Rng rng(42);
  for (auto s : kAll) {
    auto a = make_algebra(s);
    const auto p = cone_sample(a, 16);
    const Eigen::MatrixXd proj = tangent_projector(p);
    EXPECT_LT((proj * proj - proj).cwiseAbs().maxCoeff(), 1e-10);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(proj);
    lu.setThreshold(1e-8);
    EXPECT_EQ(lu.rank(), 1 + (a->rho() - 1) * a->delta());
    for (int t = 0; t < 5; ++t) {
      const Eigen::VectorXd u = random_vec(*a, rng);
      const Eigen::VectorXd v = -a->product(u, p.x);
      EXPECT_LT((tangent_project(p, v).dir - v).norm(), 1e-10);
      // tangent vectors solve the linearised cone equation 2xv = tr(v) x + tr(x) v
      const Eigen::VectorXd w = tangent_project(p, random_vec(*a, rng)).dir;
      EXPECT_LT((2 * a->product(p.x, w) - a->trace(w) * p.x - a->trace(p.x) * w).norm(), 1e-9);
    }
    const auto frame = jordan_frame(a, p.x);
    if (a->rho() >= 3) {
      EXPECT_LT(tangent_project(p, frame.offdiag.at({1, 2, 0})).dir.norm(), 1e-9);
      EXPECT_LT(tangent_project(p, frame.idempotents[2]).dir.norm(), 1e-9);
    }
    EXPECT_LT(tangent_project(p, frame.idempotents[1]).dir.norm(), 1e-9);
  }
}

TEST(Metric, RadialRaysHaveUnitSpeed) {
  for (auto s : kAll) {
    auto a = make_algebra(s);
    const auto p = cone_sample(a, 17);
    const auto [r, slice] = iota(*a, p.x);
    EXPECT_NEAR(r, p.r, 1e-12);
    EXPECT_NEAR(a->inner(slice, slice), 2.0, 1e-12);
    EXPECT_TRUE(cone_contains(*a, slice, 1e-9));
    EXPECT_NEAR(a->trace(slice), std::sqrt(2.0 * a->rho()), 1e-12);
    EXPECT_LT((to_projective(*a, p.x) - slice).norm(), 1e-12);
    // x(t) = iota^{-1}(t, slice) is linear in t: x = t sqrt(rho/2) slice
    const Eigen::VectorXd xdot = std::sqrt(a->rho() / 2.0) * slice;
    EXPECT_NEAR(kepler_metric(*a, xdot), 1.0, 1e-12);
  }
}

TEST(Metric, IotaIsAnIsometry) {
  Rng rng(43);
  for (auto s : kAll) {
    auto a = make_algebra(s);
    const auto p = cone_sample(a, 18);
    Eigen::MatrixXd d = to_eigen(commutator(a->lmul(random_element(*a, rng)), a->lmul(random_element(*a, rng))));
    // a curve on the cone through x: rotate and rescale
    auto curve = [&](double t) -> Eigen::VectorXd { return std::exp(0.3 * t) * ((t * d).exp() * p.x); };
    const double h = 1e-5;
    const Eigen::VectorXd xdot = (curve(h) - curve(-h)) / (2 * h);
    const auto [rp, pp] = iota(*a, curve(h));
    const auto [rm, pm] = iota(*a, curve(-h));
    const double dr = (rp - rm) / (2 * h);
    const Eigen::VectorXd dp = (pp - pm) / (2 * h);
    const double product_metric = dr * dr + p.r * p.r * a->inner(dp, dp);
    EXPECT_NEAR(kepler_metric(*a, xdot), product_metric, 1e-7 * (1 + product_metric)) << a->name();
  }
}

TEST(SkewSymmetry, GammaMonteCarlo) {
  for (int n : {3, 4}) {
    auto a = make_algebra(Family::gamma, n);
    Eigen::VectorXd u = Eigen::VectorXd::Zero(n + 1);
    u(0) = 0.7;
    u(1) = -0.4;
    u(2) = 0.9;
    auto psi1 = [](const Eigen::VectorXd& x) { return std::exp(-x(0)) * (1 + x(1)); };
    auto psi2 = [](const Eigen::VectorXd& x) { return std::exp(-x(0)) * (x(0) - 0.5 * x(2) + x(1) * x(2)); };
    const auto with = skew_symmetry_mc(a, u, psi1, psi2, 200000, 44);
    EXPECT_LT(std::abs(with.mean), 5 * with.std_error) << n;
    EXPECT_LT(std::abs(with.mean), 0.02 * with.scale) << n;
    const auto without = skew_symmetry_mc(a, u, psi1, psi2, 200000, 44, false);
    EXPECT_GT(std::abs(without.mean), 10 * without.std_error) << n;
  }
  EXPECT_THROW(skew_symmetry_mc(make_algebra(Family::herm_r, 3), Eigen::VectorXd::Zero(6),
                                [](const Eigen::VectorXd&) { return 1.0; }, [](const Eigen::VectorXd&) { return 1.0; },
                                10, 1),
               Error);
}

TEST(ConePointJson, Fields) {
  auto a = make_algebra(Family::gamma, 2);
  const auto j = cone_point_json(cone_sample(a, 19));
  EXPECT_EQ(j["family"], "gamma");
  EXPECT_EQ(j["n"], 2);
  EXPECT_EQ(j["coords"].size(), 3u);
  EXPECT_GT(j["r"].get<double>(), 0.0);
}
