#include <gtest/gtest.h>

#include <cmath>
#include <nlohmann/json.hpp>

#include "jka/hidden_action.hpp"

using namespace jka;

namespace {

const std::vector<AlgebraSpec> kAll = {{Family::gamma, 2}, {Family::gamma, 3}, {Family::gamma, 4},
                                       {Family::herm_r, 3}, {Family::herm_c, 3}, {Family::herm_h, 3},
                                       {Family::herm_o, 3}};
const std::vector<AlgebraSpec> kSmall = {{Family::gamma, 2}, {Family::gamma, 3}, {Family::gamma, 4},
                                         {Family::herm_r, 3}};

std::vector<Eigen::VectorXd> points(const AlgebraPtr& a, int count, std::uint64_t seed = 5) {
  std::vector<Eigen::VectorXd> out;
  for (const auto& p : cone_samples(a, seed, count)) out.push_back(p.x * a->rho());
  return out;
}

// generic points of V, for checks that do not need the cone
Eigen::VectorXd generic_point(const Algebra& a, Rng& rng) {
  Eigen::VectorXd x = to_eigen(random_element(a, rng));
  x(0) = 1.5 + std::abs(x(0));
  return x;
}

// d/dt f(x + t v) at t = 0 by central differences along the unit direction
std::complex<double> directional(const WeightedFunction& f, const Eigen::VectorXd& x, const Eigen::VectorXd& v,
                                 double h = 1e-5) {
  const double n = v.norm();
  if (n == 0) return 0.0;
  const Eigen::VectorXd d = v / n;
  return n * (f.eval(x + h * d) - f.eval(x - h * d)) / (2 * h);
}

double rel(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) / (1 + std::abs(a) + std::abs(b)); }

}  // namespace

TEST(WeightedFunction, EvalExamples) {
  Eigen::VectorXd x(3);
  x << 1, 0.3, -0.2;
  EXPECT_NEAR(std::abs(WeightedFunction::exp_power(3, Exponent(-1), Exponent(0)).eval(x) - std::exp(-1.0)), 0, 1e-15);
  // r^{1/2} x^0 at r = 2
  const auto f = WeightedFunction::exp_power(3, Exponent(0), Exponent(1, 2)) * WeightedFunction::coordinate(3, 0);
  x << 2, 0, 0;
  EXPECT_NEAR(f.eval(x).real(), std::pow(2.0, 1.5), 1e-14);
  EXPECT_EQ(f.size(), 1u);
  x << 0, 1, 1;
  EXPECT_THROW(WeightedFunction::exp_power(3, Exponent(0), Exponent(-1)).eval(x), Error);
  EXPECT_NO_THROW(WeightedFunction::coordinate(3, 1).eval(x));
  EXPECT_THROW(f.eval(Eigen::VectorXd::Ones(4)), Error);
}

TEST(WeightedFunction, ArithmeticIsExactAndLinear) {
  auto a = make_algebra(Family::herm_r, 3);
  const auto tests = mixed_test_set(*a, 4, 9);
  Rng rng(2);
  const ComplexRational c(rat(3, 7), rat(-1, 2));
  for (int i = 0; i < 10; ++i) {
    const auto x = generic_point(*a, rng);
    const auto& f = tests[i % 4];
    const auto& g = tests[(i + 1) % 4];
    EXPECT_LT(rel((f + g).eval(x), f.eval(x) + g.eval(x)), 1e-13);
    EXPECT_LT(rel((f * g).eval(x), f.eval(x) * g.eval(x)), 1e-13);
    EXPECT_LT(rel((c * f).eval(x), c.to_complex() * f.eval(x)), 1e-13);
  }
  const auto& f = tests[0];
  EXPECT_TRUE((f - f).is_zero());
  EXPECT_EQ(f + WeightedFunction(a->dim()), f);
  // merged terms: x^1 r^{-1} r = x^1
  const auto one = WeightedFunction::coordinate(a->dim(), 1).times_rpow(Exponent(-1)) * WeightedFunction::coordinate(a->dim(), 0);
  EXPECT_EQ(one, WeightedFunction::coordinate(a->dim(), 1));
  // multiplying by <v|x> raises the degree by one
  const auto lin = WeightedFunction::linear(random_element(*a, rng));
  const auto quad = default_test_set(*a)[7];
  EXPECT_EQ((lin * quad).degree(), quad.degree() + 1);
}

TEST(WeightedFunction, PartialsMatchFiniteDifferences) {
  auto a = make_algebra(Family::gamma, 3);
  // d_alpha r = <e|e_alpha>
  EXPECT_EQ(WeightedFunction::coordinate(4, 0).partial(0), WeightedFunction::constant(4, 1));
  for (int al = 1; al < 4; ++al) EXPECT_TRUE(WeightedFunction::coordinate(4, 0).partial(al).is_zero());
  Rng rng(4);
  for (const auto& f : mixed_test_set(*a, 3, 1)) {
    for (int i = 0; i < 5; ++i) {
      const auto x = generic_point(*a, rng);
      for (int al = 0; al < 4; ++al) {
        Eigen::VectorXd dir = Eigen::VectorXd::Zero(4);
        dir(al) = 1;
        EXPECT_LT(rel(f.partial(al).eval(x), directional(f, x, dir)), 1e-8);
      }
    }
  }
}

TEST(Primitives, HatFieldsMatchFiniteDifferences) {
  for (auto s : kAll) {
    auto a = make_algebra(s);
    if (a->dim() > 16) continue;
    HiddenAction h(a);
    Rng rng(11);
    const auto f = mixed_test_set(*a, 1, 3)[0];
    for (int i = 0; i < 3; ++i) {
      const auto u = random_element(*a, rng), v = random_element(*a, rng);
      const auto x = generic_point(*a, rng);
      const Eigen::VectorXd xe = x;
      // hatL_u = -<ux|d>, hatX_u = -<u|d>, hatS_uv = -<S_uv x|d>, hatY_v = -<{xvx}|d>
      const Eigen::VectorXd ux = to_eigen(a->lmul(u)) * xe;
      const Eigen::VectorXd sx = to_eigen(a->s_map(u, v)) * xe;
      Eigen::MatrixXd Lx = Eigen::MatrixXd::Zero(a->dim(), a->dim());
      for (int b = 0; b < a->dim(); ++b) Lx += xe(b) * to_eigen(a->lmul_basis(b));
      const Eigen::VectorXd x2 = Lx * xe;
      Eigen::MatrixXd Lx2 = Eigen::MatrixXd::Zero(a->dim(), a->dim());
      for (int b = 0; b < a->dim(); ++b) Lx2 += x2(b) * to_eigen(a->lmul_basis(b));
      const Eigen::VectorXd ve = to_eigen(v);
      const Eigen::VectorXd xvx = 2 * Lx * (Lx * ve) - Lx2 * ve;
      EXPECT_LT(rel(h.hatL(u).apply(f).eval(x), -directional(f, x, ux)), 1e-7) << a->name();
      EXPECT_LT(rel(h.hatL(a->unit()).apply(f).eval(x), -directional(f, x, xe)), 1e-7) << a->name();
      EXPECT_LT(rel(h.hatX(u).apply(f).eval(x), -directional(f, x, to_eigen(u))), 1e-7) << a->name();
      EXPECT_LT(rel(h.hatS(u, v).apply(f).eval(x), -directional(f, x, sx)), 1e-7) << a->name();
      EXPECT_LT(rel(h.hatY(v).apply(f).eval(x), -directional(f, x, xvx)), 1e-7) << a->name();
    }
  }
}

TEST(Operators, Examples) {
  for (auto s : kSmall) {
    auto a = make_algebra(s);
    HiddenAction h(a);
    Rng rng(21);
    const auto e = a->unit();
    const auto tests = mixed_test_set(*a, 10, 4);
    const auto pts = points(a, 10);
    const auto u = random_element(*a, rng), v = random_element(*a, rng);
    EXPECT_LT(identity_residual(h.tildeS(u, e), h.tildeL(u), tests, pts), 1e-10);
    EXPECT_LT(identity_residual(h.tildeS(e, u), h.tildeL(u), tests, pts), 1e-10);
    EXPECT_LT(identity_residual(h.hatS(u, e), h.hatL(u), tests, pts), 1e-10);
    EXPECT_LT(identity_residual(h.hatS(e, u), h.hatL(u), tests, pts), 1e-10);
    const auto r = WeightedFunction::coordinate(a->dim(), 0);
    const ComplexRational mi(0, -1);
    for (const auto& f : tests) {
      EXPECT_EQ(h.tildeY(e).apply(f), mi * (r * f));
      EXPECT_EQ(anticommutator(h.tildeY(e), h.tildeY(e)).apply(f), ComplexRational(-2) * (r * r * f));
      EXPECT_TRUE(commutator(h.hatX(u), h.hatX(v)).apply(f).is_zero());
      EXPECT_TRUE(commutator(h.tildeL(u), h.tildeL(u)).apply(f).is_zero());
    }
    // L_e = identity, so hatL_e is the Euler field with a minus sign
    EXPECT_EQ(h.hatL(e).apply(r), ComplexRational(-1) * r);
  }
}

TEST(Operators, LinearityAndBuildByName) {
  auto a = make_algebra(Family::gamma, 3);
  HiddenAction h(a);
  Rng rng(3);
  const auto u = random_element(*a, rng), v = random_element(*a, rng);
  const auto t = mixed_test_set(*a, 2, 8);
  const ComplexRational c1(rat(2, 3), rat(1)), c2(rat(-5, 4));
  for (const auto& op : {h.tildeX(u), h.X(), h.lenz(v), h.tildeS(u, v), h.H0tilde(), h.hamiltonian()})
    EXPECT_EQ(op.apply(c1 * t[0] + c2 * t[1]), c1 * op.apply(t[0]) + c2 * op.apply(t[1]));

  const auto pts = points(a, 5);
  const auto tests = default_test_set(*a);
  const std::vector<std::pair<std::string, std::vector<QVector>>> kinds = {
      {"hatL", {u}},   {"tildeL", {u}},  {"X", {}},         {"Delta", {}},    {"tildeS", {u, v}}, {"tildeX", {u}},
      {"tildeY", {u}}, {"hatS", {u, v}}, {"hatX", {u}},     {"hatY", {u}},    {"H0tilde", {}},    {"h", {}},
      {"lenz", {u}},   {"Luv", {u, v}}};
  for (const auto& [k, p] : kinds) {
    const auto op = h.build(k, p);
    EXPECT_FALSE(op.expr().empty());
    EXPECT_EQ(identity_residual(op, op, tests, pts), 0.0);
  }
  EXPECT_EQ(identity_residual(h.build("tildeS", {u, v}), h.tildeS(u, v), tests, pts), 0.0);
  EXPECT_THROW(h.build("nope", {}), Error);
  EXPECT_THROW(h.build("hatL", {}), Error);
  EXPECT_THROW(h.build("hatL", {QVector(3)}), AlgebraMismatch);
  EXPECT_THROW(identity_residual(h.X(), h.X(), std::vector<WeightedFunction>{}, pts), Error);
  EXPECT_THROW(identity_residual(h.X(), h.X(), tests, std::vector<Eigen::VectorXd>{}), Error);
}

TEST(Constants, TableExact) {
  const std::vector<std::pair<Family, std::vector<int>>> table = {{Family::gamma, {2, 3, 4, 5, 6}},
                                                                  {Family::herm_r, {3, 4, 5}},
                                                                  {Family::herm_c, {3, 4}},
                                                                  {Family::herm_h, {3}},
                                                                  {Family::herm_o, {3}}};
  for (const auto& [f, ns] : table)
    for (int n : ns) {
      auto a = make_algebra(f, n);
      const auto k = hidden_constants(*a);
      const auto [A, B] = constants_table_entry(f, n);
      EXPECT_EQ(k.A, A) << a->name();
      EXPECT_EQ(k.B, B) << a->name();
      EXPECT_EQ(k.A * inverse_A_from_projector(*a), Rational(1)) << a->name();
    }
  EXPECT_EQ(hidden_constants(*make_algebra(Family::herm_o, 3)).B, Rational(26));
  EXPECT_EQ(hidden_constants(*make_algebra(Family::gamma, 2)).a, rat(1, 2));
  EXPECT_EQ(hidden_constants(*make_algebra(Family::herm_r, 3)).kappa, rat(1, 4));
}

TEST(Constants, SquareSumOfMultiplications) {
  for (auto s : kAll) {
    auto a = make_algebra(s);
    const QMatrix d = lmul_square_sum_defect(*a);
    for (std::size_t i = 0; i < d.rows(); ++i)
      for (std::size_t j = 0; j < d.cols(); ++j) ASSERT_EQ(sgn(d(i, j)), 0) << a->name();
  }
}

TEST(Lemma, XAgainstLinearFunctions) {
  for (auto s : std::vector<AlgebraSpec>{{Family::gamma, 2}, {Family::gamma, 3}, {Family::gamma, 4},
                                         {Family::herm_r, 3}, {Family::herm_c, 3}}) {
    auto a = make_algebra(s);
    Rng rng(6);
    const auto u = random_element(*a, rng);
    const auto tests = mixed_test_set(*a, 3, 2);
    const auto pts = points(a, 10);
    auto check = [&](const HiddenConstants& k) {
      HiddenAction h(a, k);
      return identity_residual(commutator(h.X(), h.multiply(h.inner_x(u), "<u|x>")), ComplexRational(2) * h.tildeL(u),
                               tests, pts);
    };
    auto k = hidden_constants(*a);
    EXPECT_LT(check(k), 1e-8) << a->name();
    k.A += rat(1, 1000);
    EXPECT_GT(check(k), 1e-4) << a->name();
  }
}

TEST(Suites, SmallAlgebrasPass) {
  for (auto s : kSmall) {
    auto a = make_algebra(s);
    for (const auto& suite : suite_names()) {
      const auto rep = run_identity_suite(a, suite);
      EXPECT_TRUE(rep.pass()) << a->name() << " " << suite << " " << rep.max_residual();
      for (const auto& c : rep.checks) EXPECT_LT(c.max_residual, 1e-8) << a->name() << " " << c.id;
    }
  }
}

TEST(Suites, ComplexHermitianCheapSuites) {
  auto a = make_algebra(Family::herm_c, 3);
  for (const std::string suite : {"lemma", "appendixB", "vector_fields"})
    EXPECT_TRUE(run_identity_suite(a, suite).pass()) << suite;
}

TEST(Suites, QuaternionSmoke) {
  auto a = make_algebra(Family::herm_h, 3);
  SuiteOptions o;
  o.points = 5;
  o.mixed = 1;
  o.max_degree = 1;
  for (const std::string suite : {"lemma", "appendixB", "lenz"}) EXPECT_TRUE(run_identity_suite(a, suite, o).pass()) << suite;
}

TEST(Suites, PerturbedConstantsFail) {
  for (auto s : std::vector<AlgebraSpec>{{Family::gamma, 3}, {Family::herm_r, 3}}) {
    auto a = make_algebra(s);
    for (int which = 0; which < 2; ++which) {
      SuiteOptions o;
      o.points = 10;
      auto k = hidden_constants(*a);
      (which == 0 ? k.A : k.B) += rat(1, 1000);
      o.constants = k;
      const auto rep = run_identity_suite(a, "tkk_hidden", o);
      EXPECT_FALSE(rep.pass()) << a->name() << " " << which;
      EXPECT_GT(rep.max_residual(), 1e-6) << a->name() << " " << which;
    }
  }
}

TEST(AppendixB, ClosedFormResidual) {
  auto a = make_algebra(Family::herm_r, 3);
  // with B -> B + eps the obstruction [[L~_u, X], X](1) is rho delta eps <u|x>/r^3, here 3 eps <u|x>/r^3
  for (const Rational eps : {Rational(1), rat(1, 1000)}) {
    SuiteOptions o;
    o.epsilon = eps;
    EXPECT_TRUE(run_identity_suite(a, "appendixB", o).pass());
  }
  auto k = hidden_constants(*a);
  k.B += 1;
  HiddenAction h(a, k);
  Rng rng(2);
  QVector u = random_element(*a, rng);
  u[0] = 0;
  const auto one = WeightedFunction::constant(a->dim(), 1);
  const auto obstruction = commutator(commutator(h.tildeL(u), h.X()), h.X()).apply(one);
  for (const auto& x : points(a, 20)) {
    const double ux = to_eigen(u).cwiseProduct(a->weights_d()).dot(x);
    EXPECT_LT(std::abs(obstruction.eval(x) - 3 * ux / std::pow(x(0), 3)), 1e-8);
  }
  // at the true B there is no obstruction
  HiddenAction h0(a);
  EXPECT_TRUE(commutator(commutator(h0.tildeL(u), h0.X()), h0.X()).apply(one).is_zero());
}

TEST(Suites, OffConeNegativeControl) {
  auto a = make_algebra(Family::herm_r, 3);
  SuiteOptions o;
  o.points = 5;
  o.off_cone = true;
  const auto rep = run_identity_suite(a, "tkk_hidden", o);
  EXPECT_FALSE(rep.pass());
  EXPECT_GT(rep.max_residual(), 1e-3);
  // relations between multiplication operators hold everywhere
  for (const auto& c : rep.checks)
    if (c.id == "[Y_u,Y_v]=0") EXPECT_EQ(c.max_residual, 0.0);
}

TEST(Suites, ReportJsonIsDeterministic) {
  auto a = make_algebra(Family::gamma, 2);
  SuiteOptions o;
  o.seed = 7;
  const auto j1 = suite_report_json(run_identity_suite(a, "lenz", o));
  const auto j2 = suite_report_json(run_identity_suite(a, "lenz", o));
  EXPECT_EQ(j1.dump(), j2.dump());
  EXPECT_EQ(j1["suite"], "lenz");
  EXPECT_TRUE(j1["pass"].get<bool>());
  ASSERT_FALSE(j1["identities"].empty());
  for (const auto& c : j1["identities"]) {
    EXPECT_TRUE(c.contains("identity_id"));
    EXPECT_TRUE(c.contains("anchor"));
    EXPECT_TRUE(c.contains("max_residual"));
  }
  EXPECT_THROW(run_identity_suite(a, "nope"), Error);
  EXPECT_THROW(run_identity_suite(make_algebra(Family::herm_r, 1), "tkk_hidden"), Error);
}
