#include "jka/hidden_action.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <nlohmann/json.hpp>
#include <sstream>

#include "jka/tkk.hpp"

namespace jka {

namespace {

Exponent to_exponent(const Rational& q) {
  return Exponent(q.get_num().get_si(), q.get_den().get_si());
}

QVector scaled(QVector v, const Rational& c) {
  for (auto& x : v) x *= c;
  return v;
}

QVector sum(QVector a, const QVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

const ComplexRational kI = ComplexRational::i();

}  // namespace

HiddenConstants hidden_constants(const Algebra& alg) {
  const Rational rho(alg.rho()), delta(alg.delta());
  HiddenConstants c;
  c.A = (Rational(2) / (rho * rho)) / (1 + delta * (rho - 2) / 4);
  c.B = delta / 8 * (rho - 2) * ((3 * rho / 2 - 1) * delta - 2);
  c.kappa = (rho / 2 - 1) * delta / 2;
  c.a = rho * delta / 4 * (1 + (rho - 2) * delta / 4);
  c.A.canonicalize();
  c.B.canonicalize();
  c.kappa.canonicalize();
  c.a.canonicalize();
  return c;
}

Rational inverse_A_from_projector(const Algebra& alg) {
  const Rational rho(alg.rho()), delta(alg.delta());
  Rational v = rho * rho / 2 * (1 + delta / 4 * (rho - 2));
  v.canonicalize();
  return v;
}

std::pair<Rational, Rational> constants_table_entry(Family f, int n) {
  const long m = n;
  switch (f) {
    case Family::gamma: return {rat(1, 2), rat(0)};
    case Family::herm_r: return {rat(8, m * m * (m + 2)), rat(3 * (m - 2) * (m - 2), 16)};
    case Family::herm_c: return {rat(4, m * m * m), rat((m - 2) * (3 * m - 4), 4)};
    case Family::herm_h: return {rat(2, m * m * (m - 1)), rat(3 * (m - 1) * (m - 2))};
    case Family::herm_o: return {rat(2, 27), rat(26)};
  }
  throw Error("constants_table_entry: unknown family");
}

QMatrix lmul_square_sum_defect(const Algebra& alg) {
  const int dim = alg.dim();
  QMatrix s(dim, dim);
  for (int a = 0; a < dim; ++a) {
    const QMatrix& l = alg.lmul_basis(a);
    s += (l * l) * (Rational(1) / alg.weight(a));
  }
  const Rational rho(alg.rho()), delta(alg.delta());
  s -= QMatrix::identity(dim) * (rho * (1 + (rho - 2) * delta / 4));
  // |e><e| sends z to <e|z> e = z^0 e
  s(0, 0) -= rho * rho * delta / 4;
  return s;
}

// ---- operators ----

HiddenAction::HiddenAction(AlgebraPtr alg) : HiddenAction(alg, hidden_constants(*alg)) {}

HiddenAction::HiddenAction(AlgebraPtr alg, HiddenConstants constants) : alg_(std::move(alg)), c_(std::move(constants)) {
  const Algebra& a = *alg_;
  const int dim = a.dim();
  // Delta = A sum_{a != b} [hatL_a, hatL_b]^2 / (w_a w_b) with every square
  // xi_M^2 = sum (Mx)^b (Mx)^g d_b d_g + xi_{M^2}, collected once into
  // quadratic coefficients
  SecondOrderOperator op(dim);
  QMatrix first(dim, dim);
  std::vector<WeightedFunction> rows(dim);
  QVector row(dim);
  for (int i = 1; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      const QMatrix m = commutator(a.lmul_basis(j), a.lmul_basis(i));
      const Rational w = 2 * c_.A / (a.weight(i) * a.weight(j));
      for (int b = 0; b < dim; ++b) {
        for (int g = 0; g < dim; ++g) row[g] = m(b, g);
        rows[b] = WeightedFunction::linear(row);
      }
      for (int b = 0; b < dim; ++b) {
        if (rows[b].is_zero()) continue;
        op.coeff(b, b) += ComplexRational(w) * (rows[b] * rows[b]);
        for (int g = b + 1; g < dim; ++g)
          if (!rows[g].is_zero()) op.coeff(b, g) += ComplexRational(2 * w) * (rows[b] * rows[g]);
      }
      first += (m * m) * w;
    }
  op.first = VectorField::linear(first);
  delta_ = ConeOperator::second_order(std::move(op), "Delta").named("Delta");

  const auto le = hatL(a.unit());
  const Rational lin = Rational(alg_->rho() - 1) * alg_->delta() - 1;
  radial_ = ConeOperator::lincomb({{ComplexRational(1), le * le}, {ComplexRational(-lin), le}}).named("R");
  const auto inv_r = multiply(WeightedFunction::exp_power(dim, Exponent(0), Exponent(-1)), "1/r");
  const auto inner =
      ConeOperator::lincomb({{ComplexRational(1), radial_}, {ComplexRational(1), delta_}, {ComplexRational(c_.B), constant(1)}});
  x_ = ConeOperator::lincomb({{ComplexRational(-1), inv_r * inner}}).named("X");
}

std::string HiddenAction::vec(const QVector& u) const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < u.size(); ++i) os << (i ? "," : "") << u[i];
  os << ")";
  return os.str();
}

WeightedFunction HiddenAction::inner_x(const QVector& u) const {
  QVector c(u.size());
  for (int a = 0; a < dim(); ++a) c[a] = u[a] * alg_->weight(a);
  return WeightedFunction::linear(c);
}

WeightedFunction HiddenAction::lambda(const QVector& u) const {
  const Rational rho(alg_->rho()), delta(alg_->delta());
  WeightedFunction f = ComplexRational(c_.kappa) * inner_x(u).times_rpow(Exponent(-1));
  f += WeightedFunction::constant(dim(), ComplexRational(rho * delta / 4 * u[0]));
  return f;
}

ConeOperator HiddenAction::multiply(const WeightedFunction& g, const std::string& label) const {
  return ConeOperator::multiply(g, label);
}

ConeOperator HiddenAction::constant(const ComplexRational& c) const {
  std::ostringstream os;
  os << c;
  return ConeOperator::multiply(WeightedFunction::constant(dim(), c), os.str());
}

ConeOperator HiddenAction::hatL(const QVector& u) const {
  return ConeOperator::vector_field(VectorField::linear(-alg_->lmul(u)), "hatL" + vec(u));
}

ConeOperator HiddenAction::tildeL(const QVector& u) const {
  return (hatL(u) - multiply(lambda(u), "lambda" + vec(u))).named("tildeL" + vec(u));
}

ConeOperator HiddenAction::Luv(const QVector& u, const QVector& v) const {
  // [hatL_u, hatL_v] is the linear field of [L_v, L_u]
  return ConeOperator::vector_field(VectorField::linear(commutator(alg_->lmul(v), alg_->lmul(u))),
                                    "L" + vec(u) + vec(v));
}

ConeOperator HiddenAction::tildeS(const QVector& u, const QVector& v) const {
  return (commutator(tildeL(u), tildeL(v)) + tildeL(alg_->product(u, v))).named("tildeS" + vec(u) + vec(v));
}

ConeOperator HiddenAction::tildeX(const QVector& u) const {
  return ConeOperator::lincomb({{-kI, commutator(tildeL(u), x_)}}).named("tildeX" + vec(u));
}

ConeOperator HiddenAction::tildeY(const QVector& v) const {
  return multiply(-kI * inner_x(v), "tildeY" + vec(v));
}

ConeOperator HiddenAction::hatS(const QVector& u, const QVector& v) const {
  return ConeOperator::vector_field(VectorField::linear(-alg_->s_map(u, v)), "hatS" + vec(u) + vec(v));
}

ConeOperator HiddenAction::hatX(const QVector& u) const {
  return ConeOperator::vector_field(VectorField::constant(scaled(u, Rational(-1))), "hatX" + vec(u));
}

ConeOperator HiddenAction::hatY(const QVector& v) const {
  // {x v x}^beta = sum_{g,d} x^g x^d {e_g v e_d}^beta
  const int n = dim();
  VectorField field;
  field.components.assign(n, WeightedFunction(n));
  for (int g = 0; g < n; ++g)
    for (int d = g; d < n; ++d) {
      const QVector t = alg_->triple(alg_->basis(g), v, alg_->basis(d));
      const WeightedFunction mono = WeightedFunction::coordinate(n, g) * WeightedFunction::coordinate(n, d);
      const Rational mult = g == d ? Rational(-1) : Rational(-2);
      for (int b = 0; b < n; ++b)
        if (sgn(t[b]) != 0) field.components[b] += ComplexRational(mult * t[b]) * mono;
    }
  return ConeOperator::vector_field(std::move(field), "hatY" + vec(v));
}

ConeOperator HiddenAction::H0tilde() const {
  const QVector e = alg_->unit();
  return ConeOperator::lincomb({{ComplexRational(0, rat(-1, 2)), tildeX(e) + tildeY(e)}}).named("H0tilde");
}

ConeOperator HiddenAction::hamiltonian() const {
  const auto inv_r = multiply(WeightedFunction::exp_power(dim(), Exponent(0), Exponent(-1)), "1/r");
  const auto inner =
      ConeOperator::lincomb({{ComplexRational(0, rat(1, 2)), tildeX(alg_->unit())}, {ComplexRational(-1), constant(1)}});
  return (inv_r * inner).named("h");
}

ConeOperator HiddenAction::lenz(const QVector& u) const {
  return ConeOperator::lincomb({{ComplexRational(0, rat(1, 2)), tildeX(u)},
                                {ComplexRational(-1), multiply(inner_x(u), "<u|x>") * hamiltonian()}})
      .named("A" + vec(u));
}

ConeOperator HiddenAction::build(const std::string& kind, const std::vector<QVector>& params) const {
  auto need = [&](std::size_t n) {
    if (params.size() != n)
      throw Error("build_operator: " + kind + " takes " + std::to_string(n) + " vector parameter(s)");
    for (const auto& p : params)
      if (static_cast<int>(p.size()) != dim()) throw AlgebraMismatch();
  };
  if (kind == "hatL") return need(1), hatL(params[0]);
  if (kind == "tildeL") return need(1), tildeL(params[0]);
  if (kind == "X") return need(0), X();
  if (kind == "Delta") return need(0), delta();
  if (kind == "tildeS") return need(2), tildeS(params[0], params[1]);
  if (kind == "tildeX") return need(1), tildeX(params[0]);
  if (kind == "tildeY") return need(1), tildeY(params[0]);
  if (kind == "hatS") return need(2), hatS(params[0], params[1]);
  if (kind == "hatX") return need(1), hatX(params[0]);
  if (kind == "hatY") return need(1), hatY(params[0]);
  if (kind == "H0tilde") return need(0), H0tilde();
  if (kind == "h") return need(0), hamiltonian();
  if (kind == "lenz") return need(1), lenz(params[0]);
  if (kind == "Luv") return need(2), Luv(params[0], params[1]);
  throw Error("build_operator: unknown operator kind '" + kind + "'");
}

// ---- residuals ----

double identity_residual(const ConeOperator& lhs, const ConeOperator& rhs, const std::vector<WeightedFunction>& testset,
                         const std::vector<Eigen::VectorXd>& points) {
  if (testset.empty()) throw Error("identity_residual: empty test set");
  if (points.empty()) throw Error("identity_residual: no points");
  double worst = 0.0;
  for (const auto& f : testset) {
    const WeightedFunction l = lhs.apply(f), r = rhs.apply(f);
    const WeightedFunction d = l - r;
    for (const auto& x : points) {
      const double res = std::abs(d.eval(x)) / (1.0 + std::abs(l.eval(x)) + std::abs(r.eval(x)));
      worst = std::max(worst, res);
    }
  }
  return worst;
}

double identity_residual(const ConeOperator& lhs, const ConeOperator& rhs, const std::vector<WeightedFunction>& testset,
                         const std::vector<ConePoint>& points) {
  std::vector<Eigen::VectorXd> xs;
  for (const auto& p : points) xs.push_back(p.x);
  return identity_residual(lhs, rhs, testset, xs);
}

std::vector<WeightedFunction> default_test_set(const Algebra& alg, int max_degree) {
  if (max_degree < 1 || max_degree > 2) throw Error("default_test_set: degree must be 1 or 2");
  const int dim = alg.dim();
  const Exponent kappa = to_exponent(hidden_constants(alg).kappa);
  std::vector<WeightedFunction> out;
  auto push = [&](const WeightedFunction& f) {
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  };
  std::vector<int> m(dim, 0);
  for (int s = 0; s < 2; ++s) {
    const Exponent shift = -kappa - Exponent(s);
    const int degree = max_degree - s;
    push(WeightedFunction::monomial(dim, 1, Exponent(-1), shift, m));
    for (int a = 0; a < dim && degree > 0; ++a) {
      m.assign(dim, 0);
      ++m[a];
      push(WeightedFunction::monomial(dim, 1, Exponent(-1), shift, m));
      if (degree < 2) continue;
      for (int b = a; b < dim; ++b) {
        ++m[b];
        push(WeightedFunction::monomial(dim, 1, Exponent(-1), shift, m));
        --m[b];
      }
    }
    m.assign(dim, 0);
  }
  return out;
}

std::vector<WeightedFunction> mixed_test_set(const Algebra& alg, int count, std::uint64_t seed, int max_degree) {
  const auto base = default_test_set(alg, max_degree);
  Rng rng(seed);
  std::vector<WeightedFunction> out;
  for (int i = 0; i < count; ++i) {
    WeightedFunction f(alg.dim());
    for (const auto& b : base) f += ComplexRational(rng.rational(3, 3)) * b;
    out.push_back(f);
  }
  return out;
}

bool SuiteReport::pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

double SuiteReport::max_residual() const {
  double m = 0.0;
  for (const auto& c : checks) m = std::max(m, c.max_residual);
  return m;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"tkk_hidden", "vector_fields", "quadratic", "lenz", "appendixB", "lemma"};
  return names;
}

namespace {

struct SuiteContext {
  const HiddenAction& h;
  std::vector<WeightedFunction> tests;
  std::vector<Eigen::VectorXd> points;
  Rng rng;
  double tol;
  SuiteReport& report;

  void check(const std::string& id, const std::string& anchor, const ConeOperator& lhs, const ConeOperator& rhs,
             const std::vector<WeightedFunction>* on = nullptr) {
    const double r = identity_residual(lhs, rhs, on ? *on : tests, points);
    auto it = std::find_if(report.checks.begin(), report.checks.end(), [&](const auto& c) { return c.id == id; });
    if (it == report.checks.end()) {
      report.checks.push_back({id, anchor, r, r < tol});
    } else {
      it->max_residual = std::max(it->max_residual, r);
      it->pass = it->max_residual < tol;
    }
  }

  QVector random() { return random_element(h.algebra(), rng); }
  QVector random_traceless() {
    QVector u = random();
    u[0] = 0;
    return u;
  }
};

// sum over an orthonormal basis: sum_a f(e_a) g(e_a) / w_a
ConeOperator basis_sum(const HiddenAction& h, int from, const std::function<ConeOperator(const QVector&)>& term) {
  const Algebra& a = h.algebra();
  std::vector<std::pair<ComplexRational, ConeOperator>> parts;
  for (int i = from; i < a.dim(); ++i) parts.emplace_back(ComplexRational(Rational(1) / a.weight(i)), term(a.basis(i)));
  return ConeOperator::lincomb(parts);
}

void tkk_relations(SuiteContext& c, bool hat) {
  const HiddenAction& h = c.h;
  const Algebra& a = h.algebra();
  auto S = [&](const QVector& u, const QVector& v) { return hat ? h.hatS(u, v) : h.tildeS(u, v); };
  auto Xo = [&](const QVector& u) { return hat ? h.hatX(u) : h.tildeX(u); };
  auto Yo = [&](const QVector& u) { return hat ? h.hatY(u) : h.tildeY(u); };
  const auto zero = ConeOperator::zero(h.dim());
  const auto u = c.random(), v = c.random(), z = c.random(), w = c.random();
  c.check("[X_u,X_v]=0", "[X_u, X_v] = 0", commutator(Xo(u), Xo(v)), zero);
  c.check("[Y_u,Y_v]=0", "[Y_u, Y_v] = 0", commutator(Yo(u), Yo(v)), zero);
  c.check("[X_u,Y_v]=-2S_uv", "[X_u, Y_v] = -2 S_uv", commutator(Xo(u), Yo(v)), ComplexRational(-2) * S(u, v));
  c.check("[S_uv,X_z]=X_{uvz}", "[S_uv, X_z] = X_{uvz}", commutator(S(u, v), Xo(z)), Xo(a.triple(u, v, z)));
  c.check("[S_uv,Y_z]=-Y_{vuz}", "[S_uv, Y_z] = -Y_{vuz}", commutator(S(u, v), Yo(z)),
          ComplexRational(-1) * Yo(a.triple(v, u, z)));
  c.check("[S_uv,S_zw]", "[S_uv, S_zw] = S_{{uvz}w} - S_{z{vuw}}", commutator(S(u, v), S(z, w)),
          S(a.triple(u, v, z), w) - S(z, a.triple(v, u, w)));
}

void quadratic_relations(SuiteContext& c) {
  const HiddenAction& h = c.h;
  const Algebra& a = h.algebra();
  const auto e = a.unit();
  const Rational rho(a.rho()), delta(a.delta());
  const auto& k = h.constants();
  const auto Le = h.tildeL(e), Xe = h.tildeX(e), Ye = h.tildeY(e);
  const auto u = c.random();
  auto cst = [&](const Rational& q) { return h.constant(ComplexRational(q)); };

  const auto sumL2 = basis_sum(h, 0, [&](const QVector& b) { return h.tildeL(b) * h.tildeL(b); });
  c.check("primary", "(2/rho) sum L~_a^2 - L~_e^2 - (1/2){X~_e, Y~_e} = -a",
          ConeOperator::lincomb({{ComplexRational(2 / rho), sumL2},
                                 {ComplexRational(-1), Le * Le},
                                 {ComplexRational(rat(-1, 2)), anticommutator(Xe, Ye)}}),
          cst(-k.a));
  c.check("sum{X_a,L_a}", "sum {X~_a, L~_a} = rho {X~_e, L~_e}",
          basis_sum(h, 0, [&](const QVector& b) { return anticommutator(h.tildeX(b), h.tildeL(b)); }),
          ComplexRational(rho) * anticommutator(Xe, Le));
  c.check("sum{Y_a,L_a}", "sum {Y~_a, L~_a} = rho {Y~_e, L~_e}",
          basis_sum(h, 0, [&](const QVector& b) { return anticommutator(h.tildeY(b), h.tildeL(b)); }),
          ComplexRational(rho) * anticommutator(Ye, Le));
  c.check("sumX_a^2", "sum X~_a^2 = rho X~_e^2", basis_sum(h, 0, [&](const QVector& b) { return h.tildeX(b) * h.tildeX(b); }),
          ComplexRational(rho) * (Xe * Xe));
  c.check("sumY_a^2", "sum Y~_a^2 = rho Y~_e^2", basis_sum(h, 0, [&](const QVector& b) { return h.tildeY(b) * h.tildeY(b); }),
          ComplexRational(rho) * (Ye * Ye));
  c.check("sum{X_a,Y_a}", "(1/2) sum {X~_a, Y~_a} = rho (L~_e^2 + a)",
          ComplexRational(rat(1, 2)) * basis_sum(h, 0, [&](const QVector& b) { return anticommutator(h.tildeX(b), h.tildeY(b)); }),
          ComplexRational(rho) * (Le * Le + cst(k.a)));
  const auto Lu = h.tildeL(u), Xu = h.tildeX(u), Yu = h.tildeY(u);
  auto Lau = [&](const QVector& b) { return commutator(h.tildeL(b), h.tildeL(u)); };
  c.check("sum{L_au,L_a}", "(2/rho) sum_{a>0} {L~_{a,u}, L~_a} = (1/2)(-{X~_u, Y~_e} + {X~_e, Y~_u})",
          ComplexRational(2 / rho) * basis_sum(h, 1, [&](const QVector& b) { return anticommutator(Lau(b), h.tildeL(b)); }),
          ComplexRational(rat(1, 2)) * (anticommutator(Xe, Yu) - anticommutator(Xu, Ye)));
  c.check("sum{L_au,X_a}", "(2/rho) sum_{a>0} {L~_{a,u}, X~_a} = -{X~_u, L~_e} + {L~_u, X~_e}",
          ComplexRational(2 / rho) * basis_sum(h, 1, [&](const QVector& b) { return anticommutator(Lau(b), h.tildeX(b)); }),
          anticommutator(Lu, Xe) - anticommutator(Xu, Le));
  c.check("sum{L_au,Y_a}", "(2/rho) sum_{a>0} {L~_{a,u}, Y~_a} = {Y~_u, L~_e} - {L~_u, Y~_e}",
          ComplexRational(2 / rho) * basis_sum(h, 1, [&](const QVector& b) { return anticommutator(Lau(b), h.tildeY(b)); }),
          anticommutator(Yu, Le) - anticommutator(Lu, Ye));
  std::vector<std::pair<ComplexRational, ConeOperator>> pairs;
  for (int i = 1; i < a.dim(); ++i)
    for (int j = 1; j < a.dim(); ++j) {
      if (i == j) continue;
      const auto cm = commutator(h.tildeL(a.basis(i)), h.tildeL(a.basis(j)));
      pairs.emplace_back(ComplexRational(k.A / (a.weight(i) * a.weight(j))), cm * cm);
    }
  const Rational q = rho * delta / 4;
  c.check("Asum[L_a,L_b]^2", "A sum [L~_a, L~_b]^2 = (1/2){X~_e, Y~_e} - L~_e^2 + (rho delta/4)(rho delta/4 - 1)",
          ConeOperator::lincomb(pairs),
          ComplexRational(rat(1, 2)) * anticommutator(Xe, Ye) - Le * Le + cst(q * (q - 1)));
}

void lenz_relations(SuiteContext& c) {
  const HiddenAction& h = c.h;
  const Algebra& a = h.algebra();
  const auto hh = h.hamiltonian();
  const auto zero = ConeOperator::zero(h.dim());
  const auto u = c.random(), v = c.random(), z = c.random(), w = c.random();
  const QMatrix d = commutator(a.lmul(u), a.lmul(v));
  const auto luv = h.Luv(u, v);
  c.check("[L_uv,h]=0", "[L_{u,v}, h] = 0", commutator(luv, hh), zero);
  c.check("[L_uv,L_zw]", "[L_{u,v}, L_{z,w}] = L_{[L_u,L_v]z, w} + L_{z, [L_u,L_v]w}", commutator(luv, h.Luv(z, w)),
          h.Luv(d * z, w) + h.Luv(z, d * w));
  c.check("[L_uv,A_z]", "[L_{u,v}, A_z] = A_{[L_u,L_v]z}", commutator(luv, h.lenz(z)), h.lenz(d * z));
  c.check("[A_u,h]=0", "[A_u, h] = 0", commutator(h.lenz(u), hh), zero);
  c.check("[A_u,A_v]", "[A_u, A_v] = -2 h L_{u,v}", commutator(h.lenz(u), h.lenz(v)), ComplexRational(-2) * (hh * luv));
  c.check("A_e=1", "A_e = 1", h.lenz(a.unit()), h.constant(1));
}

void appendix_relations(SuiteContext& c, const Rational& eps) {
  const HiddenAction& h = c.h;
  const Algebra& a = h.algebra();
  const int dim = h.dim();
  const Rational rho(a.rho()), delta(a.delta());
  const Rational B = h.constants().B;
  const auto X = h.X();
  const std::vector<WeightedFunction> one = {WeightedFunction::constant(dim, 1)};
  const auto u = c.random();
  const auto xu = h.inner_x(u);
  const auto r = WeightedFunction::coordinate(dim, 0);
  const Rational c0 = rho * (rho - 2) * delta * delta / 8;

  WeightedFunction first = ComplexRational(-B + c0) * xu.times_rpow(Exponent(-2));
  first -= ComplexRational(c0 * u[0]) * WeightedFunction::exp_power(dim, Exponent(0), Exponent(-1));
  c.check("[L_u,X](1)", "[L~_u, X](1) = (c0 - B)<u|x>/r^2 - c0 <u|e>/r, c0 = rho(rho-2)delta^2/8",
          commutator(h.tildeL(u), X), h.multiply(first, "closed form"), &one);

  // L~_e commutes with X up to X itself, so only the part of u orthogonal to e contributes
  WeightedFunction oo = xu - ComplexRational(u[0]) * r;
  oo = ComplexRational(rho * delta * eps) * oo.times_rpow(Exponent(-3));
  c.check("calO(1)", "[[L~_u, X], X](1) = rho delta eps <u - <u|e>e | x>/r^3", commutator(commutator(h.tildeL(u), X), X),
          h.multiply(oo, "closed form"), &one);

  const auto p = c.random_traceless(), q = c.random_traceless();
  const auto xp = h.inner_x(p), xq = h.inner_x(q), xpq = h.inner_x(a.product(p, q));
  WeightedFunction o = (xp * xq).times_rpow(Exponent(-3)) - xpq.times_rpow(Exponent(-2));
  o *= ComplexRational(-2 * eps);
  c.check("O(1)", "[L~_v, [L~_u, X]](1) - [L~_uv, X](1) = -2 eps (-<x|uv>/r^2 + <x|u><x|v>/r^3), u, v orthogonal to e",
          commutator(h.tildeL(q), commutator(h.tildeL(p), X)) - commutator(h.tildeL(a.product(p, q)), X),
          h.multiply(o, "closed form"), &one);
}

void lemma_relations(SuiteContext& c) {
  const HiddenAction& h = c.h;
  const Algebra& a = h.algebra();
  const int dim = h.dim();
  const Rational rho(a.rho()), delta(a.delta());
  const auto e = a.unit();
  const auto X = h.X();
  const auto zero = ConeOperator::zero(dim);
  const std::vector<WeightedFunction> one = {WeightedFunction::constant(dim, 1)};
  const auto u = c.random(), v = c.random();
  const auto xu = h.multiply(h.inner_x(u), "<u|x>");
  const auto r = h.multiply(WeightedFunction::coordinate(dim, 0), "r");

  c.check("[X,<u|x>]=2L_u", "[X, <u|x>] = 2 L~_u", commutator(X, xu), ComplexRational(2) * h.tildeL(u));
  c.check("[Delta,<u|x>]", "[Delta, <u|x>] = -2r L~_u + 2<u|x> L~_e", commutator(h.delta(), xu),
          ComplexRational(-2) * (r * h.tildeL(u)) + ComplexRational(2) * (xu * h.tildeL(e)));
  WeightedFunction lin = h.inner_x(u) - ComplexRational(u[0]) * WeightedFunction::coordinate(dim, 0);
  lin *= ComplexRational(-rho * delta / 2);
  c.check("Delta<u|x>", "Delta(<u|x>) = -(rho delta/2)(<u|x> - <u|e> r)", h.delta() * xu, h.multiply(lin, "closed form"),
          &one);
  c.check("S_ue=L_u", "S~_ue = L~_u", h.tildeS(u, e), h.tildeL(u));
  c.check("S_eu=L_u", "S~_eu = L~_u", h.tildeS(e, u), h.tildeL(u));
  c.check("hatS_ue=hatL_u", "S^_ue = L^_u", h.hatS(u, e), h.hatL(u));
  c.check("[L_uv,X]=[L_u,[L_v,X]]", "[L~_uv, X] = [L~_u, [L~_v, X]]", commutator(h.tildeL(a.product(u, v)), X),
          commutator(h.tildeL(u), commutator(h.tildeL(v), X)));
  c.check("[[L_u,X],X]=0", "[[L~_u, X], X] = 0", commutator(commutator(h.tildeL(u), X), X), zero);
  c.check("[L_uv,X]=0", "X commutes with der(V)", commutator(h.Luv(u, v), X), zero);
  // R on homogeneous functions of degree -k
  for (const Exponent k : {Exponent(1, 2), Exponent(3, 2)}) {
    std::vector<WeightedFunction> homog;
    std::vector<int> m(dim, 0);
    homog.push_back(WeightedFunction::monomial(dim, 1, Exponent(0), -k, m));
    for (int b = 1; b < dim; ++b) {
      m.assign(dim, 0);
      m[b] = 1;
      homog.push_back(WeightedFunction::monomial(dim, 1, Exponent(0), -k - Exponent(1), m));
    }
    const Rational kq = rat(k.numerator(), k.denominator());
    const Rational factor = kq * kq + kq - (rho - 1) * delta * kq;
    c.check("R(homogeneous)", "R f = (k^2 + k - (rho-1) delta k) f for f of degree -k", h.radial(),
            h.constant(ComplexRational(factor)), &homog);
  }
  // functions vanishing on the cone stay so under the fields inside X
  std::vector<WeightedFunction> vanish;
  for (int t = 0; t < 3; ++t) {
    const QVector w = c.random();
    WeightedFunction g(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        const QVector p = a.product(a.basis(i), a.basis(j));
        const Rational coeff = a.inner(w, p) - a.inner(w, a.basis(i)) * a.trace(a.basis(j));
        if (sgn(coeff) != 0)
          g += ComplexRational(coeff) * (WeightedFunction::coordinate(dim, i) * WeightedFunction::coordinate(dim, j));
      }
    vanish.push_back(g);
  }
  c.check("tangency:vanishing", "<w|x^2 - tr(x) x> = 0 on the cone", h.constant(1), zero, &vanish);
  c.check("tangency:hatL_e", "hatL_e preserves functions vanishing on the cone", h.hatL(e), zero, &vanish);
  for (int i = 1; i < std::min(dim, 4); ++i)
    for (int j = i + 1; j < std::min(dim, 4); ++j)
      c.check("tangency:[hatL_a,hatL_b]", "[hatL_a, hatL_b] preserves functions vanishing on the cone",
              h.Luv(a.basis(i), a.basis(j)), zero, &vanish);
}

}  // namespace

SuiteReport run_identity_suite(const AlgebraPtr& alg, const std::string& suite, const SuiteOptions& opt) {
  if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
    throw Error("run_identity_suite: unknown suite '" + suite + "'");
  if (alg->rho() < 2 && suite != "vector_fields")
    throw Error("run_identity_suite: the hidden action needs rank at least 2");
  HiddenConstants k = opt.constants ? *opt.constants : hidden_constants(*alg);
  if (suite == "appendixB") k.B += opt.epsilon;
  const HiddenAction h(alg, k);

  SuiteReport report;
  report.algebra = alg->name();
  report.suite = suite;
  report.seed = opt.seed;
  report.tol = opt.tol;
  report.points = opt.points;

  // points with r in [1/2, 2]: cone samples have tr x there, so rescale by rho
  std::vector<Eigen::VectorXd> points;
  for (const auto& p : cone_samples(alg, opt.seed, opt.points)) {
    Eigen::VectorXd x = p.x * alg->rho();
    if (opt.off_cone) x += 0.25 * to_eigen(alg->unit());
    points.push_back(x);
  }
  auto tests = opt.mixed > 0 ? mixed_test_set(*alg, opt.mixed, opt.seed + 1, opt.max_degree)
                             : default_test_set(*alg, opt.max_degree);
  report.functions = static_cast<int>(tests.size());
  SuiteContext c{h, std::move(tests), std::move(points), Rng(opt.seed + 2), opt.tol, report};
  for (int s = 0; s < std::max(1, opt.samples); ++s) {
    if (suite == "tkk_hidden") tkk_relations(c, false);
    if (suite == "vector_fields") tkk_relations(c, true);
    if (suite == "quadratic") quadratic_relations(c);
    if (suite == "lenz") lenz_relations(c);
    if (suite == "appendixB") appendix_relations(c, opt.epsilon);
    if (suite == "lemma") lemma_relations(c);
  }
  return report;
}

nlohmann::json suite_report_json(const SuiteReport& r) {
  nlohmann::json j;
  j["algebra"] = r.algebra;
  j["suite"] = r.suite;
  j["seed"] = r.seed;
  j["tol"] = r.tol;
  j["points"] = r.points;
  j["functions"] = r.functions;
  j["pass"] = r.pass();
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"algebra", r.algebra},
                      {"suite", r.suite},
                      {"identity_id", c.id},
                      {"anchor", c.anchor},
                      {"max_residual", c.max_residual},
                      {"pass", c.pass}});
  j["identities"] = checks;
  return j;
}

}  // namespace jka
