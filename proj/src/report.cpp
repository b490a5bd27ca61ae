#include "jka/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "jka/cone.hpp"
#include "jka/hidden_action.hpp"
#include "jka/spectral.hpp"

namespace jka {

namespace {

const std::vector<std::string> kFastSet = {"gamma:2", "gamma:3", "gamma:4", "herm_r:3", "herm_c:3"};
const std::vector<std::string> kFullExtra = {"herm_h:3", "herm_o:3"};
const std::vector<std::string> kExtraSuites = {"tkk_axioms", "projector", "vogan", "killing"};

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(3) << std::scientific << x;
  return s.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

Record exact_record(const std::string& alg, const std::string& suite, const std::string& id, const std::string& anchor,
                    const std::string& value, const std::string& expected) {
  return {alg, suite, id, anchor, std::nullopt, value, expected, value == expected};
}

Record numeric_record(const std::string& alg, const std::string& suite, const std::string& id,
                      const std::string& anchor, double residual, double tol) {
  return {alg, suite, id, anchor, residual, "", "", residual <= tol};
}

// Large algebras run the identity suites on a reduced test set.
bool is_large(const Algebra& a) { return a.dim() > 15; }

std::vector<Record> verify_job(const std::string& spec, const std::string& suite, const RunConfig& cfg) {
  const auto alg = make_algebra(parse_algebra_spec(spec));
  std::vector<Record> out;
  const std::string name = alg->name();
  if (suite == "tkk_axioms") {
    ConformalAlgebra co(alg);
    Rng rng(cfg.seed);
    bool anti = true, jacobi = true;
    for (int t = 0; t < 100; ++t) {
      const auto a = co.random(rng), b = co.random(rng), c = co.random(rng);
      anti = anti && (co.bracket(a, b) + co.bracket(b, a)).is_zero();
      jacobi = jacobi && (co.bracket(a, co.bracket(b, c)) + co.bracket(b, co.bracket(c, a)) +
                          co.bracket(c, co.bracket(a, b)))
                             .is_zero();
    }
    out.push_back(exact_record(name, suite, "antisymmetry", "[a,b] + [b,a] = 0", anti ? "0" : "nonzero", "0"));
    out.push_back(exact_record(name, suite, "jacobi", "[a,[b,c]] + [b,[c,a]] + [c,[a,b]] = 0",
                               jacobi ? "0" : "nonzero", "0"));
  } else if (suite == "projector") {
    double worst = 0.0;
    for (const auto& p : cone_samples(alg, cfg.seed, 50)) worst = std::max(worst, projector_identity_residual(p));
    out.push_back(numeric_record(name, suite, "projector",
                                 "sum_ab |[L_a,L_b]x><[L_a,L_b]x| / (rho^2/2 (1 + delta(rho-2)/4)) = "
                                 "r sum_a |e_a><e_a x| - |x><x|",
                                 worst, cfg.tol));
  } else if (suite == "vogan") {
    ConformalAlgebra co(alg);
    Rng rng(cfg.seed);
    for (const auto& r : vogan_sl2_check(co, standard_idempotent(*alg), rng, 2))
      out.push_back(exact_record(name, suite, r.id, "sl2 relations of h_u, E_u^+, E_u^-",
                                 r.residual == 0.0 ? "0" : fmt(r.residual), "0"));
  } else if (suite == "killing") {
    ConformalAlgebra co(alg);
    const Eigen::MatrixXd g = alg->dim() <= 6 ? to_eigen(killing_gram(co, co.standard_basis()))
                                              : killing_gram_numeric(co, co.standard_basis());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
    const double top = es.eigenvalues().maxCoeff();
    Record r{name, suite, "killing_theta", "B(a, theta b) negative definite", std::nullopt, fmt(top), "< -1e-8",
             top < -1e-8};
    out.push_back(r);
  } else {
    SuiteOptions opt;
    opt.seed = cfg.seed;
    opt.tol = cfg.tol;
    opt.points = cfg.points;
    opt.max_degree = std::clamp(cfg.degree, 1, 2);
    if (is_large(*alg)) {
      opt.points = std::min(cfg.points, 5);
      opt.mixed = 2;
      opt.max_degree = 1;
    }
    const auto rep = run_identity_suite(alg, suite, opt);
    for (const auto& c : rep.checks) out.push_back(numeric_record(name, suite, c.id, c.anchor, c.max_residual, cfg.tol));
  }
  return out;
}

// Runs the jobs on up to JKA_THREADS threads; results keep job order.
std::vector<std::vector<Record>> run_pool(const std::vector<std::function<std::vector<Record>()>>& jobs) {
  std::vector<std::vector<Record>> results(jobs.size());
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("JKA_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) threads = static_cast<unsigned>(v);
  }
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, jobs.size())));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < jobs.size();) {
      try {
        results[i] = jobs[i]();
      } catch (const std::exception& e) {
        results[i] = {Record{"", "", "error", "", std::nullopt, e.what(), "", false}};
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return results;
}

Report cmd_table(const RunConfig& cfg) {
  Report rep{cfg, {}, {}};
  const std::vector<std::pair<Family, int>> rows = {
      {Family::gamma, 2},  {Family::gamma, 3},  {Family::gamma, 4},  {Family::gamma, 5},
      {Family::gamma, 6},  {Family::herm_r, 3}, {Family::herm_r, 4}, {Family::herm_r, 5},
      {Family::herm_c, 3}, {Family::herm_c, 4}, {Family::herm_h, 3}, {Family::herm_o, 3}};
  for (const auto& [f, n] : rows) {
    const auto alg = make_algebra(f, n);
    const auto c = hidden_constants(*alg);
    const auto [ta, tb] = constants_table_entry(f, n);
    rep.records.push_back(exact_record(alg->name(), "constants", "A",
                                       "A = (2/rho^2) / (1 + delta(rho-2)/4)", to_string(c.A), to_string(ta)));
    rep.records.push_back(exact_record(alg->name(), "constants", "B",
                                       "B = (delta/8)(rho-2)((3 rho/2 - 1) delta - 2)", to_string(c.B), to_string(tb)));
  }
  return rep;
}

Report cmd_dims(const RunConfig& cfg) {
  Report rep{cfg, {}, {}};
  std::vector<std::function<std::vector<Record>()>> jobs;
  for (const auto& spec : cfg.algebras)
    jobs.emplace_back([spec] {
      const auto s = parse_algebra_spec(spec);
      const auto alg = make_algebra(s);
      const auto d = algebra_dims(*alg);
      const auto x = classification_dims(s.family, s.n);
      const std::string anchor = "dim der, str, u, co";
      return std::vector<Record>{
          exact_record(alg->name(), "dims", "der", anchor, std::to_string(d.der), std::to_string(x.der)),
          exact_record(alg->name(), "dims", "str", anchor, std::to_string(d.str), std::to_string(x.str)),
          exact_record(alg->name(), "dims", "u", anchor, std::to_string(d.u), std::to_string(x.u)),
          exact_record(alg->name(), "dims", "co", anchor, std::to_string(d.co), std::to_string(x.co))};
    });
  for (auto& r : run_pool(jobs)) rep.records.insert(rep.records.end(), r.begin(), r.end());
  return rep;
}

Report cmd_verify(const RunConfig& cfg) {
  Report rep{cfg, {}, {}};
  std::vector<std::function<std::vector<Record>()>> jobs;
  for (const auto& spec : cfg.algebras)
    for (const auto& suite : cfg.suites) jobs.emplace_back([spec, suite, &cfg] { return verify_job(spec, suite, cfg); });
  for (auto& r : run_pool(jobs)) rep.records.insert(rep.records.end(), r.begin(), r.end());
  return rep;
}

Report cmd_spectrum(const RunConfig& cfg) {
  Report rep{cfg, {}, {}};
  for (const auto& spec : cfg.algebras) {
    const auto alg = make_algebra(parse_algebra_spec(spec));
    const auto s = h0_matrix_spectrum(alg, cfg.degree, cfg.seed);
    rep.spectra.push_back(spectrum_json(s).dump());
    const double shift = alg->rho() * alg->delta() / 4.0;
    for (const auto& l : s.levels) {
      const std::string lv = std::to_string(l.I);
      rep.records.push_back(numeric_record(alg->name(), "spectrum", "eigenvalue I=" + lv,
                                           "H0tilde eigenvalue -(I + rho delta/4)",
                                           std::abs(l.eigenvalue + l.I + shift), cfg.tol));
      rep.records.push_back(exact_record(alg->name(), "spectrum", "multiplicity I=" + lv,
                                         "multiplicity = dim of polynomials of degree <= I on the slice",
                                         std::to_string(l.multiplicity),
                                         std::to_string(restricted_basis(alg, l.I, 0, cfg.seed).count())));
    }
    if (static_cast<int>(s.levels.size()) != cfg.degree + 1)
      rep.records.push_back(exact_record(alg->name(), "spectrum", "levels", "one level per degree",
                                         std::to_string(s.levels.size()), std::to_string(cfg.degree + 1)));
  }
  return rep;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

bool Report::pass() const {
  return std::all_of(records.begin(), records.end(), [](const Record& r) { return r.pass; });
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  return a.command == b.command && a.algebras == b.algebras && a.suites == b.suites && a.seed == b.seed &&
         a.tol == b.tol && a.points == b.points && a.degree == b.degree && a.format == b.format && a.out == b.out &&
         a.full == b.full;
}

bool operator==(const Report& a, const Report& b) {
  return a.config == b.config && a.records == b.records && a.spectra == b.spectra;
}

LieDims classification_dims(Family f, int n) {
  switch (f) {
    case Family::gamma: return {n * (n - 1) / 2, n * (n + 1) / 2 + 1, n * (n + 1) / 2 + 1, (n + 2) * (n + 3) / 2};
    case Family::herm_r: return {n * (n - 1) / 2, n * n, n * n, n * (2 * n + 1)};
    case Family::herm_c: return {n * n - 1, 2 * n * n - 1, 2 * n * n - 1, 4 * n * n - 1};
    case Family::herm_h: return {n * (2 * n + 1), 4 * n * n, 4 * n * n, 2 * n * (4 * n - 1)};
    case Family::herm_o: return {52, 79, 79, 133};
  }
  throw Error("classification_dims: unknown family");
}

nlohmann::json report_json(const Report& r) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& x : r.records) {
    nlohmann::json j{{"algebra", x.algebra}, {"suite", x.suite}, {"id", x.id},
                     {"anchor", x.anchor},   {"value", x.value}, {"expected", x.expected},
                     {"pass", x.pass}};
    j["residual"] = x.residual ? nlohmann::json(*x.residual) : nlohmann::json(nullptr);
    records.push_back(j);
  }
  const auto& c = r.config;
  nlohmann::json j{{"schema", kReportSchema},
                   {"version", kVersion},
                   {"config",
                    {{"command", c.command},
                     {"algebras", c.algebras},
                     {"suites", c.suites},
                     {"seed", c.seed},
                     {"tol", c.tol},
                     {"points", c.points},
                     {"degree", c.degree},
                     {"format", c.format},
                     {"out", c.out},
                     {"full", c.full}}},
                   {"records", records},
                   {"pass", r.pass()}};
  if (!r.spectra.empty()) {
    nlohmann::json sp = nlohmann::json::array();
    for (const auto& s : r.spectra) sp.push_back(nlohmann::json::parse(s));
    j["spectrum"] = sp;
  }
  return j;
}

Report report_from_json(const nlohmann::json& j) {
  if (j.at("schema") != kReportSchema) throw Error("report_from_json: unknown schema");
  Report r;
  const auto& c = j.at("config");
  r.config.command = c.at("command");
  r.config.algebras = c.at("algebras").get<std::vector<std::string>>();
  r.config.suites = c.at("suites").get<std::vector<std::string>>();
  r.config.seed = c.at("seed");
  r.config.tol = c.at("tol");
  r.config.points = c.at("points");
  r.config.degree = c.at("degree");
  r.config.format = c.at("format");
  r.config.out = c.at("out");
  r.config.full = c.at("full");
  for (const auto& x : j.at("records")) {
    Record rec{x.at("algebra"), x.at("suite"), x.at("id"),       x.at("anchor"), std::nullopt,
               x.at("value"),   x.at("expected"), x.at("pass")};
    if (!x.at("residual").is_null()) rec.residual = x.at("residual").get<double>();
    r.records.push_back(rec);
  }
  if (j.contains("spectrum"))
    for (const auto& s : j.at("spectrum")) r.spectra.push_back(s.dump());
  return r;
}

std::string report_csv(const Report& r) {
  std::ostringstream out;
  out << std::setprecision(17);
  if (!r.spectra.empty()) {
    out << "family,n,rho,delta,d,I,eigenvalue,multiplicity,energy\n";
    for (const auto& s : r.spectra) {
      const auto j = nlohmann::json::parse(s);
      for (const auto& l : j.at("levels"))
        out << j.at("family").get<std::string>() << ',' << j.at("n") << ',' << j.at("rho") << ',' << j.at("delta")
            << ',' << j.at("d") << ',' << l.at("I") << ',' << l.at("eigenvalue").get<double>() << ','
            << l.at("multiplicity") << ',' << l.at("energy").get<double>() << '\n';
    }
    return out.str();
  }
  out << "algebra,suite,id,residual,value,expected,pass,anchor\n";
  for (const auto& x : r.records) {
    out << csv_field(x.algebra) << ',' << csv_field(x.suite) << ',' << csv_field(x.id) << ',';
    if (x.residual) out << *x.residual;
    out << ',' << csv_field(x.value) << ',' << csv_field(x.expected) << ',' << (x.pass ? "true" : "false") << ','
        << csv_field(x.anchor) << '\n';
  }
  return out.str();
}

std::string report_text(const Report& r) {
  std::size_t wa = 7, ws = 5, wi = 2;
  for (const auto& x : r.records) {
    wa = std::max(wa, x.algebra.size());
    ws = std::max(ws, x.suite.size());
    wi = std::max(wi, x.id.size());
  }
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(wa) + 2) << "algebra" << std::setw(static_cast<int>(ws) + 2)
      << "suite" << std::setw(static_cast<int>(wi) + 2) << "id" << std::setw(24) << "result" << std::setw(6)
      << "pass"
      << "anchor\n";
  for (const auto& x : r.records) {
    const std::string result = x.residual ? fmt(*x.residual) : x.value + (x.expected.empty() ? "" : " / " + x.expected);
    out << std::setw(static_cast<int>(wa) + 2) << x.algebra << std::setw(static_cast<int>(ws) + 2) << x.suite
        << std::setw(static_cast<int>(wi) + 2) << x.id << std::setw(24) << result << std::setw(6)
        << (x.pass ? "ok" : "FAIL") << x.anchor << '\n';
  }
  for (const auto& s : r.spectra) {
    const auto j = nlohmann::json::parse(s);
    out << "\nspectrum " << j.at("algebra").get<std::string>() << " d=" << j.at("d") << '\n';
    for (const auto& l : j.at("levels"))
      out << "  I=" << l.at("I") << "  eigenvalue " << l.at("eigenvalue").get<double>() << "  x" << l.at("multiplicity")
          << "  E_I " << l.at("energy").get<double>() << '\n';
  }
  const auto fails = std::count_if(r.records.begin(), r.records.end(), [](const Record& x) { return !x.pass; });
  out << '\n' << r.records.size() << " checks, " << fails << " failed\n";
  return out.str();
}

void report_write(const Report& r, std::ostream& fallback) {
  std::string body;
  if (r.config.format == "json")
    body = report_json(r).dump(2) + "\n";
  else if (r.config.format == "csv")
    body = report_csv(r);
  else if (r.config.format == "text")
    body = report_text(r);
  else
    throw Error("report_write: unknown format " + r.config.format);
  if (r.config.out.empty()) {
    fallback << body;
    return;
  }
  std::ofstream f(r.config.out, std::ios::binary);
  if (!f) throw Error("report_write: cannot open " + r.config.out);
  f << body;
  if (!f) throw Error("report_write: cannot write " + r.config.out);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Jordan algebras, TKK and the J-Kepler hidden action"};
  RunConfig cfg;
  std::string what, algebra, suites;
  app.add_option("command", cfg.command, "table | verify | spectrum | dims")
      ->required()
      ->check(CLI::IsMember({"table", "verify", "spectrum", "dims"}));
  app.add_option("what", what, "table name (constants, dims)");
  app.add_option("--algebra", algebra, "FAMILY:N, or a comma separated list");
  app.add_option("--suite", suites, "suite names, comma separated");
  app.add_option("--seed", cfg.seed);
  app.add_option("--tol", cfg.tol)->check(CLI::PositiveNumber);
  app.add_option("--points", cfg.points)->check(CLI::PositiveNumber);
  app.add_option("--degree", cfg.degree)->check(CLI::NonNegativeNumber);
  app.add_option("--format", cfg.format)->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--out", cfg.out);
  app.add_flag("--full", cfg.full, "include herm_h:3 and herm_o:3 in the default algebra set");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "jka: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (cfg.command == "table") {
      if (what == "dims")
        cfg.command = "dims";
      else if (what != "constants")
        throw CLI::ValidationError("table", "expected 'constants' or 'dims'");
    } else if (!what.empty()) {
      throw CLI::ValidationError("command", "unexpected argument '" + what + "'");
    }
    cfg.algebras = split(algebra);
    if (cfg.algebras.empty()) {
      if (cfg.command == "spectrum") {
        cfg.algebras = {"gamma:3"};
      } else if (cfg.command == "verify" || cfg.command == "dims") {
        cfg.algebras = kFastSet;
        if (cfg.full) cfg.algebras.insert(cfg.algebras.end(), kFullExtra.begin(), kFullExtra.end());
      }
    }
    for (const auto& a : cfg.algebras) {
      const auto alg = make_algebra(parse_algebra_spec(a));
      if (cfg.command != "dims" && alg->rho() < 2)
        throw CLI::ValidationError("--algebra", a + " has rank below 2");
    }
    if (cfg.command == "verify") {
      cfg.suites = split(suites);
      if (cfg.suites.empty()) cfg.suites = suite_names();
      for (const auto& s : cfg.suites) {
        const auto& known = suite_names();
        if (std::find(known.begin(), known.end(), s) == known.end() &&
            std::find(kExtraSuites.begin(), kExtraSuites.end(), s) == kExtraSuites.end())
          throw CLI::ValidationError("--suite", "unknown suite '" + s + "'");
      }
    } else if (!suites.empty()) {
      throw CLI::ValidationError("--suite", "only valid with verify");
    }
  } catch (const CLI::Error& e) {
    err << "jka: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "jka: " << e.what() << "\n";
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  Report rep;
  try {
    if (cfg.command == "table")
      rep = cmd_table(cfg);
    else if (cfg.command == "dims")
      rep = cmd_dims(cfg);
    else if (cfg.command == "verify")
      rep = cmd_verify(cfg);
    else
      rep = cmd_spectrum(cfg);
  } catch (const std::exception& e) {
    err << "jka: " << e.what() << "\n";
    return 1;
  }
  try {
    report_write(rep, out);
  } catch (const Error& e) {
    err << "jka: " << e.what() << "\n";
    return 2;
  }
  // wall-clock goes to stderr so reports stay byte-stable
  err << "elapsed " << std::fixed << std::setprecision(2)
      << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s\n";
  return rep.pass() ? 0 : 1;
}

}  // namespace jka
