#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "jka/tkk.hpp"

namespace jka {

inline constexpr const char* kReportSchema = "jka/1";
inline constexpr const char* kVersion = "1.0.0";

struct RunConfig {
  std::string command;
  std::vector<std::string> algebras;
  std::vector<std::string> suites;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  int points = 20;
  int degree = 2;
  std::string format = "text";
  std::string out;  // empty: stdout
  bool full = false;
};

/// One line of a report. Numeric checks carry a residual and pass iff it
/// is at most the tolerance; exact checks compare value with expected.
struct Record {
  std::string algebra;
  std::string suite;
  std::string id;
  std::string anchor;
  std::optional<double> residual;
  std::string value;
  std::string expected;
  bool pass = false;

  friend bool operator==(const Record&, const Record&) = default;
};

struct Report {
  RunConfig config;
  std::vector<Record> records;
  /// Spectrum command only: serialized spectrum objects, one per algebra.
  std::vector<std::string> spectra;

  bool pass() const;
};

bool operator==(const RunConfig& a, const RunConfig& b);
bool operator==(const Report& a, const Report& b);

nlohmann::json report_json(const Report& r);
Report report_from_json(const nlohmann::json& j);
/// Header plus one row per record.
std::string report_csv(const Report& r);
std::string report_text(const Report& r);
/// Writes in r.config.format to r.config.out, or to `fallback` when out is empty.
/// Throws Error when the file cannot be written.
void report_write(const Report& r, std::ostream& fallback);

/// der, str, u, co from the classification of simple Euclidean Jordan algebras.
LieDims classification_dims(Family f, int n);

/// Executes one command. Exit codes: 0 all checks pass, 1 a check failed,
/// 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace jka
