#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gqft/algebra.hpp"
#include "gqft/error.hpp"
#include "gqft/scattering.hpp"

namespace gqft {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kConfigSchemaVersion = 1;
inline constexpr int kReportSchemaVersion = 1;
/// Number of registered checks in this release.
inline constexpr std::size_t kCheckCount = 73;

/// Suites in their fixed reduction order.
const std::vector<std::string>& suite_names();

struct Tolerances {
  double pass_tol = 1e-9;     // invariant below this residual
  double fail_floor = 1e-2;   // non-invariant above fail_floor * ||O||_F
  double algebra_tol = 1e-9;  // bracket and Casimir residuals on the interior block
};

struct ScatteringConfig {
  double coupling = 0.1;
  int n_per_axis = 3;
  int n_max = 2;
  double mass_v = 2.0;
  std::vector<double> abel_epsilons{0.5, 0.25, 0.125};
  QuadratureSpec quadrature;
  double convergence_rel = 1e-2;
};

struct HarnessConfig {
  double hbar = 1.0;
  double box_length = 2 * kPi;
  int n_per_axis = 3;
  int n_max = 2;
  std::vector<Species> species;  // antiparticle partners are added per check when absent
  AlgebraConfig algebra;
  Tolerances tolerances;
  std::uint64_t seed = 20240611;
  std::vector<std::string> suites = suite_names();
  int random_words = 20;
  int group_trials = 1000;
  ScatteringConfig scattering;

  /// Default species: scalar boson "phi" and spin-1/2 fermion "chi" with xi = 1, eta = 1/2.
  static HarnessConfig defaults();
};

/// ConfigInvalid error carrying one "field: message" line per problem.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> diagnostics);
  const std::vector<std::string>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

/// Collects every problem and throws ConfigError when there is at least one.
void validate(const HarnessConfig& cfg);

/// Parses a JSON config; absent keys keep their defaults, unknown keys are rejected.
HarnessConfig parse_config(const std::string& json_text);
HarnessConfig load_config(const std::string& path);
/// Canonical JSON of the full config (every key present).
std::string config_to_json(const HarnessConfig& cfg);

struct CheckInfo {
  std::string id;
  std::string suite;
  std::string anchor;
  std::string formula;
};

/// Every registered check, grouped by suite in reduction order.
const std::vector<CheckInfo>& check_registry();
/// Checks of the selected suites in registry order.
std::vector<CheckInfo> enumerate_checks(const std::vector<std::string>& suites);
std::optional<CheckInfo> explain(const std::string& id);

enum class Status { Pass, Fail, Inconclusive };
const char* to_string(Status s);

struct CheckResult {
  std::string id;
  std::string anchor;
  Status status = Status::Fail;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string detail;
  double seconds = 0.0;
};

struct SuiteReport {
  std::string name;
  std::vector<CheckResult> checks;
  int passed = 0;
  int failed = 0;
  int inconclusive = 0;
  double max_residual = 0.0;
  double seconds = 0.0;
};

struct Report {
  std::string version = kVersion;
  HarnessConfig config;
  std::vector<SuiteReport> suites;
  Status verdict = Status::Pass;
};

/// Runs the suites of `cfg` (in parallel unless `serial`) and reduces them in fixed order.
Report run(const HarnessConfig& cfg, bool serial = false);
/// Runs one suite.
SuiteReport run_suite(const std::string& suite, const HarnessConfig& cfg);

/// Machine-readable report; timings are omitted when `timings` is false.
std::string report_to_json(const Report& r, bool timings = true);
/// Human-readable summary, one line per check.
std::string report_summary(const Report& r);

/// 0 pass, 1 failure, 2 inconclusive only.
int exit_code(const Report& r);
inline constexpr int kExitConfigError = 3;

}  // namespace gqft
