#include <future>
#include <sstream>

#include <nlohmann/json.hpp>

#include "suite.hpp"

namespace gqft {

namespace detail {

ModeLattice config_lattice(const HarnessConfig& cfg, std::vector<Species> species, int n_max) {
  return ModeLattice(cfg.box_length, cfg.n_per_axis, std::move(species), n_max > 0 ? n_max : cfg.n_max, cfg.hbar);
}

std::vector<Species> particle_species(const HarnessConfig& cfg) {
  std::vector<Species> out;
  for (const auto& s : cfg.species)
    if (!s.antiparticle_of) out.push_back(s);
  return out;
}

std::vector<Species> with_partner(const HarnessConfig& cfg, const Species& s) {
  for (const auto& p : cfg.species)
    if (p.antiparticle_of && *p.antiparticle_of == s.name) return {s, p};
  Species p = s;
  p.name = s.name + "~";
  p.mass = -s.mass;
  p.internal_energy = 0.0;
  p.antiparticle_of = s.name;
  return {s, p};
}

}  // namespace detail

SuiteReport run_suite(const std::string& suite, const HarnessConfig& cfg) {
  if (suite == "group") return detail::run_group(cfg);
  if (suite == "algebra") return detail::run_algebra(cfg);
  if (suite == "fock") return detail::run_fock(cfg);
  if (suite == "fields") return detail::run_fields(cfg);
  if (suite == "invariance") return detail::run_invariance(cfg);
  if (suite == "scattering") return detail::run_scattering(cfg);
  throw ConfigError({"suites: unknown suite '" + suite + "'"});
}

Report run(const HarnessConfig& cfg, bool serial) {
  validate(cfg);
  Report rep;
  rep.config = cfg;
  std::vector<std::string> order;
  for (const auto& name : suite_names())
    for (const auto& s : cfg.suites)
      if (s == name) order.push_back(name);

  if (serial) {
    for (const auto& s : order) rep.suites.push_back(run_suite(s, cfg));
  } else {
    std::vector<std::future<SuiteReport>> jobs;
    for (const auto& s : order) jobs.push_back(std::async(std::launch::async, [&cfg, s] { return run_suite(s, cfg); }));
    for (auto& j : jobs) rep.suites.push_back(j.get());
  }
  for (const auto& s : rep.suites) {
    if (s.failed > 0) rep.verdict = Status::Fail;
    else if (s.inconclusive > 0 && rep.verdict == Status::Pass) rep.verdict = Status::Inconclusive;
  }
  return rep;
}

int exit_code(const Report& r) {
  switch (r.verdict) {
    case Status::Pass: return 0;
    case Status::Fail: return 1;
    case Status::Inconclusive: return 2;
  }
  return 1;
}

namespace {

// Finite doubles as numbers; infinities and NaN as strings so the document stays valid JSON.
nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

std::string report_to_json(const Report& r, bool timings) {
  using nlohmann::json;
  json suites = json::array();
  for (const auto& s : r.suites) {
    json checks = json::array();
    for (const auto& c : s.checks) {
      json jc = {{"id", c.id},
                 {"anchor", c.anchor},
                 {"status", to_string(c.status)},
                 {"residual", number(c.residual)},
                 {"tolerance", number(c.tolerance)},
                 {"detail", c.detail}};
      if (timings) jc["seconds"] = c.seconds;
      checks.push_back(std::move(jc));
    }
    json js = {{"name", s.name},
               {"checks_run", s.checks.size()},
               {"passed", s.passed},
               {"failed", s.failed},
               {"inconclusive", s.inconclusive},
               {"max_residual", number(s.max_residual)},
               {"checks", std::move(checks)}};
    if (timings) js["seconds"] = s.seconds;
    suites.push_back(std::move(js));
  }
  const json doc = {{"schema", kReportSchemaVersion},
                    {"version", r.version},
                    {"verdict", to_string(r.verdict)},
                    {"exit_code", exit_code(r)},
                    {"config", json::parse(config_to_json(r.config))},
                    {"suites", std::move(suites)}};
  return doc.dump(2) + "\n";
}

std::string report_summary(const Report& r) {
  std::ostringstream out;
  for (const auto& s : r.suites) {
    out << "[" << s.name << "] " << s.passed << " passed, " << s.failed << " failed, " << s.inconclusive
        << " inconclusive (" << detail::fmt(s.seconds) << " s)\n";
    for (const auto& c : s.checks) {
      char line[256];
      std::snprintf(line, sizeof line, "  %-12s %-44s residual %-12s tol %-10s", to_string(c.status), c.id.c_str(),
                    detail::fmt(c.residual).c_str(), detail::fmt(c.tolerance).c_str());
      out << line;
      if (!c.detail.empty()) out << "  " << c.detail;
      out << "\n";
    }
  }
  out << "verdict: " << to_string(r.verdict) << "\n";
  return out.str();
}

}  // namespace gqft
