#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gqft/harness.hpp"

namespace gqft {

using nlohmann::json;

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"group", "algebra", "fock", "fields", "invariance", "scattering"};
  return names;
}

namespace {

std::string join(const std::vector<std::string>& lines) {
  std::string out = "invalid config";
  for (const auto& l : lines) out += "\n  " + l;
  return out;
}

Species species_named(const std::string& name, double mass, int two_s, Statistics st) {
  Species s;
  s.name = name;
  s.mass = mass;
  s.spin = SpinLabel{two_s};
  s.statistics = st;
  return s;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> diagnostics)
    : Error(ErrorCode::ConfigInvalid, join(diagnostics)), diagnostics_(std::move(diagnostics)) {}

HarnessConfig HarnessConfig::defaults() {
  HarnessConfig c;
  c.species.push_back(species_named("phi", 1.0, 0, Statistics::Bose));
  Species chi = species_named("chi", 1.0, 1, Statistics::Fermi);
  chi.eta = 0.5;
  c.species.push_back(chi);
  return c;
}

void validate(const HarnessConfig& cfg) {
  std::vector<std::string> d;
  auto need = [&](bool ok, const std::string& msg) {
    if (!ok) d.push_back(msg);
  };
  need(cfg.hbar > 0.0 && std::isfinite(cfg.hbar), "hbar: must be positive");
  need(cfg.box_length > 0.0 && std::isfinite(cfg.box_length), "lattice.box_length: must be positive");
  need(cfg.n_per_axis >= 1 && cfg.n_per_axis % 2 == 1, "lattice.n_per_axis: must be a positive odd integer");
  need(cfg.n_max >= 1, "lattice.n_max: must be >= 1");

  need(!cfg.species.empty(), "species: at least one species is required");
  std::set<std::string> names;
  for (std::size_t i = 0; i < cfg.species.size(); ++i) {
    const auto& s = cfg.species[i];
    const std::string at = "species[" + std::to_string(i) + "]";
    try {
      s.validate();
    } catch (const Error& e) {
      d.push_back(at + ": " + e.what());
    }
    if (!names.insert(s.name).second) d.push_back(at + ".name: duplicate '" + s.name + "'");
  }
  for (std::size_t i = 0; i < cfg.species.size(); ++i) {
    const auto& s = cfg.species[i];
    if (!s.antiparticle_of) continue;
    const std::string at = "species[" + std::to_string(i) + "].antiparticle_of";
    bool found = false;
    for (const auto& p : cfg.species)
      if (p.name == *s.antiparticle_of) {
        found = true;
        need(std::abs(p.mass + s.mass) <= 1e-12 * std::abs(p.mass), at + ": partner mass must be -" + p.name + ".mass");
        need(p.spin == s.spin && p.statistics == s.statistics, at + ": partner must share spin and statistics");
      }
    need(found, at + ": unknown species '" + *s.antiparticle_of + "'");
  }

  try {
    AlgebraConfig a = cfg.algebra;
    a.hbar = cfg.hbar;
    a.validate();
  } catch (const Error& e) {
    d.push_back(std::string("algebra: ") + e.what());
  }

  const auto& t = cfg.tolerances;
  need(t.pass_tol > 0.0, "tolerances.pass_tol: must be positive");
  need(t.fail_floor > 0.0, "tolerances.fail_floor: must be positive");
  need(t.algebra_tol > 0.0, "tolerances.algebra_tol: must be positive");
  need(t.pass_tol < t.fail_floor, "tolerances: pass_tol must be smaller than fail_floor");

  std::set<std::string> seen;
  for (const auto& s : cfg.suites) {
    bool known = false;
    for (const auto& n : suite_names()) known = known || n == s;
    need(known, "suites: unknown suite '" + s + "'");
    need(seen.insert(s).second, "suites: duplicate suite '" + s + "'");
  }
  need(cfg.random_words >= 0, "sampling.random_words: must be >= 0");
  need(cfg.group_trials >= 1, "sampling.group_trials: must be >= 1");

  const auto& sc = cfg.scattering;
  need(std::isfinite(sc.coupling), "scattering.coupling: must be finite");
  need(sc.n_per_axis >= 1 && sc.n_per_axis % 2 == 1, "scattering.n_per_axis: must be a positive odd integer");
  need(sc.n_max >= 1, "scattering.n_max: must be >= 1");
  need(sc.mass_v > 0.0, "scattering.mass_v: must be positive");
  need(sc.abel_epsilons.size() >= 2, "scattering.abel_epsilons: needs at least two entries");
  for (std::size_t i = 0; i < sc.abel_epsilons.size(); ++i) {
    need(sc.abel_epsilons[i] > 0.0, "scattering.abel_epsilons[" + std::to_string(i) + "]: must be positive");
    if (i > 0)
      need(sc.abel_epsilons[i] < sc.abel_epsilons[i - 1], "scattering.abel_epsilons: must be strictly decreasing");
  }
  need(sc.quadrature.step > 0.0, "scattering.quadrature.step: must be positive");
  need(sc.quadrature.horizon_factor > 0.0, "scattering.quadrature.horizon_factor: must be positive");
  need(sc.convergence_rel > 0.0, "scattering.convergence_rel: must be positive");

  if (!d.empty()) throw ConfigError(std::move(d));
}

namespace {

// Reads typed fields out of a JSON object and records diagnostics instead of throwing.
class Reader {
 public:
  explicit Reader(std::vector<std::string>& diag) : diag_(diag) {}

  bool object(const json& j, const std::string& at, const std::set<std::string>& keys) {
    if (!j.is_object()) {
      diag_.push_back(at + ": expected an object");
      return false;
    }
    for (const auto& [k, v] : j.items())
      if (!keys.count(k)) diag_.push_back((at.empty() ? k : at + "." + k) + ": unknown key");
    return true;
  }

  void number(const json& j, const char* key, const std::string& at, double& out) {
    if (!j.contains(key)) return;
    if (j[key].is_number()) out = j[key].get<double>();
    else diag_.push_back(path(at, key) + ": expected a number");
  }

  template <typename Int>
  void integer(const json& j, const char* key, const std::string& at, Int& out) {
    if (!j.contains(key)) return;
    if (j[key].is_number_integer()) out = j[key].get<Int>();
    else diag_.push_back(path(at, key) + ": expected an integer");
  }

  void complex(const json& j, const char* key, const std::string& at, cplx& out) {
    if (!j.contains(key)) return;
    const json& v = j[key];
    if (v.is_number()) out = cplx(v.get<double>(), 0.0);
    else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
      out = cplx(v[0].get<double>(), v[1].get<double>());
    else diag_.push_back(path(at, key) + ": expected a number or [re, im]");
  }

  void numbers(const json& j, const char* key, const std::string& at, std::vector<double>& out) {
    if (!j.contains(key)) return;
    const json& v = j[key];
    if (!v.is_array()) {
      diag_.push_back(path(at, key) + ": expected an array of numbers");
      return;
    }
    out.clear();
    for (const auto& e : v) {
      if (!e.is_number()) {
        diag_.push_back(path(at, key) + ": expected an array of numbers");
        return;
      }
      out.push_back(e.get<double>());
    }
  }

  static std::string path(const std::string& at, const char* key) { return at.empty() ? key : at + "." + key; }

 private:
  std::vector<std::string>& diag_;
};

Species parse_species(const json& j, const std::string& at, Reader& r, std::vector<std::string>& d) {
  Species s;
  if (!r.object(j, at, {"name", "mass", "internal_energy", "two_s", "statistics", "antiparticle_of", "xi", "eta"}))
    return s;
  if (j.contains("name")) {
    if (j["name"].is_string()) s.name = j["name"].get<std::string>();
    else d.push_back(at + ".name: expected a string");
  } else {
    d.push_back(at + ".name: required");
  }
  r.number(j, "mass", at, s.mass);
  r.number(j, "internal_energy", at, s.internal_energy);
  r.integer(j, "two_s", at, s.spin.two_s);
  if (j.contains("statistics")) {
    const json& v = j["statistics"];
    if (v == "bose") s.statistics = Statistics::Bose;
    else if (v == "fermi") s.statistics = Statistics::Fermi;
    else d.push_back(at + ".statistics: expected \"bose\" or \"fermi\"");
  }
  if (j.contains("antiparticle_of") && !j["antiparticle_of"].is_null()) {
    if (j["antiparticle_of"].is_string()) s.antiparticle_of = j["antiparticle_of"].get<std::string>();
    else d.push_back(at + ".antiparticle_of: expected a string or null");
  }
  r.complex(j, "xi", at, s.xi);
  r.complex(j, "eta", at, s.eta);
  return s;
}

json complex_json(cplx c) { return json::array({c.real(), c.imag()}); }

}  // namespace

HarnessConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("syntax: ") + e.what()});
  }
  HarnessConfig c = HarnessConfig::defaults();
  std::vector<std::string> d;
  Reader r(d);
  if (!r.object(j, "", {"schema", "hbar", "seed", "suites", "lattice", "species", "algebra", "tolerances",
                        "sampling", "scattering"}))
    throw ConfigError(std::move(d));

  if (j.contains("schema")) {
    if (!(j["schema"].is_number_integer() && j["schema"].get<int>() == kConfigSchemaVersion))
      d.push_back("schema: unsupported version (expected " + std::to_string(kConfigSchemaVersion) + ")");
  }
  r.number(j, "hbar", "", c.hbar);
  if (j.contains("seed")) {
    if (j["seed"].is_number_unsigned()) c.seed = j["seed"].get<std::uint64_t>();
    else d.push_back("seed: expected a non-negative integer");
  }
  if (j.contains("suites")) {
    c.suites.clear();
    if (!j["suites"].is_array()) d.push_back("suites: expected an array of names");
    else
      for (const auto& s : j["suites"]) {
        if (s.is_string()) c.suites.push_back(s.get<std::string>());
        else d.push_back("suites: expected an array of names");
      }
  }
  if (j.contains("lattice") && r.object(j["lattice"], "lattice", {"box_length", "n_per_axis", "n_max"})) {
    r.number(j["lattice"], "box_length", "lattice", c.box_length);
    r.integer(j["lattice"], "n_per_axis", "lattice", c.n_per_axis);
    r.integer(j["lattice"], "n_max", "lattice", c.n_max);
  }
  if (j.contains("species")) {
    c.species.clear();
    if (!j["species"].is_array()) d.push_back("species: expected an array");
    else
      for (std::size_t i = 0; i < j["species"].size(); ++i)
        c.species.push_back(parse_species(j["species"][i], "species[" + std::to_string(i) + "]", r, d));
  }
  if (j.contains("algebra") && r.object(j["algebra"], "algebra", {"m", "W", "two_s", "n_levels", "interior_fraction"})) {
    const json& a = j["algebra"];
    r.number(a, "m", "algebra", c.algebra.m);
    r.number(a, "W", "algebra", c.algebra.W);
    r.integer(a, "two_s", "algebra", c.algebra.s.two_s);
    r.integer(a, "n_levels", "algebra", c.algebra.n_levels);
    r.number(a, "interior_fraction", "algebra", c.algebra.interior_fraction);
  }
  if (j.contains("tolerances") &&
      r.object(j["tolerances"], "tolerances", {"pass_tol", "fail_floor", "algebra_tol"})) {
    r.number(j["tolerances"], "pass_tol", "tolerances", c.tolerances.pass_tol);
    r.number(j["tolerances"], "fail_floor", "tolerances", c.tolerances.fail_floor);
    r.number(j["tolerances"], "algebra_tol", "tolerances", c.tolerances.algebra_tol);
  }
  if (j.contains("sampling") && r.object(j["sampling"], "sampling", {"random_words", "group_trials"})) {
    r.integer(j["sampling"], "random_words", "sampling", c.random_words);
    r.integer(j["sampling"], "group_trials", "sampling", c.group_trials);
  }
  if (j.contains("scattering") &&
      r.object(j["scattering"], "scattering",
               {"coupling", "n_per_axis", "n_max", "mass_v", "abel_epsilons", "quadrature", "convergence_rel"})) {
    const json& s = j["scattering"];
    auto& sc = c.scattering;
    r.number(s, "coupling", "scattering", sc.coupling);
    r.integer(s, "n_per_axis", "scattering", sc.n_per_axis);
    r.integer(s, "n_max", "scattering", sc.n_max);
    r.number(s, "mass_v", "scattering", sc.mass_v);
    r.numbers(s, "abel_epsilons", "scattering", sc.abel_epsilons);
    r.number(s, "convergence_rel", "scattering", sc.convergence_rel);
    if (s.contains("quadrature") &&
        r.object(s["quadrature"], "scattering.quadrature", {"step", "horizon_factor"})) {
      r.number(s["quadrature"], "step", "scattering.quadrature", sc.quadrature.step);
      r.number(s["quadrature"], "horizon_factor", "scattering.quadrature", sc.quadrature.horizon_factor);
    }
  }
  c.algebra.hbar = c.hbar;
  if (!d.empty()) throw ConfigError(std::move(d));
  validate(c);
  return c;
}

HarnessConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"config: cannot open '" + path + "'"});
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_json(const HarnessConfig& c) {
  json species = json::array();
  for (const auto& s : c.species)
    species.push_back({{"name", s.name},
                       {"mass", s.mass},
                       {"internal_energy", s.internal_energy},
                       {"two_s", s.spin.two_s},
                       {"statistics", s.statistics == Statistics::Bose ? "bose" : "fermi"},
                       {"antiparticle_of", s.antiparticle_of ? json(*s.antiparticle_of) : json(nullptr)},
                       {"xi", complex_json(s.xi)},
                       {"eta", complex_json(s.eta)}});
  const auto& sc = c.scattering;
  const json j = {
      {"schema", kConfigSchemaVersion},
      {"hbar", c.hbar},
      {"seed", c.seed},
      {"suites", c.suites},
      {"lattice", {{"box_length", c.box_length}, {"n_per_axis", c.n_per_axis}, {"n_max", c.n_max}}},
      {"species", species},
      {"algebra",
       {{"m", c.algebra.m},
        {"W", c.algebra.W},
        {"two_s", c.algebra.s.two_s},
        {"n_levels", c.algebra.n_levels},
        {"interior_fraction", c.algebra.interior_fraction}}},
      {"tolerances",
       {{"pass_tol", c.tolerances.pass_tol},
        {"fail_floor", c.tolerances.fail_floor},
        {"algebra_tol", c.tolerances.algebra_tol}}},
      {"sampling", {{"random_words", c.random_words}, {"group_trials", c.group_trials}}},
      {"scattering",
       {{"coupling", sc.coupling},
        {"n_per_axis", sc.n_per_axis},
        {"n_max", sc.n_max},
        {"mass_v", sc.mass_v},
        {"abel_epsilons", sc.abel_epsilons},
        {"quadrature", {{"step", sc.quadrature.step}, {"horizon_factor", sc.quadrature.horizon_factor}}},
        {"convergence_rel", sc.convergence_rel}}}};
  return j.dump(2);
}

}  // namespace gqft
