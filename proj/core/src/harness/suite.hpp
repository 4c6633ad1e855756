#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "gqft/harness.hpp"

namespace gqft::detail {

struct Outcome {
  Status status = Status::Fail;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

inline Outcome below(double r, double tol, std::string detail = {}) {
  return {std::isfinite(r) && r < tol ? Status::Pass : Status::Fail, r, tol, std::move(detail)};
}

inline Outcome above(double r, double floor, std::string detail = {}) {
  return {std::isfinite(r) && r > floor ? Status::Pass : Status::Fail, r, floor, std::move(detail)};
}

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

/// Runs registered checks of one suite, timing each and turning exceptions into failures.
class SuiteRun {
 public:
  explicit SuiteRun(std::string name) { rep_.name = std::move(name); }

  template <typename F>
  void check(const std::string& id, F&& fn) {
    const auto info = explain(id);
    if (!info || info->suite != rep_.name) throw std::logic_error("unregistered check " + id);
    CheckResult r;
    r.id = id;
    r.anchor = info->anchor;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      Outcome o = fn();
      r.status = o.status;
      r.residual = o.residual;
      r.tolerance = o.tolerance;
      r.detail = std::move(o.detail);
    } catch (const std::exception& e) {
      r.status = Status::Fail;
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep_.checks.push_back(std::move(r));
  }

  SuiteReport finish() {
    for (const auto& c : rep_.checks) {
      if (c.status == Status::Pass) ++rep_.passed;
      else if (c.status == Status::Fail) ++rep_.failed;
      else ++rep_.inconclusive;
      if (std::isfinite(c.residual)) rep_.max_residual = std::max(rep_.max_residual, c.residual);
      rep_.seconds += c.seconds;
    }
    return std::move(rep_);
  }

 private:
  SuiteReport rep_;
};

/// Value built on first use, so that setup failures surface inside a check.
template <typename T>
class Lazy {
 public:
  explicit Lazy(std::function<T()> make) : make_(std::move(make)) {}
  T& get() {
    if (!value_) value_.emplace(make_());
    return *value_;
  }

 private:
  std::function<T()> make_;
  std::optional<T> value_;
};

/// Lattice with the config geometry and the given species.
ModeLattice config_lattice(const HarnessConfig& cfg, std::vector<Species> species, int n_max = 0);
/// Species of the config that are not antiparticle entries.
std::vector<Species> particle_species(const HarnessConfig& cfg);
/// The species plus its antiparticle partner (taken from the config or built with mass -m).
std::vector<Species> with_partner(const HarnessConfig& cfg, const Species& s);

SuiteReport run_group(const HarnessConfig& cfg);
SuiteReport run_algebra(const HarnessConfig& cfg);
SuiteReport run_fock(const HarnessConfig& cfg);
SuiteReport run_fields(const HarnessConfig& cfg);
SuiteReport run_invariance(const HarnessConfig& cfg);
SuiteReport run_scattering(const HarnessConfig& cfg);

}  // namespace gqft::detail
