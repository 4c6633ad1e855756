#include <limits>

#include "suite.hpp"

namespace gqft::detail {

namespace {

Species scalar(const std::string& name, double m) {
  Species s;
  s.name = name;
  s.mass = m;
  return s;
}

ModeLattice production_lattice(const HarnessConfig& cfg, double mass_v, double box_length, int n_per_axis) {
  return ModeLattice(box_length, n_per_axis, {scalar("theta", 1.0), scalar("N", 1.0), scalar("V", mass_v)},
                     std::min(cfg.n_max, 2), cfg.hbar);
}

struct SpeciesReports {
  std::string name;
  std::vector<InvarianceReport> reports;  // density, two-body, lone creation, displaced pair
};

// Max entry of `o` joining basis states of different total mass.
double off_sector(const SparseOp& o, const std::vector<double>& mass) {
  double worst = 0.0;
  for (Eigen::Index k = 0; k < o.outerSize(); ++k)
    for (SparseOp::InnerIterator it(o, k); it; ++it)
      if (std::abs(mass[static_cast<std::size_t>(it.row())] - mass[static_cast<std::size_t>(it.col())]) > 1e-9)
        worst = std::max(worst, std::abs(it.value()));
  return worst;
}

}  // namespace

SuiteReport run_invariance(const HarnessConfig& cfg) {
  SuiteRun run("invariance");
  const double pass_tol = cfg.tolerances.pass_tol;
  const double fail_fraction = cfg.tolerances.fail_floor;

  Lazy<std::vector<FockSpace>> spaces([&] {
    std::vector<FockSpace> out;
    for (const auto& s : particle_species(cfg)) out.emplace_back(config_lattice(cfg, {s}));
    return out;
  });
  Lazy<std::vector<SpeciesReports>> pairwise([&] {
    std::vector<SpeciesReports> out;
    for (const auto& space : spaces.get()) {
      const auto samples = sample_elements(space.lattice(), cfg.seed, cfg.random_words);
      out.push_back({space.lattice().species(0).name, check_pairwise_theorem(space, samples, pass_tol, fail_fraction)});
    }
    return out;
  });

  auto invariant_check = [&](std::size_t which) {
    double worst = 0.0;
    std::string detail;
    bool ok = true;
    for (const auto& p : pairwise.get()) {
      const auto& r = p.reports[which];
      worst = std::max(worst, r.max_residual);
      ok = ok && r.verdict == Verdict::Invariant;
      detail += p.name + ": " + to_string(r.verdict) + " over " + std::to_string(r.residuals.size()) + " samples; ";
    }
    Outcome o = below(worst, pass_tol, detail);
    if (!ok) o.status = Status::Fail;
    return o;
  };

  run.check("thm-pairw-density-invariant", [&] { return invariant_check(0); });
  run.check("thm-pairw-two-body-invariant", [&] { return invariant_check(1); });

  run.check("thm-pairw-unpaired-not-invariant", [&] {
    double weakest = std::numeric_limits<double>::infinity();
    bool ok = true;
    std::string detail;
    for (const auto& p : pairwise.get())
      for (std::size_t i : {2u, 3u}) {
        const auto& r = p.reports[i];
        weakest = std::min(weakest, r.max_residual / r.op_norm);
        ok = ok && r.verdict == Verdict::NonInvariant;
        detail += p.name + "/" + r.name + ": " + to_string(r.verdict) + "; ";
      }
    Outcome o = above(weakest, fail_fraction, detail + "relative residual");
    if (!ok) o.status = Status::Fail;
    return o;
  });

  run.check("thm-pairw-coefficient-covariance", [&] {
    double worst = 0.0;
    for (const auto& space : spaces.get()) {
      const ModeLattice& lat = space.lattice();
      const auto two_body = two_body_polynomial(lat, 0, 0.5, 1.0);
      const auto density = density_polynomial(lat, 0);
      for (const auto& r : octahedral_rotations()) {
        worst = std::max(worst, coefficient_covariance_check(two_body, r, lat, 1e-12).max());
        worst = std::max(worst, coefficient_covariance_check(density, r, lat, 1e-12).max());
      }
    }
    return below(worst, 1e-12, "24 rotations, density and two-body coefficients");
  });

  run.check("thm-conpar-number-conservation", [&] {
    double worst = 0.0;
    for (const auto& space : spaces.get()) {
      const ModeLattice& lat = space.lattice();
      worst = std::max(worst, number_commutator(realize(density_polynomial(lat, 0), space), space).norm);
      worst = std::max(worst, number_commutator(realize(two_body_polynomial(lat, 0, 0.5, 1.0), space), space).norm);
    }
    return below(worst, pass_tol);
  });

  run.check("thm-nocon-mass-sum-rule", [&] {
    const FockSpace good(production_lattice(cfg, 2.0, cfg.box_length, cfg.n_per_axis));
    const FockSpace bad(production_lattice(cfg, 2.5, cfg.box_length, cfg.n_per_axis));
    const auto g = check_mass_sum_rule(good, sample_elements(good.lattice(), cfg.seed, cfg.random_words), "V", "N",
                                       "theta", pass_tol, fail_fraction);
    const auto b = check_mass_sum_rule(bad, sample_elements(bad.lattice(), cfg.seed, cfg.random_words), "V", "N",
                                       "theta", pass_tol, fail_fraction);
    Outcome o = below(g.max_residual, pass_tol,
                      std::string("m_V = 2: ") + to_string(g.verdict) + "; m_V = 2.5: " + to_string(b.verdict) +
                          " (relative residual " + fmt(b.max_residual / b.op_norm) + ")");
    if (g.verdict != Verdict::Invariant || b.verdict != Verdict::NonInvariant) o.status = Status::Fail;
    return o;
  });

  run.check("thm-nocopar-number-violation", [&] {
    const FockSpace space(production_lattice(cfg, 2.0, 1.0, 1));
    const SparseOp o = realize(production_polynomial(space.lattice(), 2, 1, 0, 1.0), space);
    return above(number_commutator(o, space).norm, 0.5, "||[O, N]||_F, dim " + std::to_string(space.dim()));
  });

  run.check("thm-super-unitary-block-diagonal", [&] {
    std::vector<FockSpace> mixed;
    mixed.emplace_back(production_lattice(cfg, 2.0, cfg.box_length, cfg.n_per_axis));
    mixed.emplace_back(config_lattice(cfg, with_partner(cfg, particle_species(cfg).front())));
    double worst = 0.0;
    std::size_t n = 0;
    for (const auto& space : mixed) {
      const auto mass = space.total_mass();
      for (const auto& s : sample_elements(space.lattice(), cfg.seed, cfg.random_words)) {
        worst = std::max(worst, off_sector(sample_unitary(s, space), mass));
        ++n;
      }
    }
    return below(worst, 1e-14, std::to_string(n) + " unitaries on mixed-mass spaces");
  });

  return run.finish();
}

}  // namespace gqft::detail
