#include "suite.hpp"

namespace gqft::detail {

namespace {

ModelSpec model_spec(const HarnessConfig& cfg, double coupling) {
  const ScatteringConfig& sc = cfg.scattering;
  ModelSpec spec = gali_lee_model(coupling, sc.n_per_axis, sc.n_max, sc.mass_v);
  spec.abel_epsilons = sc.abel_epsilons;
  spec.quadrature = sc.quadrature;
  spec.convergence_rel = sc.convergence_rel;
  return spec;
}

struct Solved {
  ModelSpec spec;
  Model model;
  SMatrixResult result;
};

Solved solve(const HarnessConfig& cfg, double coupling) {
  ModelSpec spec = model_spec(cfg, coupling);
  Model model = build_model(spec);
  SMatrixResult result = s_matrix(model, spec);
  return {std::move(spec), std::move(model), std::move(result)};
}

double diff(const SparseOp& a, const SparseOp& b) { return max_abs(SparseOp(a - b)); }

std::string ladder(const std::vector<EpsilonStage>& stages, double EpsilonStage::*field) {
  std::string out;
  for (const auto& s : stages) out += (out.empty() ? "" : ", ") + fmt(s.*field);
  return out;
}

}  // namespace

SuiteReport run_scattering(const HarnessConfig& cfg) {
  SuiteRun run("scattering");
  const double window = 5e-3;
  Lazy<Solved> gl([&] { return solve(cfg, cfg.scattering.coupling); });
  Lazy<Solved> free_model([&] { return solve(cfg, 0.0); });

  run.check("def-omeg-moller-operator", [&] {
    const Model& m = gl.get().model;
    const SparseOp id = sparse_identity(m.space.dim());
    double worst = diff(moller(m, 0.0), id);
    for (double t : {1.0, 10.0, -40.0, 320.0}) {
      const SparseOp om = moller(m, t);
      worst = std::max(worst, diff(SparseOp(om.adjoint()) * om, id));
    }
    return below(worst, 1e-10, "t = 0, 1, 10, -40, 320");
  });

  run.check("def-evolution-operator", [&] {
    const Model& m = gl.get().model;
    const SparseOp id = sparse_identity(m.space.dim());
    double worst = diff(evolution(m, 2.5, 2.5), id);
    worst = std::max(worst, diff(evolution(m, 3.0, 1.0) * evolution(m, 1.0, -2.0), evolution(m, 3.0, -2.0)));
    worst = std::max(worst, diff(evolution(m, 7.0, 0.0), moller(m, 7.0).adjoint() * moller(m, 0.0)));
    return below(worst, 1e-10);
  });

  run.check("def-scaop-free-limit", [&] {
    const Solved& f = free_model.get();
    return below(diff(f.result.S, sparse_identity(f.model.space.dim())), 1e-15, "coupling 0");
  });

  run.check("def-scaop-unitarity", [&] {
    const SMatrixResult& r = gl.get().result;
    return below(r.unitarity_defect, window,
                 std::to_string(r.converged.size()) + " converged columns, epsilon " +
                     fmt(gl.get().spec.abel_epsilons.back()));
  });

  run.check("def-scaop-abel-ladder-monotone", [&] {
    const SMatrixResult& r = gl.get().result;
    const auto& st = r.stages;
    return Outcome{r.defect_monotone ? Status::Pass : Status::Fail, st.back().unitarity_defect,
                   st[st.size() - 2].unitarity_defect,
                   "defect down the ladder: " + ladder(st, &EpsilonStage::unitarity_defect)};
  });

  run.check("def-scaop-energy-conservation", [&] {
    const SMatrixResult& r = gl.get().result;
    Outcome o = below(r.stages.back().energy_commutator, window,
                      "|[S, H0]| down the ladder: " + ladder(r.stages, &EpsilonStage::energy_commutator));
    if (!r.energy_commutator_monotone) o.status = Status::Fail;
    return o;
  });

  run.check("def-scaop-intertwining", [&] {
    const SMatrixResult& r = gl.get().result;
    const auto& st = r.stages;
    return Outcome{r.intertwining_monotone ? Status::Pass : Status::Fail, st.back().intertwining,
                   st[st.size() - 2].intertwining, "down the ladder: " + ladder(st, &EpsilonStage::intertwining)};
  });

  run.check("def-scaop-convergence-flags", [&] {
    const SMatrixResult& r = gl.get().result;
    Outcome o = below(static_cast<double>(r.unconverged.size()), 0.5,
                      std::to_string(r.converged.size()) + " converged, " + std::to_string(r.unconverged.size()) +
                          " unconverged columns");
    o.status = r.flags_stable ? Status::Pass : Status::Fail;
    if (!r.unconverged.empty() && r.flags_stable) o.detail += "; flags stable";
    return o;
  });

  run.check("def-smatr-transition-amplitude", [&] {
    const Solved& s = gl.get();
    const CMatrix dense = CMatrix(s.result.S);
    double worst = 0.0;
    std::size_t n = 0;
    for (std::size_t c = 0; c < s.result.converged.size() && n < 6; c += s.result.converged.size() / 6 + 1) {
      const Eigen::Index alpha = s.result.converged[c];
      Eigen::Index beta = alpha;
      double big = -1.0;
      for (Eigen::Index i = 0; i < dense.rows(); ++i)
        if (i != alpha && std::abs(dense(i, alpha)) > big) {
          big = std::abs(dense(i, alpha));
          beta = i;
        }
      for (Eigen::Index b : {alpha, beta}) {
        const cplx direct = s_element_by_states(s.model, s.spec.abel_epsilons.back(), s.spec.quadrature, b, alpha);
        worst = std::max(worst, std::abs(direct - dense(b, alpha)));
      }
      ++n;
    }
    return below(worst, 1e-10, std::to_string(2 * n) + " elements from Omega_out and Omega_in states");
  });

  run.check("def-asicon-asymptotic-normalization", [&] {
    const Solved& s = gl.get();
    const NormalizationReport rep = asymptotic_normalization_check(s.model, s.spec, s.result, window);
    Outcome o = below(std::max(rep.in_defect, rep.out_defect), window,
                      "in " + fmt(rep.in_defect) + ", out " + fmt(rep.out_defect) + ", vacuum overlap " +
                          fmt(rep.vacuum_overlap));
    if (!rep.passed) o.status = Status::Fail;
    return o;
  });

  run.check("axiom-asymptotic-free-fields", [&] {
    const Solved& f = free_model.get();
    const SparseOp id = sparse_identity(f.model.space.dim());
    double worst = 0.0;
    for (const auto& st : f.result.stages) worst = std::max(worst, diff(st.omega_in, id));
    for (double t : {-50.0, 3.0, 200.0}) worst = std::max(worst, diff(moller(f.model, t), id));
    return below(worst, 1e-15, "coupling 0");
  });

  run.check("thm-super-block-diagonal", [&] {
    const Solved& s = gl.get();
    const auto h = superselection_report(s.model.H, s.model.space);
    const auto sm = superselection_report(s.result.S, s.model.space);
    return below(std::max(h.max_off_block, sm.max_off_block), 1e-15,
                 std::to_string(h.sectors) + " total-mass sectors");
  });

  run.check("thm-mass-conservation", [&] {
    const Solved& s = gl.get();
    const double h = mass_commutator(s.model.H, s.model.space).norm;
    const double sm = mass_commutator(s.result.S, s.model.space).norm;
    return below(std::max(h, sm), 1e-12, "[H, M] " + fmt(h) + ", [S, M] " + fmt(sm));
  });

  run.check("thm-nocopar-s-matrix-number", [&] {
    const Solved& s = gl.get();
    return above(superselection_report(s.result.S, s.model.space).number_commutator, 1e-3, "||[S, N]||_F");
  });

  return run.finish();
}

}  // namespace gqft::detail
