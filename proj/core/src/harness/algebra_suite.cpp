#include "suite.hpp"

namespace gqft::detail {

namespace {

AlgebraConfig algebra_config(const HarnessConfig& cfg, int two_s, int n_levels = 0) {
  AlgebraConfig a = cfg.algebra;
  a.hbar = cfg.hbar;
  a.s = SpinLabel{two_s};
  if (n_levels > 0) a.n_levels = n_levels;
  return a;
}

}  // namespace

SuiteReport run_algebra(const HarnessConfig& cfg) {
  SuiteRun run("algebra");
  const double tol = cfg.tolerances.algebra_tol;
  const GeneratorSet main = build_generators(algebra_config(cfg, cfg.algebra.s.two_s));

  run.check("def-liealg-brackets", [&] {
    const BracketReport rep = check_brackets(main, tol);
    std::string worst;
    double w = -1.0;
    for (const auto& [family, r] : rep.by_family())
      if (r > w) {
        w = r;
        worst = family;
      }
    return below(rep.max_interior(), tol,
                 std::to_string(rep.by_family().size()) + " families, n_levels " + std::to_string(main.cfg.n_levels) +
                     ", largest " + worst);
  });

  run.check("def-liealg-truncation-convergence", [&] {
    std::vector<double> probes;
    for (int n : {8, 12, 16})
      probes.push_back(check_brackets(build_generators(algebra_config(cfg, cfg.algebra.s.two_s, n)), tol).max_probe());
    const bool monotone = probes[1] < probes[0] && probes[2] < probes[1];
    Outcome o{monotone ? Status::Pass : Status::Fail, probes[2], probes[1],
              "probe residual n=8,12,16: " + fmt(probes[0]) + ", " + fmt(probes[1]) + ", " + fmt(probes[2])};
    return o;
  });

  run.check("def-liealg-jacobi", [&] { return below(jacobi_residual(main, 50, cfg.seed), tol, "50 triples"); });

  run.check("axiom-irred-generators", [&] {
    double worst = 0.0;
    for (const auto& [name, op] : main.named())
      worst = std::max(worst, max_abs(SparseOp(*op - SparseOp(op->adjoint()))));
    worst = std::max(worst, max_abs(SparseOp(main.M - sparse_identity(main.dim()) * cplx(main.cfg.m))));
    return below(worst, 1e-13, std::to_string(main.named().size()) + " generators");
  });

  run.check("thm-casimir-values", [&] {
    double q2 = 0.0, q3 = 0.0;
    for (int two_s : {0, 1, 2}) {
      const GeneratorSet g = build_generators(algebra_config(cfg, two_s));
      const Casimirs c = casimirs(g);
      const SparseOp id = sparse_identity(g.dim());
      const double m = g.cfg.m, s = 0.5 * two_s, hbar = g.cfg.hbar;
      q2 = std::max(q2, max_abs(SparseOp(c.Q2 - id * cplx(2 * m * g.cfg.W))));
      q3 = std::max(q3, interior_residual(g, SparseOp(c.Q3 - id * cplx(m * m * hbar * hbar * s * (s + 1)))));
    }
    Outcome o = below(std::max(q3, q2), tol, "Q2 " + fmt(q2) + " (full space), Q3 " + fmt(q3) + " (interior)");
    if (q2 >= 1e-13) o.status = Status::Fail;
    return o;
  });

  run.check("thm-casimir-centrality", [&] {
    double worst = 0.0;
    for (int two_s : {0, 1, 2})
      worst = std::max(worst, check_centrality(build_generators(algebra_config(cfg, two_s)), tol).max_interior());
    return below(worst, tol, "s = 0, 1/2, 1");
  });

  return run.finish();
}

}  // namespace gqft::detail
