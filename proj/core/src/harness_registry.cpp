#include "gqft/harness.hpp"

namespace gqft {

const std::vector<CheckInfo>& check_registry() {
  static const std::vector<CheckInfo> reg{
      // group
      {"group-multiplication-law", "group", "group-multiplication-law",
       "g2 g1 = (b2 + b1, a2 + R2 a1 + b1 v2, v2 + R2 v1, R2 R1) = 5x5 product; (g3 g2) g1 = g3 (g2 g1)"},
      {"group-identity-inverse", "group", "group-identity-inverse", "e g = g e = g; g g^-1 = g^-1 g = e"},
      {"group-coordinate-action", "group", "group-coordinate-action",
       "x' = R x + v t + a, t' = t + b; (g2 g1) x = g2 (g1 x)"},
      {"group-projective-cocycle", "group", "group-projective-phases",
       "m gamma(g2 g1; x) = m gamma(g1; x) + m gamma(g2; g1 x) + zeta(g2, g1)"},
      {"thm-invariant-measure-mode-permutation", "group", "thm-invariant-measure",
       "k -> wrap(R k + m v / dp) is a permutation of the momentum lattice for every species"},
      {"spin-homomorphism-unitarity", "group", "thm-repre-rotation-representation",
       "D(R1 R2) = D(R1) D(R2), D^dagger D = 1 for s <= 4; D(2 pi) = (-1)^(2s)"},
      {"spin-conjugation-matrix", "group", "thm-alpha-conjugation-matrix",
       "C^* C = (-1)^(2s), C^dagger C = 1, D^* = C D C^-1 for s <= 4"},
      {"spin-angular-momentum-algebra", "group", "def-liealg-angular-momentum",
       "[J_i, J_j] = i hbar eps_ijk J_k, J^2 = hbar^2 s(s+1)"},
      // algebra
      {"def-liealg-brackets", "algebra", "def-liealg-commutation-rules",
       "ten bracket families of {H, P, K, J, M} on the interior block"},
      {"def-liealg-truncation-convergence", "algebra", "def-liealg-commutation-rules",
       "probe residual of the bracket table strictly decreases for n_levels = 8, 12, 16"},
      {"def-liealg-jacobi", "algebra", "def-liealg-commutation-rules",
       "[A, [B, C]] + [B, [C, A]] + [C, [A, B]] = 0 for random generator triples"},
      {"axiom-irred-generators", "algebra", "axiom-irred-generators",
       "H, P_i, K_i, J_i, M Hermitian; M = m 1"},
      {"thm-casimir-values", "algebra", "thm-casimir-invariants",
       "Q2 = 2 M H - P^2 = 2 m W 1; Q3 = (M J - K x P)^2 = m^2 hbar^2 s(s+1) 1 for s in {0, 1/2, 1}"},
      {"thm-casimir-centrality", "algebra", "thm-casimir-invariants", "[Q_k, G] = 0 for every generator G"},
      // fock
      {"axiom-espest-vacuum", "fock", "axiom-espest-vacuum",
       "<0|0> = 1; a(q)|0> = 0 for every mode; N|0> = H0|0> = 0"},
      {"thm-gral-basis-generation", "fock", "thm-gral-basis-generation",
       "{psi^+(x1) ... psi^+(xN)|0>, N <= N_max} spans the truncated Fock space"},
      {"thm-sime-exchange-symmetry", "fock", "thm-sime-exchange-symmetry",
       "psi^+(x) psi^+(y)|0> = +/- psi^+(y) psi^+(x)|0>"},
      {"thm-acpsi-position-state", "fock", "thm-acpsi-position-state",
       "psi_lambda(x) psi^+_lambda(x)|0> = (n/L)^3 |0>"},
      {"thm-crea-creation-action", "fock", "thm-crea-creation-action",
       "matrix of a^dagger(q) equals the ladder action on every basis state"},
      {"thm-crea-annihilation-sum", "fock", "thm-crea-annihilation-sum",
       "a(k) a^+(q1)..a^+(qN)|0> = sum_r (+/-)^(r+1) delta(k, q_r) a^+(q1)..^r..a^+(qN)|0>"},
      {"thm-norm-orthonormality", "fock", "thm-norm-orthonormality",
       "<q'_1..q'_N|q_1..q_M> = delta_NM sum_P (+/-)^P prod delta(q_i, q'_P(i))"},
      {"thm-comm-canonical-rules", "fock", "thm-comm-operator-coefficients",
       "[a(k'), a^+(k)]-/+ = delta, [a, a]-/+ = [a^+, a^+]-/+ = 0 on sub-cap states"},
      {"thm-autoad-adjointness", "fock", "thm-autoad-adjointness",
       "a^dagger(q) = a(q)^dagger; <u|a^+ v> = <a u|v>"},
      {"thm-acce-accessible-states", "fock", "thm-acce-accessible-states",
       "basis = symmetric (Bose) and antisymmetric (Fermi) states only; dim = combinatorial count"},
      {"def-numoper-number-operator", "fock", "def-numoper-number-operator",
       "N = sum_q a^+(q) a(q) = diag(quanta); [N, a^+(q)] = a^+(q)"},
      {"axiom-oper-irreducibility", "fock", "axiom-oper-irreducibility",
       "rank{a^+^n a^m : n, m <= 2} = 9 on one Bose mode with N_max = 2"},
      {"def-free-hamiltonian", "fock", "def-free-hamiltonian",
       "H0 diagonal, H0|0> = 0, one particle p^2/2m + W, additive over particles"},
      {"thm-on-shell-condition", "fock", "thm-on-shell-condition", "E - p^2/2m = W on every one-particle state"},
      // fields
      {"def-destf-annihilation-field", "fields", "def-destf-annihilation-field",
       "psi^-(x,t) = L^-3/2 sum_p exp(i(E t - p.x)/hbar) a(p); psi^-|0> = 0"},
      {"def-creaf-creation-field", "fields", "def-creaf-creation-field", "psi^+ = (psi^-)^dagger"},
      {"def-gener-general-field", "fields", "def-gener-general-field", "psi = xi psi^- + eta psi^{-c dagger}"},
      {"def-antiparticle-partner", "fields", "def-antiparticle-partner",
       "partner of mass -m with equal spin and statistics; absent or wrong-mass partner is rejected"},
      {"axiom-field-time-dependence", "fields", "axiom-field-amplitude",
       "psi(x,t) = exp(-i H0 t/hbar) psi(x,0) exp(i H0 t/hbar), consistent with the exp(+iEt) mode functions"},
      {"axiom-causa-equal-time-rules", "fields", "axiom-causa-equal-time-rules",
       "[psi_l(x), psi^+_l'(y)]-/+ = delta_ll' delta_xy (n/L)^3; [psi, psi]-/+ = 0"},
      {"thm-comgen-commutator", "fields", "thm-comgen-commutator",
       "[psi_l(x), psi^+_l'(y)]-/+ = (|xi|^2 -/+ |eta|^2) delta_ll' delta_xy (n/L)^3"},
      {"thm-stat-no-statistics", "fields", "thm-stat-crossing-statistics",
       "the general-field rule holds with both signs for the same spin and for |xi| != |eta|"},
      {"axiom-irred-vacuum-invariance", "fields", "axiom-irred-vacuum", "U(g)|0> = |0>; M|0> = 0"},
      {"thm-repre-representation-action", "fields", "thm-repre-representation-action",
       "U(g) unitary; U(g)|p,lambda> in span{|R p + m v, lambda'>}"},
      {"thm-trans-creation-operator-law", "fields", "thm-trans-creation-operator-law",
       "U a^+(p,l) U^-1 = exp(-i(E' b - p'.a)/hbar) sum_l' D_l'l(R) a^+(p',l')"},
      {"thm-transa-annihilation-operator-law", "fields", "thm-transa-annihilation-operator-law",
       "U a(p,l) U^-1 = exp(i(E' b - p'.a)/hbar) sum_l' D_ll'(R^-1) a(p',l')"},
      {"thm-alpha-beta-law", "fields", "thm-alpha-beta-law",
       "beta^+(p,l) = sum (D(R^-1) C^-1)_ll' b^+(p,l') transforms with exp(-i(E' b - p'.a)/hbar) D(R^-1)"},
      {"thm-transc-phase-identity", "fields", "thm-transc-phase-identity",
       "D(R)^T = C D(R^-1) C^-1 for s <= 4"},
      {"axiom-ftran-local-transformation", "fields", "axiom-ftran-local-transformation",
       "U psi^-_l(x,t) U^-1 = exp(i m gamma/hbar) sum D_ll'(R^-1) psi^-_l'(x',t')"},
      {"thm-psidag-creation-law", "fields", "thm-psidag-creation-law",
       "U psi^+_l(x,t) U^-1 = exp(-i m gamma/hbar) sum D^*_ll'(R^-1) psi^+_l'(x',t')"},
      {"thm-transc-antiparticle-law", "fields", "thm-transc-antiparticle-law",
       "U psi^{-c+}_l(x,t) U^-1 = exp(-i(-m) gamma/hbar) sum D_ll'(R^-1) psi^{-c+}_l'(x',t')"},
      {"thm-gener-general-field-law", "fields", "def-gener-transformation",
       "U psi_l(x,t) U^-1 = exp(i m gamma/hbar) sum D_ll'(R^-1) psi_l'(x',t') for psi = xi psi^- + eta psi^{-c+}"},
      {"proof-ftran-phase-cancellation", "fields", "proof-ftran-phase-cancellation",
       "E' t' - p'.x' = (E t - p.x) + (E' b - p'.a) - m gamma(g; x, t) for p' = R p + m v"},
      {"proof-pairw-phase-cancellation", "fields", "proof-pairw-phase-cancellation",
       "U rho(x) U^-1 = rho(x') for rho = sum_l psi^+_l psi_l at one point"},
      {"group-projective-representation", "fields", "group-projective-phases",
       "U(g2) U(g1) = exp(i zeta(g2, g1) M / hbar) U(g2 g1)"},
      {"thm-non-hermiticity", "fields", "thm-non-hermiticity",
       "||U (psi + psi^+) U^-1 - e^{i m gamma}(psi + psi^+)(x')|| >= 2|sin(m gamma/hbar)| ||psi^+||; 0 with the phase zeroed"},
      {"thm-dife-equation-of-motion", "fields", "thm-dife-equation-of-motion",
       "i hbar d psi/dt = [psi, H]; finite-difference residual ratio dt : dt/2 in [3.2, 4.8]"},
      // invariance
      {"thm-pairw-density-invariant", "invariance", "thm-pairw-pairwise-action",
       "U rho U^-1 = rho for rho = sum_x psi^+(x) psi(x)"},
      {"thm-pairw-two-body-invariant", "invariance", "thm-pairw-pairwise-action",
       "U V U^-1 = V for V = 1/2 sum V(|x-y|) psi^+(x) psi^+(y) psi(y) psi(x), kinematic g"},
      {"thm-pairw-unpaired-not-invariant", "invariance", "thm-pairw-pairwise-action",
       "sum_x psi^+(x) and sum_x psi^+(x) psi(x+d) are not invariant"},
      {"thm-pairw-coefficient-covariance", "invariance", "thm-pairw-coefficient-covariance",
       "C(R x', R x) = D ... D C(x', x) for the two-body coefficients under the 24 cube rotations"},
      {"thm-conpar-number-conservation", "invariance", "thm-conpar-number-conservation",
       "[O, N] = 0 for the pairwise operators"},
      {"thm-nocon-mass-sum-rule", "invariance", "thm-nocon-mass-sum-rule",
       "psi^+_V psi_N psi_theta + h.c. invariant iff m_V = m_N + m_theta"},
      {"thm-nocopar-number-violation", "invariance", "thm-nocopar-number-violation",
       "||[O, N]|| > 0.5 for the production operator on the L = 1, n = 1 lattice"},
      {"thm-super-unitary-block-diagonal", "invariance", "thm-super-mass-superselection",
       "U(g) has no entries between different total-mass sectors"},
      // scattering
      {"def-omeg-moller-operator", "scattering", "def-omeg-moller-operator",
       "Omega(t) = exp(iHt/hbar) exp(-iH0 t/hbar); Omega(0) = 1; Omega^dagger Omega = 1"},
      {"def-evolution-operator", "scattering", "def-evolution-operator",
       "U(t,t0) = Omega(t)^dagger Omega(t0); U(t,t1) U(t1,t0) = U(t,t0); U(t,t) = 1"},
      {"def-scaop-free-limit", "scattering", "def-scaop-scattering-operator", "V = 0 gives S = 1 exactly"},
      {"def-scaop-unitarity", "scattering", "def-scaop-scattering-operator",
       "max |S^dagger S - 1| < 5e-3 on the converged subspace"},
      {"def-scaop-abel-ladder-monotone", "scattering", "def-scaop-scattering-operator",
       "unitarity defect strictly decreases down the Abel epsilon ladder"},
      {"def-scaop-energy-conservation", "scattering", "def-scaop-scattering-operator",
       "max |[S, H0]| < 5e-3 on the converged subspace, decreasing down the ladder"},
      {"def-scaop-intertwining", "scattering", "def-scaop-scattering-operator",
       "||H Omega_in - Omega_in H0|| strictly decreases down the ladder"},
      {"def-scaop-convergence-flags", "scattering", "def-scaop-scattering-operator",
       "unconverged column set identical for the two finest epsilon pairs"},
      {"def-smatr-transition-amplitude", "scattering", "def-smatr-transition-amplitude",
       "<beta|S|alpha> = out<beta|alpha>in"},
      {"def-asicon-asymptotic-normalization", "scattering", "def-asicon-asymptotic-states",
       "in<a|b>in = out<a|b>out = <a|b> within 5e-3 on the converged subspace; vacuum overlap 1"},
      {"axiom-asymptotic-free-fields", "scattering", "axiom-asymptotic-free-fields",
       "V = 0: Omega_in = Omega_out = 1, in and out states equal the free states"},
      {"thm-super-block-diagonal", "scattering", "thm-super-mass-superselection",
       "H and S have no entries between different total-mass sectors"},
      {"thm-mass-conservation", "scattering", "thm-mass-conservation", "[H, M] = [S, M] = 0"},
      {"thm-nocopar-s-matrix-number", "scattering", "thm-nocopar-number-violation", "||[S, N]|| > 0"},
  };
  return reg;
}

std::vector<CheckInfo> enumerate_checks(const std::vector<std::string>& suites) {
  std::vector<CheckInfo> out;
  for (const auto& name : suite_names()) {
    bool selected = false;
    for (const auto& s : suites) selected = selected || s == name;
    if (!selected) continue;
    for (const auto& c : check_registry())
      if (c.suite == name) out.push_back(c);
  }
  return out;
}

std::optional<CheckInfo> explain(const std::string& id) {
  for (const auto& c : check_registry())
    if (c.id == id) return c;
  return std::nullopt;
}

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Inconclusive: return "inconclusive";
  }
  return "?";
}

}  // namespace gqft
