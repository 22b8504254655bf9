// Godement-Jacquet and Ginzburg-Kaplan gamma factors and their properties.
#pragma once

#include <string>

#include "gkb/characters.hpp"
#include "gkb/report.hpp"

namespace gkb {

struct GammaValue {
  ScaledCyclotomic value;
  std::string pi, tau;
  Elem psi = 1;
  std::string definition;

  nlohmann::json to_json() const;
};

// q^{-c^2/2} / dim * sum_g alpha_a(det g) psi(tr g^{-1}) chi(g).
ScaledCyclotomic gj_gamma_of_char(Workbench& W, const ClassFunction& chi, int twist = 0,
                                  Elem psi = 1);
// q^{(k-2)c^2/2} / dim * sum_h B(h) chi(h).
ScaledCyclotomic gk_gamma_of_char(Workbench& W, const ClassFunction& chi, const ClassFunction& B,
                                  int k);

GammaValue gamma_gj(Workbench& W, const RepSpec& pi, Elem psi = 1);
GammaValue gamma_gj_twisted(Workbench& W, const RepSpec& pi, int twist, Elem psi = 1);
GammaValue gamma_gk(Workbench& W, const RepSpec& pi, const GenericSpec& tau, Elem psi = 1);
// omega_pi(-1)^{k-1} Gamma(pi, tau, psi).
GammaValue gamma_gk_tilde(Workbench& W, const RepSpec& pi, const GenericSpec& tau, Elem psi = 1);

// Gamma(pi^vee, tau^vee, psi^{-1}) = conj(Gamma(pi, tau, psi)).
CheckReport check_contragredient(Workbench& W, const RepSpec& pi, const GenericSpec& tau,
                                 Elem psi = 1);
// Gamma conj(Gamma) = 1 when the supports of pi and tau^vee are disjoint; skipped otherwise.
CheckReport check_gamma_norm(Workbench& W, const RepSpec& pi, const GenericSpec& tau,
                             Elem psi = 1);

// Parabolic factorizations pi in pi_1 o pi_2 of the irreducible GL_2 specs.
struct RepFactorization {
  RepSpec pi, pi1, pi2;
};
std::vector<RepFactorization> gl2_factorizations(int q);
// Splittings of a generic support into two nonempty generic sub-supports.
std::vector<std::pair<GenericSpec, GenericSpec>> generic_splittings(int q, const GenericSpec& tau);

// Gamma_GJ and its twists are multiplicative over gl2_factorizations.
CheckReport check_gj_multiplicativity(Workbench& W, Elem psi = 1);
// gamma~(pi, tau) = gamma~(pi, tau_1) gamma~(pi, tau_2) over the given pis and taus.
CheckReport check_gk_multiplicativity_second(Workbench& W, const std::vector<RepSpec>& pis,
                                             const std::vector<GenericSpec>& taus, Elem psi = 1);
// Gamma(pi, tau) = Gamma(pi_1, tau) Gamma(pi_2, tau) over gl2_factorizations.
CheckReport check_gk_multiplicativity_first(Workbench& W, const std::vector<GenericSpec>& taus,
                                            Elem psi = 1);
// k = 1: Gamma(pi, gl1(a)) = gamma(pi x alpha_a).
CheckReport check_gk_k1_bridge(Workbench& W, const std::vector<RepSpec>& pis, Elem psi = 1);

// B_Sigma(h) = q^{-c^2} sum_{xy = -h} B_Sigma1(x) B_Sigma2(y) for each splitting of tau.
CheckReport check_convolution_lemma(Workbench& W, const GenericSpec& tau, int c, Elem psi = 1);
// q^{-c1 c2} sum_n B(n diag(h1, h2)) = q^{-c1 c2 (k-1)} B(h1) B(h2) for c1 = c2 = 1.
CheckReport check_unipotent_average(Workbench& W, const GenericSpec& tau, Elem psi = 1);

}  // namespace gkb
