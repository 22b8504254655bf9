// Fourier transform on M_c, zeta operators as trace profiles, functional equations, the converse
// scan and the c = 2 special-value formula for cuspidal tau.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gkb/characters.hpp"
#include "gkb/report.hpp"
#include "gkb/whittaker.hpp"

namespace gkb {

// Function on M_c(F_q), indexed by Mat::code.
using MatFunction = std::vector<ScaledCyclotomic>;
// x -> tr(A pi(x)) for every x in GL_c, in ElementTable order.
using TraceProfile = std::vector<ScaledCyclotomic>;

MatFunction delta_function(Workbench& W, int c, const Mat& A);
// F_psi f(X) = q^{-c^2/2} sum_Y f(Y) psi(tr XY).
MatFunction fourier_transform(Workbench& W, const MatFunction& f, int c, Elem psi = 1);
// F_{psi^{-1}} F_psi = id and F_psi F_psi f = f(-X) on the delta basis, or on that many seeded
// deltas when samples > 0.
CheckReport check_fourier_inversion(Workbench& W, int c, Elem psi = 1, int samples = 0,
                                    uint64_t seed = 1);

// Profile of sum_g coeff(g) pi(g) over GL_c; with contragredient, pi^vee(g) = pi(g^{-T}).
TraceProfile operator_profile(Workbench& W, const std::vector<ScaledCyclotomic>& coeff,
                              const ClassFunction& chi, bool contragredient = false);

// Z(f, pi x chi) = sum_g f(g) chi(det g) pi(g) as a trace profile.
TraceProfile gj_zeta_profile(Workbench& W, const MatFunction& f, const ClassFunction& chi_pi,
                             int twist);
// Z(tF_psi f, pi^vee x chi^{-1}) = gamma(pi x chi) Z(f, pi x chi) over the delta basis.
CheckReport check_macdonald_fe(Workbench& W, const RepSpec& pi, int twist, Elem psi = 1);

// Right translate W_h(g) = BS(g h) of the Bessel-Speh function.
struct WhittakerSample {
  std::string name;
  Mat h;
};
// Identity, every class representative of GL_{kc} (when requested) and seeded random elements.
std::vector<WhittakerSample> whittaker_samples(Workbench& W, int n, bool class_translates,
                                               int random_count, uint64_t seed);

// Coefficients over GL_c (ElementTable order) of Z_j(W) and Z*_j(W), including normalizations.
struct ZetaCoefficients {
  int j = 0;
  std::vector<ScaledCyclotomic> z, z_star;
};
ZetaCoefficients gk_zeta_coefficients(const BesselSpeh& bs, const Mat& h, int j);
Mat zeta_element(int k, int c, int j, const Mat& g, const Mat& X);
Mat dual_zeta_element(int k, int c, int j, const Mat& g, const Mat& X);

struct KaplanOptions {
  bool class_translates = true;
  int random_translates = 8;
  uint64_t seed = 1;
  Elem psi = 1;
  bool dual_data_identity = true;
  // Bessel-Speh evaluations times |N_{(c^k)}| allowed for each non-identity translate.
  uint64_t translate_budget = 100'000'000;
};
// Estimated cost of one non-identity translate in the units of translate_budget.
uint64_t translate_cost(int q, int k, int c);
// Z*_j(W, pi x tau) = Gamma(pi, tau) Z_j(W, pi x tau) for every gated pi, sampled W and j.
CheckReport check_kaplan_fe(Workbench& W, const GenericSpec& tau, int c,
                            const std::vector<RepSpec>& pis, const KaplanOptions& opt);
// Function variant with f over the delta basis, plus Z_{k-2}(W, f) = Z_{k-2}(W_{F f}).
CheckReport check_fe_with_function(Workbench& W, const GenericSpec& tau, int c,
                                   const std::vector<RepSpec>& pis, const KaplanOptions& opt);

// Generic taus of GL_k with equal central characters are told apart by some B value at c = 1.
CheckReport converse_scan(Workbench& W, int k, Elem psi = 1);

// Special value of BS for cuspidal tau at c = 2 through Bessel functions of tau.
CheckReport check_appendix_c2(Workbench& W, const GenericSpec& tau, int random_count,
                              uint64_t seed, Elem psi = 1);

}  // namespace gkb
