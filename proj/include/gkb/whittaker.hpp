// psi-characters of (k,c) unipotent radicals, Bessel and Bessel-Speh functions, special values.
#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "gkb/characters.hpp"

namespace gkb {

// psi_(k,c)(u) = psi_t(sum of traces of the superdiagonal c x c blocks).
class PsiKC {
 public:
  PsiKC(WorkbenchPtr W, int k, int c, Elem t = 1);

  int k() const { return k_; }
  int c() const { return c_; }
  Elem twist() const { return t_; }
  // Exponent of zeta_m.
  int64_t exponent(const Mat& u) const;
  ScaledCyclotomic value(const Mat& u) const;

 private:
  WorkbenchPtr W_;
  int k_, c_;
  Elem t_;
};

// (1/|N|) sum_{u in N_(c^k)} chi(g u) psi_(k,c)^{-1}(u) for a class function chi on GL_{kc}.
// An optional resolver from GroupContext::value_resolver merges classes on which chi agrees.
ScaledCyclotomic projector_trace(Workbench& W, const ClassFunction& chi, int k, int c, Elem t,
                                 const Mat& g, const std::vector<int32_t>* resolver = nullptr);

// Normalized Bessel function of a generic representation given by its character.
ScaledCyclotomic bessel_J(Workbench& W, const ClassFunction& chi, const Mat& g, Elem t = 1);

// Character of the induction of the cuspidal support of tau with every datum repeated c times.
ClassFunction bs_induction_char(Workbench& W, const GenericSpec& tau, int c);
// Character of Speh(tau, c), an induction of the Speh representations of the distinct cuspidal
// data; cached per (q, tau, c).
const ClassFunction& speh_char(Workbench& W, const GenericSpec& tau, int c);

class BesselSpeh {
 public:
  // Throws std::logic_error when BS(1) != 1.
  BesselSpeh(WorkbenchPtr W, GenericSpec tau, int c, Elem t = 1);

  int k() const { return k_; }
  int c() const { return c_; }
  Elem twist() const { return t_; }
  const GenericSpec& tau() const { return tau_; }
  const ClassFunction& character() const { return *chi_; }
  const WorkbenchPtr& workbench() const { return W_; }

  ScaledCyclotomic operator()(const Mat& g) const;
  uint64_t evaluations() const { return evals_; }

 private:
  WorkbenchPtr W_;
  GenericSpec tau_;
  int k_, c_;
  Elem t_;
  const ClassFunction* chi_;
  std::vector<int32_t> resolver_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::string, ScaledCyclotomic> memo_;
  mutable uint64_t evals_ = 0;
};

// Shared instances per (q, tau, c, psi twist).
std::shared_ptr<const BesselSpeh> bessel_speh(Workbench& W, const GenericSpec& tau, int c,
                                              Elem t = 1);

// [[0, I_{(k-1)c}], [h, 0]]
Mat special_element(int k, const Mat& h);

// h -> B_tau(h) on GL_c; for k = 1 the closed form tau(det h) psi(tr h^{-1}). Cached.
const ClassFunction& special_value_profile(Workbench& W, const GenericSpec& tau, int c, Elem t = 1);

struct SupportCheck {
  bool ok = true;
  std::string witness;
  int classes_checked = 0;
};
// BS(diag(g, I)) vanishes for every non-identity class g of GL_c and equals 1 at g = 1.
SupportCheck bs_support_check(Workbench& W, const GenericSpec& tau, int c, Elem t = 1);

}  // namespace gkb
