// Twisted matrix Kloosterman sums and their identities.
#pragma once

#include <memory>
#include <vector>

#include "gkb/characters.hpp"
#include "gkb/report.hpp"

namespace gkb {

// Flat list of GL_c(F_q) with inverse, determinant, trace and (for small groups) a product table.
class ElementTable {
 public:
  static std::shared_ptr<const ElementTable> get(const FieldPtr& F, int c);

  int c() const { return c_; }
  size_t size() const { return elems_.size(); }
  const Mat& operator[](size_t i) const { return elems_[i]; }
  const std::vector<Mat>& elements() const { return elems_; }
  int index(const Mat& g) const;
  int inverse(int i) const { return inv_[i]; }
  Elem det(int i) const { return det_[i]; }
  Elem trace(int i) const { return tr_[i]; }
  int product(int a, int b) const;

 private:
  FieldPtr F_;
  int c_ = 0;
  std::vector<Mat> elems_;
  std::vector<int32_t> by_code_;
  std::vector<int32_t> inv_;
  std::vector<Elem> det_, tr_;
  std::vector<int32_t> mul_;  // empty when the group is large
};

struct KloostermanQuery {
  int c = 1;
  std::vector<int> alphas;  // exponents mod q-1, one per factor
  Elem psi = 1;
  Mat h;
};

// Kl(alpha, psi, h) = sum over x_1 ... x_k = h of prod alpha_j(det x_j) psi(sum tr x_j).
ScaledCyclotomic kl_sum(Workbench& W, const KloostermanQuery& query);
// h -> Kl(alpha, psi, h) on the classes of GL_c.
ClassFunction kl_profile(Workbench& W, int c, const std::vector<int>& alphas, Elem psi = 1);

// B_tau(h) = q^{-(k-1)c^2} Kl(alpha^{-1}, psi, (-1)^{k-1} h^{-1}) over all classes of GL_c.
CheckReport check_bs_kloosterman_identity(Workbench& W, const std::vector<int>& exps, int c,
                                          Elem psi = 1);
// Averaged and eigenvalue-disjoint multiplicativity over all class pairs (h1, h2).
CheckReport check_kl_multiplicativity(Workbench& W, int c1, int c2, const std::vector<int>& alphas,
                                      Elem psi = 1);
// Kl(x h x^{-1}) = Kl(h) for seeded random pairs.
CheckReport check_kl_class_invariance(Workbench& W, int c, const std::vector<int>& alphas,
                                      uint64_t seed, int samples, Elem psi = 1);

}  // namespace gkb
