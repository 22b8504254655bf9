#include "gkb/kloosterman.hpp"

#include <map>
#include <mutex>
#include <random>
#include <stdexcept>

#include "gkb/kernels.hpp"
#include "gkb/whittaker.hpp"

namespace gkb {

namespace {

constexpr size_t kMaxProductTable = 4096;
constexpr uint64_t kMaxCodeSpace = 20'000'000;

uint64_t ipow(uint64_t b, int e) {
  uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

int mod(int64_t a, int64_t n) {
  int64_t r = a % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

Mat random_invertible(const FieldContext& F, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(0, F.q() - 1);
  while (true) {
    Mat A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A.at(i, j) = static_cast<Elem>(dist(rng));
    if (is_invertible(F, A)) return A;
  }
}

}  // namespace

std::shared_ptr<const ElementTable> ElementTable::get(const FieldPtr& F, int c) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const ElementTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(F->q(), c);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  const uint64_t codes = ipow(F->q(), c * c);
  if (codes > kMaxCodeSpace) throw BudgetExceeded("matrix space too large to tabulate GL_c");
  auto T = std::make_shared<ElementTable>();
  T->F_ = F;
  T->c_ = c;
  T->by_code_.assign(codes, -1);
  for (uint64_t code = 0; code < codes; ++code) {
    Mat A = Mat::from_code(c, c, F->q(), code);
    if (!is_invertible(*F, A)) continue;
    T->by_code_[code] = static_cast<int32_t>(T->elems_.size());
    T->elems_.push_back(A);
  }
  const size_t n = T->elems_.size();
  T->inv_.resize(n);
  T->det_.resize(n);
  T->tr_.resize(n);
  for (size_t i = 0; i < n; ++i) {
    T->inv_[i] = T->index(mat_inv(*F, T->elems_[i]));
    T->det_[i] = gkb::det(*F, T->elems_[i]);
    T->tr_[i] = gkb::trace(*F, T->elems_[i]);
  }
  if (n <= kMaxProductTable) {
    T->mul_.resize(n * n);
    for (size_t a = 0; a < n; ++a)
      for (size_t b = 0; b < n; ++b)
        T->mul_[a * n + b] = T->index(mat_mul(*F, T->elems_[a], T->elems_[b]));
  }
  cache.emplace(key, T);
  return T;
}

int ElementTable::index(const Mat& g) const {
  int i = by_code_[g.code(F_->q())];
  if (i < 0) throw std::domain_error("matrix is not invertible");
  return i;
}

int ElementTable::product(int a, int b) const {
  if (!mul_.empty()) return mul_[static_cast<size_t>(a) * elems_.size() + b];
  return index(mat_mul(*F_, elems_[a], elems_[b]));
}

ScaledCyclotomic kl_sum(Workbench& W, const KloostermanQuery& query) {
  const FieldContext& F = *W.field();
  const CycloPtr& C = W.cyclo();
  const int q = F.q(), m = C->m();
  const int k = static_cast<int>(query.alphas.size());
  if (k < 1) throw std::invalid_argument("Kloosterman sum needs at least one factor");
  if (query.h.rows != query.c || !is_invertible(F, query.h))
    throw std::invalid_argument("Kloosterman target must be an invertible c x c matrix");
  std::vector<int> a(k);
  for (int j = 0; j < k; ++j) a[j] = mod(query.alphas[j], q - 1);
  if (k == 1) {
    return ScaledCyclotomic::zeta(
        C, W.alpha_exp(a[0], det(F, query.h)) + W.psi_exp(query.psi, trace(F, query.h)));
  }
  auto T = ElementTable::get(W.field(), query.c);
  const size_t n = T->size();
  {
    mpz_class terms;
    mpz_ui_pow_ui(terms.get_mpz_t(), n, k - 1);
    if (terms > Budgets{}.max_kloosterman_terms)
      throw BudgetExceeded("Kloosterman sum exceeds the term budget");
  }
  std::vector<std::vector<int32_t>> e(k, std::vector<int32_t>(n));
  for (int j = 0; j < k; ++j) {
    for (size_t i = 0; i < n; ++i) {
      int64_t x = W.alpha_exp(a[j], T->det(i)) + W.psi_exp(query.psi, T->trace(i));
      e[j][i] = mod(x, m);
    }
  }
  const int h = T->index(query.h);
  std::vector<int64_t> hist(m, 0);
  std::vector<int32_t> idx(n);
  const auto& K = kernels::active_kernels();
  // Free factors x_1 .. x_{k-2} by odometer; x_{k-1} runs in the kernel and x_k is forced.
  const int outer = k - 2;
  std::vector<int> digit(outer, 0);
  std::vector<int> prefix(outer + 1);  // prefix[j] = x_1 ... x_j
  std::vector<int32_t> base(outer + 1, 0);
  prefix[0] = T->index(identity(query.c));
  for (int j = 0; j < outer; ++j) {
    prefix[j + 1] = T->product(prefix[j], 0);
    base[j + 1] = mod(base[j] + e[j][0], m);
  }
  while (true) {
    const int R = T->product(T->inverse(prefix[outer]), h);
    for (size_t i = 0; i < n; ++i) idx[i] = T->product(T->inverse(static_cast<int>(i)), R);
    K.exponent_histogram(hist.data(), m, base[outer], e[k - 2].data(), e[k - 1].data(), idx.data(), n);
    int j = outer - 1;
    for (; j >= 0; --j) {
      if (++digit[j] < static_cast<int>(n)) break;
      digit[j] = 0;
    }
    if (j < 0) break;
    for (int l = j; l < outer; ++l) {
      prefix[l + 1] = T->product(prefix[l], digit[l]);
      base[l + 1] = mod(base[l] + e[l][digit[l]], m);
    }
  }
  CycloAccumulator acc(C);
  for (int r = 0; r < m; ++r)
    if (hist[r]) acc.add_zeta(r, hist[r]);
  return acc.to_scalar();
}

ClassFunction kl_profile(Workbench& W, int c, const std::vector<int>& alphas, Elem psi) {
  const GroupPtr& G = W.group(c);
  ClassFunction out(G, W.cyclo());
  for (size_t i = 0; i < G->num_classes(); ++i) {
    out.set(i, kl_sum(W, {c, alphas, psi, G->cls(i).rep}));
  }
  return out;
}

CheckReport check_bs_kloosterman_identity(Workbench& W, const std::vector<int>& exps, int c,
                                          Elem psi) {
  const FieldContext& F = *W.field();
  const int q = F.q();
  const int k = static_cast<int>(exps.size());
  CheckReport r;
  r.suite = "bs-kloosterman";
  r.params = {{"q", q}, {"c", c}, {"k", k}, {"exps", exps}, {"psi", psi}};
  std::vector<CuspidalDatum> support;
  std::vector<int> inv_alpha;
  for (int a : exps) {
    support.push_back({1, a});
    inv_alpha.push_back(mod(-a, q - 1));
  }
  GenericSpec tau = make_generic(q, support);
  ClassFunction B = special_value_profile(W, tau, c, psi);
  const GroupPtr& G = W.group(c);
  const ScaledCyclotomic scale = ScaledCyclotomic::q_half_power(W.cyclo(), -2 * (k - 1) * c * c);
  const Elem sign = (k - 1) % 2 ? F.neg(1) : 1;
  for (size_t i = 0; i < G->num_classes(); ++i) {
    const Mat& h = G->cls(i).rep;
    Mat target = mat_scale(F, mat_inv(F, h), sign);
    ScaledCyclotomic rhs = scale * kl_sum(W, {c, inv_alpha, psi, target});
    r.check(tau.to_string() + " h=" + G->cls(i).label.to_string(F), B[i] == rhs, B[i].to_string(),
            rhs.to_string());
  }
  return r;
}

CheckReport check_kl_multiplicativity(Workbench& W, int c1, int c2, const std::vector<int>& alphas,
                                      Elem psi) {
  const FieldContext& F = *W.field();
  const int q = F.q();
  const int k = static_cast<int>(alphas.size());
  CheckReport r;
  r.suite = "kl-mult";
  r.params = {{"q", q}, {"c1", c1}, {"c2", c2}, {"k", k}, {"alphas", alphas}, {"psi", psi}};
  const int c = c1 + c2;
  ClassFunction K1 = kl_profile(W, c1, alphas, psi);
  ClassFunction K2 = c2 == c1 ? K1 : kl_profile(W, c2, alphas, psi);
  ClassFunction K = kl_profile(W, c, alphas, psi);
  const GroupPtr &G1 = W.group(c1), &G2 = W.group(c2);
  auto positions = unipotent_positions({c1, c2});
  const int P = static_cast<int>(positions.size());
  const uint64_t nsize = ipow(q, P);
  const ScaledCyclotomic avg_factor = ScaledCyclotomic::q_half_power(W.cyclo(), 2 * k * c1 * c2);
  const ScaledCyclotomic prod_factor =
      ScaledCyclotomic::q_half_power(W.cyclo(), 2 * (k - 1) * c1 * c2);
  std::string tag = "a=";
  for (size_t j = 0; j < alphas.size(); ++j) tag += (j ? "," : "") + std::to_string(alphas[j]);
  for (size_t i1 = 0; i1 < G1->num_classes(); ++i1) {
    for (size_t i2 = 0; i2 < G2->num_classes(); ++i2) {
      const Mat& h1 = G1->cls(i1).rep;
      const Mat& h2 = G2->cls(i2).rep;
      const Mat d = block_diag({h1, h2});
      std::string name = tag + " h1=" + G1->cls(i1).label.to_string(F) +
                         " h2=" + G2->cls(i2).label.to_string(F);
      ScaledCyclotomic sum = W.zero();
      for (uint64_t code = 0; code < nsize; ++code) {
        Mat n = identity(c);
        uint64_t x = code;
        for (int p = P - 1; p >= 0; --p) {
          n.at(positions[p].first, positions[p].second) = static_cast<Elem>(x % q);
          x /= q;
        }
        sum += K.at(mat_mul(F, n, d));
      }
      ScaledCyclotomic rhs_avg = avg_factor * K1[i1] * K2[i2];
      r.check(name + " averaged", sum == rhs_avg, sum.to_string(), rhs_avg.to_string());
      PolyFq g = F.poly_gcd(charpoly(F, h1), charpoly(F, h2));
      if (g.degree() == 0) {
        ScaledCyclotomic lhs = K.at(d);
        ScaledCyclotomic rhs = prod_factor * K1[i1] * K2[i2];
        r.check(name + " disjoint", lhs == rhs, lhs.to_string(), rhs.to_string());
      } else {
        r.skip(name + " disjoint", "common eigenvalue");
      }
    }
  }
  return r;
}

CheckReport check_kl_class_invariance(Workbench& W, int c, const std::vector<int>& alphas,
                                      uint64_t seed, int samples, Elem psi) {
  const FieldContext& F = *W.field();
  CheckReport r;
  r.suite = "kl-class-invariance";
  r.params = {{"q", F.q()}, {"c", c}, {"alphas", alphas}, {"seed", seed}, {"samples", samples}};
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    Mat h = random_invertible(F, c, rng);
    Mat x = random_invertible(F, c, rng);
    Mat conj = mat_mul(F, mat_mul(F, x, h), mat_inv(F, x));
    ScaledCyclotomic a = kl_sum(W, {c, alphas, psi, h});
    ScaledCyclotomic b = kl_sum(W, {c, alphas, psi, conj});
    r.check("sample " + std::to_string(s), a == b, a.to_string(), b.to_string());
  }
  return r;
}

}  // namespace gkb
