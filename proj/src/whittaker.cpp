#include "gkb/whittaker.hpp"

#include <map>
#include <stdexcept>
#include <tuple>

namespace gkb {

PsiKC::PsiKC(WorkbenchPtr W, int k, int c, Elem t) : W_(std::move(W)), k_(k), c_(c), t_(t) {
  if (t_ == 0) throw std::invalid_argument("psi twist must be nonzero");
}

int64_t PsiKC::exponent(const Mat& u) const {
  const FieldContext& F = *W_->field();
  Elem s = 0;
  for (int j = 0; j + 1 < k_; ++j) {
    for (int i = 0; i < c_; ++i) s = F.add(s, u.at(j * c_ + i, (j + 1) * c_ + i));
  }
  return W_->psi_exp(t_, s);
}

ScaledCyclotomic PsiKC::value(const Mat& u) const {
  return ScaledCyclotomic::zeta(W_->cyclo(), exponent(u));
}

ScaledCyclotomic projector_trace(Workbench& W, const ClassFunction& chi, int k, int c, Elem t,
                                 const Mat& g, const std::vector<int32_t>* resolver) {
  const FieldContext& F = *W.field();
  const CycloPtr& C = W.cyclo();
  const GroupContext& G = *chi.group();
  const int n = k * c;
  const int q = F.q(), p = F.p();
  if (G.n() != n || g.rows != n) throw std::invalid_argument("projector trace size mismatch");
  std::vector<int> comp(k, c);
  auto pos = unipotent_positions(comp);
  const int P = static_cast<int>(pos.size());
  {
    mpz_class size;
    mpz_ui_pow_ui(size.get_mpz_t(), q, P);
    if (size > Budgets{}.max_unipotent) throw BudgetExceeded("unipotent radical exceeds budget");
  }
  std::vector<char> on_trace(P);
  for (int i = 0; i < P; ++i) on_trace[i] = (pos[i].second == pos[i].first + c);
  std::vector<int64_t> counts(G.num_classes() * p, 0);
  std::vector<Elem> digit(P, 0);
  Mat gu = g;
  Elem tr = 0;
  while (true) {
    int ci = resolver ? G.class_index_resolved(gu, *resolver) : G.class_index(gu);
    ++counts[static_cast<size_t>(ci) * p + F.trace_to_prime(F.mul(t, tr))];
    int idx = P - 1;
    for (; idx >= 0; --idx) {
      Elem old = digit[idx];
      Elem nw = static_cast<Elem>(old + 1 == q ? 0 : old + 1);
      digit[idx] = nw;
      Elem delta = F.sub(nw, old);
      const int i = pos[idx].first, j = pos[idx].second;
      for (int r = 0; r < n; ++r) gu.at(r, j) = F.add(gu.at(r, j), F.mul(delta, g.at(r, i)));
      if (on_trace[idx]) tr = F.add(tr, delta);
      if (nw != 0) break;
    }
    if (idx < 0) break;
  }
  const int step = C->m() / p;
  CycloAccumulator acc(C);
  ScaledCyclotomic rest = ScaledCyclotomic::zero(C);
  for (size_t ci = 0; ci < G.num_classes(); ++ci) {
    const int64_t* coords = chi.int_coords(ci);
    for (int e = 0; e < p; ++e) {
      int64_t cnt = counts[ci * p + e];
      if (!cnt) continue;
      if (coords) {
        acc.add_scaled_rotated(coords, -static_cast<int64_t>(e) * step, cnt);
      } else {
        rest += chi[ci].times_zeta(-static_cast<int64_t>(e) * step).scaled(cnt);
      }
    }
  }
  mpz_class size;
  mpz_ui_pow_ui(size.get_mpz_t(), q, P);
  return (acc.to_scalar() + rest).scaled(mpq_class(1) / mpq_class(size));
}

ScaledCyclotomic bessel_J(Workbench& W, const ClassFunction& chi, const Mat& g, Elem t) {
  return projector_trace(W, chi, chi.group()->n(), 1, t, g);
}

ClassFunction bs_induction_char(Workbench& W, const GenericSpec& tau, int c) {
  std::vector<ClassFunction> levi;
  for (const auto& d : tau.support) {
    for (int i = 0; i < c; ++i) {
      levi.push_back(d.deg == 1 ? gl1_char(W, d.x) : cuspidal2_char(W, d.x));
    }
  }
  return induced_char(W, levi);
}

namespace {

std::mutex g_cache_mu;

std::map<std::tuple<int, std::string, int>, std::unique_ptr<ClassFunction>>& speh_cache() {
  static std::map<std::tuple<int, std::string, int>, std::unique_ptr<ClassFunction>> cache;
  return cache;
}

std::map<std::tuple<int, std::string, int, int>, std::shared_ptr<const BesselSpeh>>& bs_cache() {
  static std::map<std::tuple<int, std::string, int, int>, std::shared_ptr<const BesselSpeh>> cache;
  return cache;
}

// Speh(St(alpha_a), 2) on GL_4: alpha_a(det) times the unipotent character of partition (2,2).
ClassFunction speh_steinberg2_char(Workbench& W, int a) {
  ClassFunction one2 = det_char(W, 2, 0);
  ClassFunction unip = induced_char(W, {one2, one2}) -
                       induced_char(W, {det_char(W, 3, 0), det_char(W, 1, 0)});
  return unip * det_char(W, 4, a);
}

ClassFunction compute_speh_char(Workbench& W, const GenericSpec& tau, int c) {
  if (c == 1) return generic_char(W, tau);
  std::vector<ClassFunction> levi;
  const auto& sup = tau.support;
  for (size_t i = 0; i < sup.size();) {
    size_t j = i;
    while (j < sup.size() && sup[j] == sup[i]) ++j;
    const size_t mult = j - i;
    const auto& d = sup[i];
    if (d.deg == 1 && mult == 1) {
      levi.push_back(det_char(W, c, d.x));
    } else if (d.deg == 1 && mult == 2 && c == 2) {
      levi.push_back(speh_steinberg2_char(W, d.x));
    } else if (d.deg == 2 && mult == 1 && c == 2) {
      levi.push_back(speh_cuspidal2_char(W, d.x));
    } else {
      throw std::invalid_argument("Speh(" + tau.to_string() + ", " + std::to_string(c) +
                                  ") is outside the supported range");
    }
    i = j;
  }
  return levi.size() == 1 ? levi[0] : induced_char(W, levi);
}

}  // namespace

const ClassFunction& speh_char(Workbench& W, const GenericSpec& tau, int c) {
  if (tau.k() * c > kMaxN) throw std::invalid_argument("k c exceeds 6");
  auto key = std::make_tuple(W.q(), tau.to_string(), c);
  {
    std::lock_guard<std::mutex> lock(g_cache_mu);
    auto it = speh_cache().find(key);
    if (it != speh_cache().end()) return *it->second;
  }
  auto chi = std::make_unique<ClassFunction>(compute_speh_char(W, tau, c));
  std::lock_guard<std::mutex> lock(g_cache_mu);
  auto [it, inserted] = speh_cache().emplace(key, std::move(chi));
  return *it->second;
}

BesselSpeh::BesselSpeh(WorkbenchPtr W, GenericSpec tau, int c, Elem t)
    : W_(std::move(W)), tau_(std::move(tau)), k_(tau_.k()), c_(c), t_(t) {
  if (t_ == 0) throw std::invalid_argument("psi twist must be nonzero");
  chi_ = &speh_char(*W_, tau_, c_);
  const ClassFunction& chi = *chi_;
  resolver_ = chi.group()->value_resolver([&](int a, int b) { return chi[a] == chi[b]; });
  ScaledCyclotomic one = (*this)(identity(k_ * c_));
  if (!one.is_one()) {
    throw std::logic_error("BS(1) = " + one.to_string() + " for tau = " + tau_.to_string() +
                           ", c = " + std::to_string(c_));
  }
}

ScaledCyclotomic BesselSpeh::operator()(const Mat& g) const {
  std::string key(reinterpret_cast<const char*>(g.e.data()), g.rows * g.cols);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  ScaledCyclotomic v = projector_trace(*W_, *chi_, k_, c_, t_, g, &resolver_);
  std::lock_guard<std::mutex> lock(mu_);
  ++evals_;
  memo_.emplace(std::move(key), v);
  return v;
}

std::shared_ptr<const BesselSpeh> bessel_speh(Workbench& W, const GenericSpec& tau, int c, Elem t) {
  auto key = std::make_tuple(W.q(), tau.to_string(), c, static_cast<int>(t));
  {
    std::lock_guard<std::mutex> lock(g_cache_mu);
    auto it = bs_cache().find(key);
    if (it != bs_cache().end()) return it->second;
  }
  auto bs = std::make_shared<const BesselSpeh>(Workbench::get(W.q()), tau, c, t);
  std::lock_guard<std::mutex> lock(g_cache_mu);
  auto [it, inserted] = bs_cache().emplace(key, bs);
  return it->second;
}

Mat special_element(int k, const Mat& h) {
  const int c = h.rows;
  return antidiag_blocks(identity((k - 1) * c), h);
}

namespace {

ClassFunction compute_special_values(Workbench& W, const GenericSpec& tau, int c, Elem t) {
  const GroupPtr& G = W.group(c);
  const FieldContext& F = *W.field();
  ClassFunction out(G, W.cyclo());
  const int k = tau.k();
  if (k == 1) {
    const int a = tau.support[0].x;
    for (size_t i = 0; i < G->num_classes(); ++i) {
      const Mat& h = G->cls(i).rep;
      int64_t e = W.alpha_exp(a, det(F, h)) + W.psi_exp(t, trace(F, mat_inv(F, h)));
      out.set(i, ScaledCyclotomic::zeta(W.cyclo(), e));
    }
    return out;
  }
  auto bs = bessel_speh(W, tau, c, t);
  for (size_t i = 0; i < G->num_classes(); ++i) out.set(i, (*bs)(special_element(k, G->cls(i).rep)));
  return out;
}

}  // namespace

const ClassFunction& special_value_profile(Workbench& W, const GenericSpec& tau, int c, Elem t) {
  static std::map<std::tuple<int, std::string, int, int>, std::unique_ptr<ClassFunction>> cache;
  auto key = std::make_tuple(W.q(), tau.to_string(), c, static_cast<int>(t));
  {
    std::lock_guard<std::mutex> lock(g_cache_mu);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  auto B = std::make_unique<ClassFunction>(compute_special_values(W, tau, c, t));
  std::lock_guard<std::mutex> lock(g_cache_mu);
  auto [it, inserted] = cache.emplace(key, std::move(B));
  return *it->second;
}

SupportCheck bs_support_check(Workbench& W, const GenericSpec& tau, int c, Elem t) {
  SupportCheck r;
  auto bs = bessel_speh(W, tau, c, t);
  const GroupPtr& G = W.group(c);
  const int k = tau.k();
  for (size_t i = 0; i < G->num_classes(); ++i) {
    const Mat& g = G->cls(i).rep;
    Mat x = k > 1 ? block_diag({g, identity((k - 1) * c)}) : g;
    ScaledCyclotomic v = (*bs)(x);
    bool expect_one = static_cast<int>(i) == G->identity_index();
    bool good = expect_one ? v.is_one() : v.is_zero();
    ++r.classes_checked;
    if (!good && r.ok) {
      r.ok = false;
      r.witness = "class " + G->cls(i).label.to_string(*W.field()) + " value " + v.to_string();
    }
  }
  return r;
}

}  // namespace gkb
