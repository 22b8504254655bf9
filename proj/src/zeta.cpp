#include "gkb/zeta.hpp"

#include <random>
#include <stdexcept>

#include "gkb/gamma.hpp"
#include "gkb/kloosterman.hpp"

namespace gkb {

namespace {

uint64_t ipow(uint64_t b, int e) {
  uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Common-denominator integer coordinates of a list of scalars (a and sqrt(q) parts).
struct IntegerTable {
  bool ok = true;
  mpz_class den = 1;
  std::vector<std::vector<int64_t>> a, b;  // empty when the part is zero
};

constexpr int64_t kCoordLimit = int64_t(1) << 40;

IntegerTable integerize(const std::vector<ScaledCyclotomic>& v) {
  IntegerTable t;
  for (const auto& x : v) {
    for (const auto& c : x.a()) mpz_lcm(t.den.get_mpz_t(), t.den.get_mpz_t(), c.get_den_mpz_t());
    for (const auto& c : x.b()) mpz_lcm(t.den.get_mpz_t(), t.den.get_mpz_t(), c.get_den_mpz_t());
  }
  t.a.resize(v.size());
  t.b.resize(v.size());
  auto convert = [&](const std::vector<mpq_class>& src, std::vector<int64_t>& dst) {
    bool any = false;
    for (const auto& c : src) any |= sgn(c) != 0;
    if (!any) return;
    dst.resize(src.size());
    for (size_t i = 0; i < src.size(); ++i) {
      mpz_class z = src[i].get_num() * (t.den / src[i].get_den());
      if (!z.fits_slong_p() || abs(z) > kCoordLimit) {
        t.ok = false;
        return;
      }
      dst[i] = z.get_si();
    }
  };
  for (size_t i = 0; i < v.size() && t.ok; ++i) {
    convert(v[i].a(), t.a[i]);
    convert(v[i].b(), t.b[i]);
  }
  return t;
}

ScaledCyclotomic from_parts(const CycloPtr& C, const std::vector<int64_t>& a,
                            const std::vector<int64_t>& b, const mpz_class& den) {
  ScaledCyclotomic x = ScaledCyclotomic::from_int_coords(C, a.data());
  x += ScaledCyclotomic::from_int_coords(C, b.data()) * ScaledCyclotomic::sqrt_q(C);
  return x.scaled(mpq_class(1) / mpq_class(den));
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

bool is_identity(const Mat& h) { return h == identity(h.rows); }

// Block antidiagonal permutation with c x c identity blocks, k blocks.
Mat block_reversal(int k, int c) {
  Mat w(k * c, k * c);
  for (int b = 0; b < k; ++b)
    for (int i = 0; i < c; ++i) w.at(b * c + i, (k - 1 - b) * c + i) = 1;
  return w;
}

std::string first_difference(const TraceProfile& lhs, const TraceProfile& rhs, const ElementTable& T,
                             const FieldContext& F, std::string& l, std::string& r) {
  for (size_t x = 0; x < lhs.size(); ++x) {
    if (lhs[x] != rhs[x]) {
      l = lhs[x].to_string();
      r = rhs[x].to_string();
      return "x=" + mat_string(F, T[x]);
    }
  }
  return {};
}

bool profile_nonzero(const TraceProfile& p) {
  for (const auto& v : p)
    if (!v.is_zero()) return true;
  return false;
}

}  // namespace

MatFunction delta_function(Workbench& W, int c, const Mat& A) {
  MatFunction f(ipow(W.q(), c * c), W.zero());
  f[A.code(W.q())] = W.one();
  return f;
}

MatFunction fourier_transform(Workbench& W, const MatFunction& f, int c, Elem psi) {
  const FieldContext& F = *W.field();
  const CycloPtr& C = W.cyclo();
  const int q = F.q();
  const uint64_t N = ipow(q, c * c);
  if (f.size() != N) throw std::invalid_argument("function size does not match M_c");
  std::vector<uint64_t> support;
  for (uint64_t y = 0; y < N; ++y)
    if (!f[y].is_zero()) support.push_back(y);
  std::vector<Mat> mats(N);
  for (uint64_t y = 0; y < N; ++y) mats[y] = Mat::from_code(c, c, q, y);
  IntegerTable t = integerize(f);
  const ScaledCyclotomic scale = ScaledCyclotomic::q_half_power(C, -c * c);
  MatFunction out(N, W.zero());
  CycloAccumulator accA(C), accB(C);
  std::vector<int64_t> zero(C->phi(), 0);
  for (uint64_t x = 0; x < N; ++x) {
    if (t.ok) {
      accA.clear();
      accB.clear();
      for (uint64_t y : support) {
        int64_t e = W.psi_exp(psi, trace(F, mat_mul(F, mats[x], mats[y])));
        if (!t.a[y].empty()) accA.add_rotated(t.a[y].data(), e);
        if (!t.b[y].empty()) accB.add_rotated(t.b[y].data(), e);
      }
      ScaledCyclotomic v = accA.to_scalar() + accB.to_scalar() * ScaledCyclotomic::sqrt_q(C);
      out[x] = v.scaled(mpq_class(1) / mpq_class(t.den)) * scale;
    } else {
      ScaledCyclotomic v = W.zero();
      for (uint64_t y : support) {
        v += f[y].times_zeta(W.psi_exp(psi, trace(F, mat_mul(F, mats[x], mats[y]))));
      }
      out[x] = v * scale;
    }
  }
  return out;
}

CheckReport check_fourier_inversion(Workbench& W, int c, Elem psi, int samples, uint64_t seed) {
  const FieldContext& F = *W.field();
  const int q = F.q();
  CheckReport r;
  r.suite = "fourier";
  r.params = {{"q", q}, {"c", c}, {"psi", psi}, {"samples", samples}, {"seed", seed}};
  const uint64_t N = ipow(q, c * c);
  std::vector<uint64_t> basis;
  if (samples > 0 && static_cast<uint64_t>(samples) < N) {
    std::mt19937_64 rng(seed);
    for (int s = 0; s < samples; ++s) basis.push_back(rng() % N);
  } else {
    for (uint64_t a = 0; a < N; ++a) basis.push_back(a);
  }
  for (uint64_t a : basis) {
    Mat A = Mat::from_code(c, c, q, a);
    MatFunction d = delta_function(W, c, A);
    MatFunction f1 = fourier_transform(W, d, c, psi);
    MatFunction back = fourier_transform(W, f1, c, F.neg(psi));
    MatFunction twice = fourier_transform(W, f1, c, psi);
    MatFunction neg = delta_function(W, c, mat_neg(F, A));
    const std::string name = "delta " + mat_string(F, A);
    r.check(name + " inverse", back == d, "F_psi^-1 F_psi f", "f");
    r.check(name + " square", twice == neg, "F_psi F_psi f", "f(-X)");
  }
  return r;
}

TraceProfile operator_profile(Workbench& W, const std::vector<ScaledCyclotomic>& coeff,
                              const ClassFunction& chi, bool contragredient) {
  const GroupContext& G = *chi.group();
  const int c = G.n();
  auto T = ElementTable::get(W.field(), c);
  const size_t n = T->size();
  if (coeff.size() != n) throw std::invalid_argument("coefficient vector does not match GL_c");
  const CycloPtr& C = W.cyclo();
  const int phi = C->phi();
  const size_t ncls = G.num_classes();
  // Left factor as it acts on the space of pi.
  std::vector<int> left(n);
  for (size_t g = 0; g < n; ++g) {
    left[g] = contragredient ? T->index(transpose((*T)[T->inverse(static_cast<int>(g))]))
                             : static_cast<int>(g);
  }
  std::vector<int> cls(n);
  for (size_t i = 0; i < n; ++i) cls[i] = G.class_index((*T)[i]);
  std::vector<size_t> support;
  for (size_t g = 0; g < n; ++g)
    if (!coeff[g].is_zero()) support.push_back(g);
  IntegerTable t = integerize(coeff);
  TraceProfile out(n, W.zero());
  std::vector<int64_t> bucketA(ncls * phi), bucketB(ncls * phi);
  std::vector<char> used(ncls);
  for (size_t x = 0; x < n; ++x) {
    if (t.ok) {
      std::fill(bucketA.begin(), bucketA.end(), 0);
      std::fill(bucketB.begin(), bucketB.end(), 0);
      std::fill(used.begin(), used.end(), 0);
      for (size_t g : support) {
        const int k = cls[T->product(left[g], static_cast<int>(x))];
        used[k] = 1;
        if (!t.a[g].empty())
          for (int i = 0; i < phi; ++i) bucketA[k * phi + i] += t.a[g][i];
        if (!t.b[g].empty())
          for (int i = 0; i < phi; ++i) bucketB[k * phi + i] += t.b[g][i];
      }
      ScaledCyclotomic v = W.zero();
      for (size_t k = 0; k < ncls; ++k) {
        if (!used[k]) continue;
        std::vector<int64_t> a(bucketA.begin() + k * phi, bucketA.begin() + (k + 1) * phi);
        std::vector<int64_t> b(bucketB.begin() + k * phi, bucketB.begin() + (k + 1) * phi);
        v += chi[k] * from_parts(C, a, b, t.den);
      }
      out[x] = v;
    } else {
      ScaledCyclotomic v = W.zero();
      for (size_t g : support) v += coeff[g] * chi[cls[T->product(left[g], static_cast<int>(x))]];
      out[x] = v;
    }
  }
  return out;
}

TraceProfile gj_zeta_profile(Workbench& W, const MatFunction& f, const ClassFunction& chi_pi,
                             int twist) {
  const FieldContext& F = *W.field();
  const int c = chi_pi.group()->n();
  auto T = ElementTable::get(W.field(), c);
  std::vector<ScaledCyclotomic> coeff(T->size(), W.zero());
  const int a = ((twist % (F.q() - 1)) + F.q() - 1) % (F.q() - 1);
  for (size_t g = 0; g < T->size(); ++g) {
    const auto& v = f[(*T)[g].code(F.q())];
    if (!v.is_zero()) coeff[g] = v.times_zeta(W.alpha_exp(a, T->det(static_cast<int>(g))));
  }
  return operator_profile(W, coeff, chi_pi, false);
}

CheckReport check_macdonald_fe(Workbench& W, const RepSpec& pi, int twist, Elem psi) {
  const FieldContext& F = *W.field();
  const int q = F.q();
  const int c = pi.n;
  const int a = ((twist % (q - 1)) + q - 1) % (q - 1);
  const int a_inv = (q - 1 - a) % (q - 1);
  CheckReport r;
  r.suite = "gj-fe";
  r.params = {{"q", q}, {"pi", pi.to_string()}, {"chi", a}, {"psi", psi}};
  const std::string tag = pi.to_string() + " x gl1:" + std::to_string(a);
  if (!supports_disjoint(q, cuspidal_support(q, pi), {CuspidalDatum{1, a_inv}})) {
    r.skip(tag, "chi^{-1} lies in the cuspidal support of pi");
    return r;
  }
  const ClassFunction& chi = rep_char(W, pi);
  const ScaledCyclotomic gamma = gamma_gj_twisted(W, pi, a, psi).value;
  auto T = ElementTable::get(W.field(), c);
  const uint64_t N = ipow(q, c * c);
  for (uint64_t y = 0; y < N; ++y) {
    Mat Y = Mat::from_code(c, c, q, y);
    MatFunction f = delta_function(W, c, Y);
    MatFunction Ff = fourier_transform(W, f, c, psi);
    std::vector<ScaledCyclotomic> lhs_coeff(T->size(), W.zero());
    for (size_t g = 0; g < T->size(); ++g) {
      const auto& v = Ff[transpose((*T)[g]).code(q)];
      if (!v.is_zero()) lhs_coeff[g] = v.times_zeta(W.alpha_exp(a_inv, T->det(static_cast<int>(g))));
    }
    TraceProfile lhs = operator_profile(W, lhs_coeff, chi, true);
    TraceProfile rhs = gj_zeta_profile(W, f, chi, a);
    for (auto& v : rhs) v = gamma * v;
    std::string l, rr;
    std::string where = first_difference(lhs, rhs, *T, F, l, rr);
    const std::string name = tag + " f=delta " + mat_string(F, Y);
    if (where.empty()) {
      r.pass(name);
    } else {
      r.fail(name, where, l, rr);
    }
  }
  return r;
}

std::vector<WhittakerSample> whittaker_samples(Workbench& W, int n, bool class_translates,
                                               int random_count, uint64_t seed) {
  const FieldContext& F = *W.field();
  std::vector<WhittakerSample> out;
  out.push_back({"identity", identity(n)});
  if (class_translates) {
    const GroupPtr& G = W.group(n);
    for (size_t i = 0; i < G->num_classes(); ++i) {
      if (static_cast<int>(i) == G->identity_index()) continue;
      out.push_back({"class " + G->cls(i).label.to_string(F), G->cls(i).rep});
    }
  }
  std::mt19937_64 rng(seed);
  for (int s = 0; s < random_count; ++s) {
    out.push_back({"seeded " + std::to_string(s), random_invertible(F, n, rng)});
  }
  return out;
}

uint64_t translate_cost(int q, int k, int c) {
  uint64_t group = 0;
  {
    mpz_class g = gl_order(q, c);
    group = g.get_ui();
  }
  uint64_t evals = 0;
  for (int j = 0; j <= k - 2; ++j)
    evals += group * (ipow(q, (k - j - 2) * c * c) + ipow(q, j * c * c));
  return evals * ipow(q, c * c * k * (k - 1) / 2);
}

Mat zeta_element(int k, int c, int j, const Mat& g, const Mat& X) {
  const int n = k * c;
  Mat M = identity(n);
  set_block(M, 0, 0, g);
  if (X.rows > 0) set_block(M, c, 0, X);
  (void)j;
  return M;
}

Mat dual_zeta_element(int k, int c, int j, const Mat& g, const Mat& X) {
  const int n = k * c;
  const int top = (k - 1 - j) * c;
  Mat M(n, n);
  for (int i = 0; i < top; ++i) M.at(i, c + i) = 1;
  for (int i = 0; i < j * c; ++i) M.at(top + i, (k - j) * c + i) = 1;
  set_block(M, (k - 1) * c, 0, g);
  if (X.cols > 0) set_block(M, (k - 1) * c, (k - j) * c, X);
  return M;
}

namespace {

// Sum over X of value(g, X), reduced by orbits of the centralizer of g when the summand is
// invariant under X -> act(a, X) for a commuting with g.
template <class Value, class Act>
ScaledCyclotomic orbit_sum(Workbench& W, int rows, int cols, const std::vector<Mat>& centralizer,
                           Value&& value, Act&& act) {
  const int q = W.q();
  const uint64_t N = ipow(q, rows * cols);
  ScaledCyclotomic sum = W.zero();
  if (centralizer.empty()) {
    for (uint64_t x = 0; x < N; ++x) sum += value(Mat::from_code(rows, cols, q, x));
    return sum;
  }
  std::vector<char> seen(N, 0);
  for (uint64_t x = 0; x < N; ++x) {
    if (seen[x]) continue;
    Mat X = Mat::from_code(rows, cols, q, x);
    int64_t size = 0;
    for (const auto& a : centralizer) {
      uint64_t y = act(a, X).code(q);
      if (!seen[y]) {
        seen[y] = 1;
        ++size;
      }
    }
    sum += value(X).scaled(mpq_class(static_cast<long>(size)));
  }
  return sum;
}

}  // namespace

ZetaCoefficients gk_zeta_coefficients(const BesselSpeh& bs, const Mat& h, int j) {
  Workbench& W = *bs.workbench();
  const FieldContext& F = *W.field();
  const int k = bs.k(), c = bs.c();
  if (k < 2 || j < 0 || j > k - 2) throw std::invalid_argument("zeta operators need 0 <= j <= k-2");
  auto T = ElementTable::get(W.field(), c);
  const GroupPtr& G = W.group(c);
  const bool reduce = is_identity(h);
  const int rz = (k - j - 2) * c;  // rows of X in Z_j
  const int cz = j * c;            // cols of X in Z*_j
  const ScaledCyclotomic sz = ScaledCyclotomic::q_half_power(W.cyclo(), -rz * c);
  const ScaledCyclotomic sd = ScaledCyclotomic::q_half_power(W.cyclo(), -cz * c);
  auto Wh = [&](const Mat& M) { return bs(reduce ? M : mat_mul(F, M, h)); };
  auto act_z = [&](const Mat& a, const Mat& X) {
    std::vector<Mat> blocks(k - j - 2, a);
    return mat_mul(F, mat_mul(F, block_diag(blocks), X), mat_inv(F, a));
  };
  auto act_d = [&](const Mat& a, const Mat& X) {
    std::vector<Mat> blocks(j, mat_inv(F, a));
    return mat_mul(F, mat_mul(F, a, X), block_diag(blocks));
  };
  ZetaCoefficients out;
  out.j = j;
  out.z.assign(T->size(), W.zero());
  out.z_star.assign(T->size(), W.zero());
  auto compute = [&](const Mat& g, const std::vector<Mat>& cent, ScaledCyclotomic& z,
                     ScaledCyclotomic& zs) {
    z = sz * (rz == 0 ? Wh(zeta_element(k, c, j, g, Mat(0, c)))
                      : orbit_sum(W, rz, c, cent,
                                  [&](const Mat& X) { return Wh(zeta_element(k, c, j, g, X)); },
                                  act_z));
    zs = sd * (cz == 0 ? Wh(dual_zeta_element(k, c, j, g, Mat(c, 0)))
                       : orbit_sum(W, c, cz, cent,
                                   [&](const Mat& X) { return Wh(dual_zeta_element(k, c, j, g, X)); },
                                   act_d));
  };
  if (reduce) {
    std::vector<ScaledCyclotomic> zc(G->num_classes()), dc(G->num_classes());
    for (size_t i = 0; i < G->num_classes(); ++i) {
      const Mat& g = G->cls(i).rep;
      std::vector<Mat> cent;
      for (const auto& a : T->elements())
        if (mat_mul(F, a, g) == mat_mul(F, g, a)) cent.push_back(a);
      compute(g, cent, zc[i], dc[i]);
    }
    for (size_t g = 0; g < T->size(); ++g) {
      int i = G->class_index((*T)[g]);
      out.z[g] = zc[i];
      out.z_star[g] = dc[i];
    }
  } else {
    for (size_t g = 0; g < T->size(); ++g) compute((*T)[g], {}, out.z[g], out.z_star[g]);
  }
  return out;
}

namespace {

// Coefficients of Z_{k-2-j}(W') with W'(y) = W(w_{(c^k)} (y diag(I_c, w_{(c^{k-1})}))^{-T}).
std::vector<ScaledCyclotomic> dual_data_coefficients(const BesselSpeh& bs, const Mat& h, int j) {
  Workbench& W = *bs.workbench();
  const FieldContext& F = *W.field();
  const int k = bs.k(), c = bs.c();
  auto T = ElementTable::get(W.field(), c);
  const int jj = k - 2 - j;
  const int rz = (k - jj - 2) * c;
  const ScaledCyclotomic scale = ScaledCyclotomic::q_half_power(W.cyclo(), -rz * c);
  const Mat w = block_reversal(k, c);
  const Mat d = block_diag({identity(c), block_reversal(k - 1, c)});
  std::vector<ScaledCyclotomic> out(T->size(), W.zero());
  const uint64_t N = ipow(W.q(), rz * c);
  for (size_t g = 0; g < T->size(); ++g) {
    ScaledCyclotomic sum = W.zero();
    for (uint64_t x = 0; x < N; ++x) {
      Mat y = zeta_element(k, c, jj, (*T)[g], Mat::from_code(rz, c, W.q(), x));
      Mat arg = mat_mul(F, w, transpose_inverse(F, mat_mul(F, y, d)));
      sum += bs(mat_mul(F, arg, h));
    }
    out[g] = scale * sum;
  }
  return out;
}

bool fe_applicable(int q, const RepSpec& pi, const GenericSpec& tau) {
  return supports_disjoint(q, pi, dual_generic(q, tau));
}

// Samples within budget; the rest are recorded as skips.
std::vector<WhittakerSample> budgeted_samples(Workbench& W, int k, int c, const KaplanOptions& opt,
                                              CheckReport& r) {
  std::vector<WhittakerSample> out;
  const uint64_t cost = translate_cost(W.q(), k, c);
  for (auto& s : whittaker_samples(W, k * c, opt.class_translates, opt.random_translates, opt.seed)) {
    if (is_identity(s.h) || cost <= opt.translate_budget) {
      out.push_back(std::move(s));
    } else {
      r.skip("translate W=" + s.name, "budget: estimated cost " + std::to_string(cost) +
                                          " exceeds translate budget " +
                                          std::to_string(opt.translate_budget));
    }
  }
  return out;
}

}  // namespace

CheckReport check_kaplan_fe(Workbench& W, const GenericSpec& tau, int c,
                            const std::vector<RepSpec>& pis, const KaplanOptions& opt) {
  const FieldContext& F = *W.field();
  const int q = F.q();
  const int k = tau.k();
  CheckReport r;
  r.suite = "gk-fe";
  r.params = {{"q", q}, {"tau", tau.to_string()}, {"c", c}, {"psi", opt.psi},
              {"class_translates", opt.class_translates}, {"random_translates", opt.random_translates},
              {"seed", opt.seed}};
  std::vector<const RepSpec*> gated;
  for (const auto& pi : pis) {
    if (pi.n != c) continue;
    const std::string tag = pi.to_string() + " x " + tau.to_string();
    if (fe_applicable(q, pi, tau)) {
      gated.push_back(&pi);
      continue;
    }
    r.skip(tag, "cuspidal supports of pi and tau^vee intersect");
    const bool cuspidal_pair = k == c && tau.support.size() == 1 && tau.support[0].deg == k &&
                               pi.kind == RepKind::Cuspidal2 &&
                               canonical_datum(q, dual_datum(q, {2, pi.t})) == tau.support[0];
    if (cuspidal_pair) {
      ScaledCyclotomic g = gamma_gk(W, pi, tau, opt.psi).value;
      r.notes.push_back("FE not applicable for " + tag + " (pi = tau^vee cuspidal, k = c); measured Gamma = " +
                        g.to_string());
    }
  }
  if (gated.empty() && !opt.dual_data_identity) return r;
  auto bs = bessel_speh(W, tau, c, opt.psi);
  auto T = ElementTable::get(W.field(), c);
  std::vector<ScaledCyclotomic> gammas;
  for (const auto* pi : gated) gammas.push_back(gamma_gk(W, *pi, tau, opt.psi).value);
  size_t nonzero = 0, compared = 0;
  for (const auto& sample : budgeted_samples(W, k, c, opt, r)) {
    for (int j = 0; j <= k - 2; ++j) {
      ZetaCoefficients zc = gk_zeta_coefficients(*bs, sample.h, j);
      for (size_t p = 0; p < gated.size(); ++p) {
        const ClassFunction& chi = rep_char(W, *gated[p]);
        TraceProfile lhs = operator_profile(W, zc.z_star, chi);
        TraceProfile rhs = operator_profile(W, zc.z, chi);
        for (auto& v : rhs) v = gammas[p] * v;
        ++compared;
        nonzero += profile_nonzero(lhs);
        std::string l, rr;
        std::string where = first_difference(lhs, rhs, *T, F, l, rr);
        const std::string name = gated[p]->to_string() + " x " + tau.to_string() + " W=" +
                                 sample.name + " j=" + std::to_string(j);
        if (where.empty()) {
          r.pass(name);
        } else {
          r.fail(name, where, l, rr);
        }
      }
      if (opt.dual_data_identity) {
        std::vector<ScaledCyclotomic> rc = dual_data_coefficients(*bs, sample.h, j);
        for (const auto& pi : pis) {
          if (pi.n != c) continue;
          const ClassFunction& chi = rep_char(W, pi);
          TraceProfile lhs = operator_profile(W, zc.z_star, chi);
          TraceProfile rhs = operator_profile(W, rc, chi, true);
          std::string l, rr;
          std::string where = first_difference(lhs, rhs, *T, F, l, rr);
          const std::string name = "dual data " + pi.to_string() + " x " + tau.to_string() +
                                   " W=" + sample.name + " j=" + std::to_string(j);
          if (where.empty()) {
            r.pass(name);
          } else {
            r.fail(name, where, l, rr);
          }
        }
      }
    }
  }
  if (compared > 0) {
    if (nonzero == 0) {
      r.fail("nonvacuous " + tau.to_string(), "every compared profile is zero");
    } else {
      r.notes.push_back(tau.to_string() + ": " + std::to_string(nonzero) + " of " +
                        std::to_string(compared) + " compared profiles are nonzero");
    }
  }
  return r;
}

CheckReport check_fe_with_function(Workbench& W, const GenericSpec& tau, int c,
                                   const std::vector<RepSpec>& pis, const KaplanOptions& opt) {
  const FieldContext& F = *W.field();
  const int q = F.q();
  const int k = tau.k();
  CheckReport r;
  r.suite = "gk-fe-function";
  r.params = {{"q", q}, {"tau", tau.to_string()}, {"c", c}, {"psi", opt.psi},
              {"class_translates", opt.class_translates}, {"random_translates", opt.random_translates},
              {"seed", opt.seed}};
  if (k < 2) throw std::invalid_argument("function variant is stated for k >= 2");
  auto bs = bessel_speh(W, tau, c, opt.psi);
  auto T = ElementTable::get(W.field(), c);
  const uint64_t N = ipow(q, c * c);
  const int xc = (k - 2) * c;
  const uint64_t NX = ipow(q, c * xc);
  const ScaledCyclotomic scale_star = ScaledCyclotomic::q_half_power(W.cyclo(), -(k - 1) * c * c);
  const ScaledCyclotomic scale_wf = ScaledCyclotomic::q_half_power(W.cyclo(), -c * c);
  std::vector<Mat> mc(N);
  for (uint64_t y = 0; y < N; ++y) mc[y] = Mat::from_code(c, c, q, y);
  for (const auto& sample : budgeted_samples(W, k, c, opt, r)) {
    auto Wh = [&](const Mat& M) { return (*bs)(mat_mul(F, M, sample.h)); };
    // base[g] = W(diag(g, I)); dual[g][Y] = sum_X W([[0, I_c, 0], [0, 0, I], [g, Y, X]]).
    std::vector<ScaledCyclotomic> base(T->size());
    std::vector<std::vector<ScaledCyclotomic>> dual(T->size(), std::vector<ScaledCyclotomic>(N));
    // u_Y = [[I, Y, 0], [0, I, 0], [0, 0, I]] translates for the W_F side.
    std::vector<std::vector<ScaledCyclotomic>> shifted(T->size(), std::vector<ScaledCyclotomic>(N));
    for (size_t g = 0; g < T->size(); ++g) {
      Mat dg = block_diag({(*T)[g], identity((k - 1) * c)});
      base[g] = Wh(dg);
      for (uint64_t y = 0; y < N; ++y) {
        Mat u = identity(k * c);
        set_block(u, 0, c, mc[y]);
        shifted[g][y] = Wh(mat_mul(F, dg, u));
        ScaledCyclotomic s = W.zero();
        for (uint64_t x = 0; x < NX; ++x) {
          Mat M(k * c, k * c);
          for (int i = 0; i < c; ++i) M.at(i, c + i) = 1;
          for (int i = 0; i < xc; ++i) M.at(c + i, 2 * c + i) = 1;
          set_block(M, (k - 1) * c, 0, (*T)[g]);
          set_block(M, (k - 1) * c, c, mc[y]);
          if (xc > 0) set_block(M, (k - 1) * c, 2 * c, Mat::from_code(c, xc, q, x));
          s += Wh(M);
        }
        dual[g][y] = s;
      }
    }
    for (const auto& pi : pis) {
      if (pi.n != c) continue;
      const std::string tag = pi.to_string() + " x " + tau.to_string() + " W=" + sample.name;
      const ClassFunction& chi = rep_char(W, pi);
      const bool gated = fe_applicable(q, pi, tau);
      const ScaledCyclotomic gamma = gated ? gamma_gk(W, pi, tau, opt.psi).value : W.zero();
      size_t fails_fe = 0, fails_wf = 0;
      std::string witness, l, rr;
      for (uint64_t a = 0; a < N; ++a) {
        MatFunction f = delta_function(W, c, mc[a]);
        MatFunction Finv = fourier_transform(W, f, c, F.neg(opt.psi));
        std::vector<ScaledCyclotomic> zc(T->size(), W.zero()), wf(T->size(), W.zero());
        for (size_t g = 0; g < T->size(); ++g) {
          zc[g] = base[g] * f[(*T)[g].code(q)];
          ScaledCyclotomic s = W.zero();
          for (uint64_t y = 0; y < N; ++y)
            if (!Finv[y].is_zero()) s += shifted[g][y] * Finv[y];
          wf[g] = scale_wf * s;
        }
        TraceProfile pz = operator_profile(W, zc, chi);
        TraceProfile pw = operator_profile(W, wf, chi);
        std::string where = first_difference(pz, pw, *T, F, l, rr);
        if (!where.empty()) {
          if (!fails_wf++) witness = "W_F f=delta " + mat_string(F, mc[a]) + " " + where;
        }
        if (gated) {
          std::vector<ScaledCyclotomic> zs(T->size(), W.zero());
          for (size_t g = 0; g < T->size(); ++g) {
            const int ginv = T->inverse(static_cast<int>(g));
            ScaledCyclotomic s = W.zero();
            for (uint64_t y = 0; y < N; ++y) {
              const auto& fv = Finv[mat_mul(F, (*T)[ginv], mc[y]).code(q)];
              if (!fv.is_zero()) s += dual[g][y] * fv;
            }
            zs[g] = scale_star * s;
          }
          TraceProfile ps = operator_profile(W, zs, chi);
          for (auto& v : pz) v = gamma * v;
          where = first_difference(ps, pz, *T, F, l, rr);
          if (!where.empty()) {
            if (!fails_fe++) witness = "FE f=delta " + mat_string(F, mc[a]) + " " + where;
          }
        }
      }
      if (fails_wf == 0) {
        r.pass(tag + " W_F");
      } else {
        r.fail(tag + " W_F", witness, l, rr);
      }
      if (!gated) {
        r.skip(tag + " FE", "cuspidal supports of pi and tau^vee intersect");
      } else if (fails_fe == 0) {
        r.pass(tag + " FE");
      } else {
        r.fail(tag + " FE", witness, l, rr);
      }
    }
  }
  return r;
}

CheckReport converse_scan(Workbench& W, int k, Elem psi) {
  const FieldContext& F = *W.field();
  const int q = F.q();
  CheckReport r;
  r.suite = "converse";
  r.params = {{"q", q}, {"k", k}, {"psi", psi}};
  std::vector<GenericSpec> taus = generic_specs(q, k, false);
  for (size_t a = 0; a < taus.size(); ++a) {
    for (size_t b = a + 1; b < taus.size(); ++b) {
      const std::string name = taus[a].to_string() + " vs " + taus[b].to_string();
      if (central_character(q, taus[a]) != central_character(q, taus[b])) {
        r.skip(name, "central characters differ");
        continue;
      }
      std::string witness;
      for (int c = 1; 2 * c <= k && witness.empty(); ++c) {
        const ClassFunction& B1 = special_value_profile(W, taus[a], c, psi);
        const ClassFunction& B2 = special_value_profile(W, taus[b], c, psi);
        for (size_t i = 0; i < B1.size(); ++i) {
          if (B1[i] != B2[i]) {
            witness = "c=" + std::to_string(c) + " h=" + B1.group()->cls(i).label.to_string(F) +
                      ": " + B1[i].to_string() + " vs " + B2[i].to_string();
            break;
          }
        }
      }
      if (witness.empty()) {
        r.fail(name, "no special value separates the pair");
      } else {
        r.cases.push_back({name, Status::Pass, "separated at " + witness, {}, {}});
      }
    }
    const ClassFunction& B = special_value_profile(W, taus[a], 1, psi);
    r.check(taus[a].to_string() + " vs itself", B == special_value_profile(W, taus[a], 1, psi),
            "profile", "profile");
  }
  return r;
}

CheckReport check_appendix_c2(Workbench& W, const GenericSpec& tau, int random_count,
                              uint64_t seed, Elem psi) {
  const FieldContext& F = *W.field();
  const int q = F.q();
  const int k = tau.k();
  CheckReport r;
  r.suite = "appendix-c2";
  r.params = {{"q", q}, {"tau", tau.to_string()}, {"random", random_count}, {"seed", seed},
              {"psi", psi}};
  if (tau.support.size() != 1 || tau.support[0].deg != k || k < 2) {
    r.skip(tau.to_string(), "tau must be cuspidal with k >= 2");
    return r;
  }
  auto BS2 = bessel_speh(W, tau, 2, psi);
  auto J = bessel_speh(W, tau, 1, psi);
  std::vector<std::pair<std::string, Mat>> hs;
  const GroupPtr& G = W.group(2);
  for (size_t i = 0; i < G->num_classes(); ++i)
    hs.push_back({"class " + G->cls(i).label.to_string(F), G->cls(i).rep});
  std::mt19937_64 rng(seed);
  for (int s = 0; s < random_count; ++s)
    hs.push_back({"seeded " + std::to_string(s), random_invertible(F, 2, rng)});
  const ScaledCyclotomic qk = ScaledCyclotomic::q_half_power(W.cyclo(), -2 * k);
  const ScaledCyclotomic qk1 = ScaledCyclotomic::q_half_power(W.cyclo(), -2 * (k - 1));
  for (const auto& [name, h] : hs) {
    ScaledCyclotomic lhs = (*BS2)(special_element(k, h));
    Mat hinv = mat_inv(F, h);
    const Elem cc = h.at(1, 0);
    const Elem cprime = hinv.at(1, 0);
    ScaledCyclotomic sum = W.zero();
    for (int t = 1; t < q; ++t) {
      Mat dt = identity(2);
      dt.at(0, 0) = static_cast<Elem>(t);
      Mat conj = mat_mul(F, mat_mul(F, dt, h), mat_inv(F, dt));
      ScaledCyclotomic v = (*J)(antidiag_blocks(identity(k - 2), conj));
      if (k == 2) v = v.times_zeta(W.psi_exp(psi, F.mul(F.inv(static_cast<Elem>(t)), cprime)));
      sum += v;
    }
    ScaledCyclotomic rhs = qk * sum;
    if (cc == 0) {
      Mat ma(1, 1), md(1, 1);
      ma.at(0, 0) = h.at(0, 0);
      md.at(0, 0) = h.at(1, 1);
      rhs += qk1 * (*J)(antidiag_blocks(identity(k - 1), ma)) *
             (*J)(antidiag_blocks(identity(k - 1), md));
    }
    r.check(tau.to_string() + " h=" + name + " " + mat_string(F, h), lhs == rhs, lhs.to_string(),
            rhs.to_string());
  }
  return r;
}

}  // namespace gkb
