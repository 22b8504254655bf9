#include "gkb/group.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace gkb {

bool LabelPart::operator<(const LabelPart& o) const {
  if (deg != o.deg) return deg < o.deg;
  if (code != o.code) return code < o.code;
  return partition > o.partition;
}

int ClassLabel::degree() const {
  int n = 0;
  for (const auto& p : parts) {
    for (uint8_t s : p.partition) n += p.deg * s;
  }
  return n;
}

std::string ClassLabel::key() const {
  std::string s;
  for (const auto& p : parts) {
    if (!s.empty()) s += '|';
    s += std::to_string(p.deg) + ':' + std::to_string(p.code) + ':';
    for (size_t i = 0; i < p.partition.size(); ++i) {
      if (i) s += '.';
      s += std::to_string(p.partition[i]);
    }
  }
  return s;
}

std::string ClassLabel::to_string(const FieldContext& F) const {
  std::ostringstream os;
  for (size_t k = 0; k < parts.size(); ++k) {
    if (k) os << " ";
    os << "(" << F.poly_string(poly_from_code(F, parts[k].deg, parts[k].code)) << ")^[";
    for (size_t i = 0; i < parts[k].partition.size(); ++i) {
      if (i) os << ",";
      os << static_cast<int>(parts[k].partition[i]);
    }
    os << "]";
  }
  return os.str();
}

PolyFq poly_from_code(const FieldContext& F, int deg, int64_t code) {
  PolyFq f;
  f.c.resize(deg + 1);
  for (int i = 0; i < deg; ++i) {
    f.c[i] = static_cast<Elem>(code % F.q());
    code /= F.q();
  }
  f.c[deg] = 1;
  return f;
}

namespace {

// Conjugate partition of the block sizes from the nullity sequence of f(g)^i.
std::vector<uint8_t> partition_for_factor(const FieldContext& F, const Mat& g, const PolyFq& f,
                                          int mult) {
  if (mult == 1) return {1};
  const int n = g.rows;
  const int d = f.degree();
  Mat M = poly_at_matrix(F, f, g);
  std::vector<int> conj;
  Mat P = identity(n);
  int prev = 0;
  while (prev < d * mult) {
    P = mat_mul(F, P, M);
    int nul = n - rank(F, P);
    int step = (nul - prev) / d;
    if (step <= 0) throw std::logic_error("nullity sequence stalled in class label");
    conj.push_back(step);
    prev = nul;
    if (step == 1) {
      for (; prev < d * mult; prev += d) conj.push_back(1);
    }
  }
  std::vector<uint8_t> parts;
  for (int j = 1; j <= conj[0]; ++j) {
    int cnt = 0;
    for (int c : conj) cnt += (c >= j);
    parts.push_back(static_cast<uint8_t>(cnt));
  }
  return parts;
}

}  // namespace

ClassLabel class_label(const FieldContext& F, const Mat& g) {
  if (!g.square()) throw std::invalid_argument("class label needs a square matrix");
  PolyFq rest = charpoly(F, g);
  if (rest.c[0] == 0) throw std::domain_error("class label of a singular matrix");
  ClassLabel L;
  auto add_part = [&](const PolyFq& f, int mult) {
    LabelPart part;
    part.deg = f.degree();
    part.code = F.poly_code(f);
    part.partition = partition_for_factor(F, g, f, mult);
    L.parts.push_back(std::move(part));
  };
  // Linear factors by synthetic division.
  for (int a = 1; a < F.q() && rest.degree() > 0; ++a) {
    PolyFq f{{F.neg(static_cast<Elem>(a)), 1}};
    int mult = 0;
    PolyFq quo;
    while (rest.degree() > 0 && F.poly_divides(rest, f, quo)) {
      rest = quo;
      ++mult;
    }
    if (mult) add_part(f, mult);
  }
  for (int d = 2; 2 * d <= rest.degree(); ++d) {
    for (const PolyFq& f : F.irreducible_monics(d)) {
      if (2 * d > rest.degree()) break;
      int mult = 0;
      PolyFq quo;
      while (rest.degree() >= d && F.poly_divides(rest, f, quo)) {
        rest = quo;
        ++mult;
      }
      if (mult) add_part(f, mult);
    }
  }
  if (rest.degree() > 0) add_part(rest, 1);
  std::sort(L.parts.begin(), L.parts.end());
  return L;
}

Mat class_representative(const FieldContext& F, const ClassLabel& L) {
  std::vector<Mat> blocks;
  for (const auto& part : L.parts) {
    PolyFq f = poly_from_code(F, part.deg, part.code);
    Mat C = companion(F, f);
    const int d = part.deg;
    for (uint8_t s : part.partition) {
      Mat J(d * s, d * s);
      for (int b = 0; b < s; ++b) {
        set_block(J, b * d, b * d, C);
        if (b + 1 < s) set_block(J, b * d, (b + 1) * d, identity(d));
      }
      blocks.push_back(J);
    }
  }
  return block_diag(blocks);
}

mpz_class centralizer_order(const FieldContext& F, const ClassLabel& L) {
  mpz_class total = 1;
  for (const auto& part : L.parts) {
    mpz_class Q;
    mpz_ui_pow_ui(Q.get_mpz_t(), F.q(), part.deg);
    // exponent sum of squares of the conjugate partition
    int first = part.partition.empty() ? 0 : part.partition[0];
    long sq = 0;
    for (int j = 1; j <= first; ++j) {
      long c = 0;
      for (uint8_t s : part.partition) c += (s >= j);
      sq += c * c;
    }
    long neg = 0;
    mpz_class prod = 1;
    for (int j = 1; j <= first; ++j) {
      int mj = 0;
      for (uint8_t s : part.partition) mj += (s == j);
      for (int i = 1; i <= mj; ++i) {
        mpz_class Qi;
        mpz_pow_ui(Qi.get_mpz_t(), Q.get_mpz_t(), i);
        prod *= Qi - 1;
        neg += i;
      }
    }
    mpz_class Qe;
    mpz_pow_ui(Qe.get_mpz_t(), Q.get_mpz_t(), sq - neg);
    total *= Qe * prod;
  }
  return total;
}

mpz_class gl_order(int q, int n) {
  mpz_class qn, r = 1;
  mpz_ui_pow_ui(qn.get_mpz_t(), q, n);
  for (int i = 0; i < n; ++i) {
    mpz_class qi;
    mpz_ui_pow_ui(qi.get_mpz_t(), q, i);
    r *= qn - qi;
  }
  return r;
}

std::vector<std::vector<uint8_t>> partitions_of(int s) {
  std::vector<std::vector<uint8_t>> out;
  std::vector<uint8_t> cur;
  auto rec = [&](auto&& self, int rem, int maxpart) -> void {
    if (rem == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(rem, maxpart); p >= 1; --p) {
      cur.push_back(static_cast<uint8_t>(p));
      self(self, rem - p, p);
      cur.pop_back();
    }
  };
  rec(rec, s, s);
  return out;
}

mpz_class gaussian_binomial(int q, int n, int d) {
  if (d < 0 || d > n) return 0;
  mpz_class num = 1, den = 1;
  for (int i = 0; i < d; ++i) {
    mpz_class a, b;
    mpz_ui_pow_ui(a.get_mpz_t(), q, n - i);
    mpz_ui_pow_ui(b.get_mpz_t(), q, i + 1);
    num *= a - 1;
    den *= b - 1;
  }
  return num / den;
}

std::vector<Subspace> enumerate_subspaces(const FieldContext& F, int n, int d) {
  std::vector<Subspace> out;
  if (d < 0 || d > n) return out;
  const int q = F.q();
  std::vector<int> piv(d);
  for (int i = 0; i < d; ++i) piv[i] = i;
  while (true) {
    std::vector<std::pair<int, int>> free;
    for (int i = 0; i < d; ++i) {
      for (int j = piv[i] + 1; j < n; ++j) {
        if (std::find(piv.begin(), piv.end(), j) == piv.end()) free.emplace_back(i, j);
      }
    }
    uint64_t total = 1;
    for (size_t k = 0; k < free.size(); ++k) total *= q;
    for (uint64_t code = 0; code < total; ++code) {
      Subspace S;
      S.basis = Mat(d, n);
      for (int i = 0; i < d; ++i) {
        S.basis.at(i, piv[i]) = 1;
        S.pivots[i] = static_cast<uint8_t>(piv[i]);
      }
      uint64_t c = code;
      for (int k = static_cast<int>(free.size()) - 1; k >= 0; --k) {
        S.basis.at(free[k].first, free[k].second) = static_cast<Elem>(c % q);
        c /= q;
      }
      out.push_back(S);
    }
    int i = d - 1;
    while (i >= 0 && piv[i] == n - d + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int k = i + 1; k < d; ++k) piv[k] = piv[k - 1] + 1;
  }
  return out;
}

namespace {

// Reduced row echelon form in place; returns the rank and pivot columns.
int rref(const FieldContext& F, Mat& A, std::array<uint8_t, kMaxN>& piv) {
  int r = 0;
  for (int col = 0; col < A.cols && r < A.rows; ++col) {
    int sel = -1;
    for (int i = r; i < A.rows; ++i) {
      if (A.at(i, col)) {
        sel = i;
        break;
      }
    }
    if (sel < 0) continue;
    for (int j = 0; j < A.cols; ++j) std::swap(A.at(r, j), A.at(sel, j));
    Elem inv = F.inv(A.at(r, col));
    for (int j = 0; j < A.cols; ++j) A.at(r, j) = F.mul(A.at(r, j), inv);
    for (int i = 0; i < A.rows; ++i) {
      if (i == r || !A.at(i, col)) continue;
      Elem f = A.at(i, col);
      for (int j = 0; j < A.cols; ++j) A.at(i, j) = F.sub(A.at(i, j), F.mul(f, A.at(r, j)));
    }
    piv[r++] = static_cast<uint8_t>(col);
  }
  return r;
}

}  // namespace

void for_each_flag_chain(const FieldContext& F, int n, const std::vector<int>& composition,
                         const std::function<void(const std::vector<Mat>&)>& visit,
                         uint64_t budget) {
  int sum = 0;
  for (int c : composition) {
    if (c <= 0) throw std::invalid_argument("composition parts must be positive");
    sum += c;
  }
  if (sum != n) throw std::invalid_argument("composition does not sum to n");
  if (count_flag_chains(F, n, composition) > budget) {
    throw BudgetExceeded("flag chain count exceeds budget");
  }
  const size_t levels = composition.size() - 1;
  std::vector<Mat> chain;
  auto rec = [&](auto&& self, const Mat& cur, const std::array<uint8_t, kMaxN>& piv) -> void {
    if (chain.size() == levels) {
      visit(chain);
      return;
    }
    const int have = cur.rows;
    const int step = composition[chain.size()];
    std::vector<int> comp;
    for (int j = 0; j < n; ++j) {
      bool is_piv = false;
      for (int i = 0; i < have; ++i) is_piv |= (piv[i] == j);
      if (!is_piv) comp.push_back(j);
    }
    for (const Subspace& W : enumerate_subspaces(F, n - have, step)) {
      Mat next(have + step, n);
      for (int i = 0; i < have; ++i) {
        for (int j = 0; j < n; ++j) next.at(i, j) = cur.at(i, j);
      }
      for (int i = 0; i < step; ++i) {
        for (size_t k = 0; k < comp.size(); ++k) next.at(have + i, comp[k]) = W.basis.at(i, k);
      }
      std::array<uint8_t, kMaxN> np{};
      rref(F, next, np);
      chain.push_back(next);
      self(self, next, np);
      chain.pop_back();
    }
  };
  rec(rec, Mat(0, n), {});
}

uint64_t count_flag_chains(const FieldContext& F, int n, const std::vector<int>& composition) {
  mpz_class total = 1;
  int rem = n;
  for (size_t i = 0; i + 1 < composition.size(); ++i) {
    total *= gaussian_binomial(F.q(), rem, composition[i]);
    rem -= composition[i];
  }
  if (!total.fits_ulong_p()) return UINT64_MAX;
  return total.get_ui();
}

std::vector<std::pair<int, int>> unipotent_positions(const std::vector<int>& composition) {
  std::vector<int> start;
  int n = 0;
  for (int c : composition) {
    start.push_back(n);
    n += c;
  }
  std::vector<int> block_of(n);
  for (size_t b = 0; b < composition.size(); ++b) {
    for (int i = 0; i < composition[b]; ++i) block_of[start[b] + i] = static_cast<int>(b);
  }
  std::vector<std::pair<int, int>> pos;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (block_of[j] > block_of[i]) pos.emplace_back(i, j);
    }
  }
  return pos;
}

std::vector<Mat> enumerate_unipotent_radical(const FieldContext& F,
                                             const std::vector<int>& composition,
                                             uint64_t budget) {
  int n = 0;
  for (int c : composition) n += c;
  if (n > kMaxN) throw std::invalid_argument("unipotent radical too large");
  auto pos = unipotent_positions(composition);
  mpz_class size;
  mpz_ui_pow_ui(size.get_mpz_t(), F.q(), pos.size());
  if (size > budget) throw BudgetExceeded("unipotent radical exceeds budget");
  const uint64_t total = size.get_ui();
  std::vector<Mat> out;
  out.reserve(total);
  for (uint64_t code = 0; code < total; ++code) {
    Mat U = identity(n);
    uint64_t c = code;
    for (int k = static_cast<int>(pos.size()) - 1; k >= 0; --k) {
      U.at(pos[k].first, pos[k].second) = static_cast<Elem>(c % F.q());
      c /= F.q();
    }
    out.push_back(U);
  }
  return out;
}

bool stable_blocks(const FieldContext& F, const Mat& g, const Subspace& V, Mat& on_sub,
                   Mat& on_quotient) {
  const int n = g.rows;
  const int d = V.dim();
  // Adapted basis: the basis vectors of V followed by standard vectors at non-pivot columns.
  Mat S(n, n);
  for (int i = 0; i < d; ++i) {
    for (int r = 0; r < n; ++r) S.at(r, i) = V.basis.at(i, r);
  }
  int col = d;
  for (int j = 0; j < n; ++j) {
    bool is_piv = false;
    for (int i = 0; i < d; ++i) is_piv |= (V.pivots[i] == j);
    if (!is_piv) S.at(j, col++) = 1;
  }
  Mat gS = mat_mul(F, g, S);
  // Coordinates of g v_i in the adapted basis: the pivot entries give the V-part directly, so
  // g v_i lies in V iff gS(:, i) minus that combination vanishes.
  for (int i = 0; i < d; ++i) {
    for (int r = 0; r < n; ++r) {
      Elem acc = gS.at(r, i);
      for (int t = 0; t < d; ++t) {
        acc = F.sub(acc, F.mul(gS.at(V.pivots[t], i), V.basis.at(t, r)));
      }
      if (acc) return false;
    }
  }
  Mat M = mat_mul(F, mat_inv(F, S), gS);
  on_sub = get_block(M, 0, 0, d, d);
  on_quotient = get_block(M, d, d, n - d, n - d);
  return true;
}

GroupPtr GroupContext::build(FieldPtr F, int n) {
  if (n < 1 || n > kMaxN) throw std::invalid_argument("GL_n supported for 1 <= n <= 6");
  auto G = std::make_shared<GroupContext>();
  G->F_ = F;
  G->n_ = n;
  G->order_ = gl_order(F->q(), n);
  std::vector<std::pair<int, int64_t>> polys;  // (deg, code), excluding f = x
  for (int d = 1; d <= n; ++d) {
    for (const PolyFq& f : F->irreducible_monics(d)) {
      if (d == 1 && f.c[0] == 0) continue;
      polys.emplace_back(d, F->poly_code(f));
    }
  }
  std::vector<std::vector<std::vector<uint8_t>>> parts_by_size(n + 1);
  for (int s = 1; s <= n; ++s) parts_by_size[s] = partitions_of(s);
  ClassLabel cur;
  auto rec = [&](auto&& self, size_t idx, int rem) -> void {
    if (rem == 0) {
      ClassInfo ci;
      ci.label = cur;
      ci.key = cur.key();
      ci.rep = class_representative(*F, cur);
      ci.centralizer = centralizer_order(*F, cur);
      ci.size = G->order_ / ci.centralizer;
      G->classes_.push_back(std::move(ci));
      return;
    }
    if (idx == polys.size()) return;
    const int d = polys[idx].first;
    if (d > rem) return;
    for (int s = rem / d; s >= 1; --s) {
      for (const auto& lam : parts_by_size[s]) {
        cur.parts.push_back({d, polys[idx].second, lam});
        self(self, idx + 1, rem - d * s);
        cur.parts.pop_back();
      }
    }
    self(self, idx + 1, rem);
  };
  rec(rec, 0, n);
  mpz_class total = 0;
  for (size_t i = 0; i < G->classes_.size(); ++i) {
    total += G->classes_[i].size;
    G->index_.emplace(G->classes_[i].key, static_cast<int>(i));
  }
  if (total != G->order_) throw std::logic_error("class sizes do not sum to the group order");
  G->identity_ = G->index_of(class_label(*F, identity(n)));
  uint64_t ncodes = 1;
  for (int i = 0; i < n; ++i) ncodes *= F->q();
  G->by_charpoly_.resize(ncodes);
  for (size_t i = 0; i < G->classes_.size(); ++i) {
    const ClassLabel& L = G->classes_[i].label;
    PolyFq cp{{1}};
    std::vector<std::vector<uint8_t>> sig;
    std::vector<std::pair<PolyFq, int>> rep;
    for (const auto& part : L.parts) {
      PolyFq f = poly_from_code(*F, part.deg, part.code);
      int mult = 0;
      for (uint8_t s : part.partition) mult += s;
      for (int t = 0; t < mult; ++t) cp = F->poly_mul(cp, f);
      if (mult > 1) {
        rep.emplace_back(f, mult);
        sig.push_back(part.partition);
      }
    }
    auto& entry = G->by_charpoly_[F->poly_code(cp)];
    entry.repeated = rep;
    entry.candidates.emplace_back(sig, static_cast<int>(i));
  }
  G->subspaces_.resize(n + 1);
  return G;
}

int GroupContext::index_of(const ClassLabel& L) const {
  auto it = index_.find(L.key());
  if (it == index_.end()) throw std::logic_error("unknown class label " + L.key());
  return it->second;
}

int GroupContext::class_index(const Mat& g) const {
  if (g.rows != n_ || g.cols != n_) throw std::invalid_argument("matrix size does not match group");
  PolyFq cp = charpoly(*F_, g);
  if (cp.c[0] == 0) throw std::domain_error("class of a singular matrix");
  const CharpolyEntry& entry = by_charpoly_[F_->poly_code(cp)];
  if (entry.candidates.size() == 1) return entry.candidates[0].second;
  std::vector<std::vector<uint8_t>> sig;
  sig.reserve(entry.repeated.size());
  for (const auto& [f, mult] : entry.repeated) sig.push_back(partition_for_factor(*F_, g, f, mult));
  for (const auto& [cand, idx] : entry.candidates) {
    if (cand == sig) return idx;
  }
  throw std::logic_error("class table lookup failed");
}

std::vector<int32_t> GroupContext::value_resolver(const std::function<bool(int, int)>& same) const {
  std::vector<int32_t> out(by_charpoly_.size(), -1);
  for (size_t code = 0; code < by_charpoly_.size(); ++code) {
    const auto& cands = by_charpoly_[code].candidates;
    if (cands.empty()) continue;
    bool uniform = true;
    for (const auto& cand : cands) uniform = uniform && same(cands[0].second, cand.second);
    if (uniform) out[code] = cands[0].second;
  }
  return out;
}

int GroupContext::class_index_resolved(const Mat& g, const std::vector<int32_t>& resolver) const {
  PolyFq cp = charpoly(*F_, g);
  if (cp.c[0] == 0) throw std::domain_error("class of a singular matrix");
  const int64_t code = F_->poly_code(cp);
  if (resolver[code] >= 0) return resolver[code];
  const CharpolyEntry& entry = by_charpoly_[code];
  std::vector<std::vector<uint8_t>> sig;
  sig.reserve(entry.repeated.size());
  for (const auto& [f, mult] : entry.repeated) sig.push_back(partition_for_factor(*F_, g, f, mult));
  for (const auto& [cand, idx] : entry.candidates) {
    if (cand == sig) return idx;
  }
  throw std::logic_error("class table lookup failed");
}

const std::vector<Subspace>& GroupContext::subspaces(int d) const {
  if (d < 0 || d > n_) throw std::out_of_range("subspace dimension out of range");
  std::lock_guard<std::mutex> lock(sub_mu_);
  auto& slot = subspaces_[d];
  if (!slot) {
    mpz_class cnt = gaussian_binomial(F_->q(), n_, d);
    if (cnt > Budgets{}.max_flag_chains) throw BudgetExceeded("subspace table exceeds budget");
    slot = std::make_unique<std::vector<Subspace>>(enumerate_subspaces(*F_, n_, d));
  }
  return *slot;
}

}  // namespace gkb
