#include "gkb/cyclo.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "gkb/kernels.hpp"

namespace gkb {
namespace {

using Poly = std::vector<int64_t>;

Poly poly_exact_div(const Poly& num, const Poly& den) {
  Poly r = num;
  int dn = static_cast<int>(den.size()) - 1;
  int nn = static_cast<int>(num.size()) - 1;
  Poly quo(nn - dn + 1, 0);
  for (int i = nn - dn; i >= 0; --i) {
    int64_t c = r[i + dn];  // den is monic
    quo[i] = c;
    if (c == 0) continue;
    for (int j = 0; j <= dn; ++j) r[i + j] -= c * den[j];
  }
  for (int j = 0; j < dn; ++j) {
    if (r[j] != 0) throw std::logic_error("cyclotomic division is not exact");
  }
  return quo;
}

Poly cyclotomic(int m, std::map<int, Poly>& memo) {
  auto it = memo.find(m);
  if (it != memo.end()) return it->second;
  Poly f(m + 1, 0);
  f[0] = -1;
  f[m] = 1;
  for (int d = 1; d < m; ++d) {
    if (m % d == 0) f = poly_exact_div(f, cyclotomic(d, memo));
  }
  memo[m] = f;
  return f;
}

void i128_to_mpz(__int128 v, mpz_class& out) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1
                            : static_cast<unsigned __int128>(v);
  uint64_t hi = static_cast<uint64_t>(u >> 64);
  uint64_t lo = static_cast<uint64_t>(u);
  out = hi;
  out <<= 64;
  out += mpz_class(std::to_string(lo));
  if (neg) out = -out;
}

std::string rational_string(const mpq_class& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// out += r * zeta^j in coordinates.
void add_power(std::vector<mpq_class>& out, const CycloContext& ctx, int64_t j,
               const mpq_class& r) {
  const int64_t* row = ctx.power(j);
  for (int i = 0; i < ctx.phi(); ++i) {
    if (row[i] != 0) out[i] += r * row[i];
  }
}

void mul_into(const CycloContext& ctx, const std::vector<mpq_class>& x,
              const std::vector<mpq_class>& y, std::vector<mpq_class>& out,
              const mpq_class& scale) {
  const int phi = ctx.phi();
  std::vector<mpq_class> full(2 * phi - 1);
  bool any = false;
  for (int i = 0; i < phi; ++i) {
    if (sgn(x[i]) == 0) continue;
    for (int j = 0; j < phi; ++j) {
      if (sgn(y[j]) == 0) continue;
      full[i + j] += x[i] * y[j];
      any = true;
    }
  }
  if (!any) return;
  for (int i = 0; i < phi; ++i) {
    if (sgn(full[i]) != 0) out[i] += scale * full[i];
  }
  for (int j = phi; j < 2 * phi - 1; ++j) {
    if (sgn(full[j]) != 0) add_power(out, ctx, j, scale * full[j]);
  }
}

bool all_zero(const std::vector<mpq_class>& v) {
  for (const auto& c : v) {
    if (sgn(c) != 0) return false;
  }
  return true;
}

// Finds (r, j) with v = r * zeta^j.
bool match_monomial(const CycloContext& ctx, const std::vector<mpq_class>& v, mpq_class& r,
                    int& j) {
  int lead = -1;
  for (int i = 0; i < ctx.phi(); ++i) {
    if (sgn(v[i]) != 0) {
      lead = i;
      break;
    }
  }
  if (lead < 0) return false;
  for (int e = 0; e < ctx.m(); ++e) {
    const int64_t* row = ctx.power(e);
    if (row[lead] == 0) continue;
    mpq_class cand = v[lead] / row[lead];
    bool ok = true;
    for (int i = 0; i < ctx.phi() && ok; ++i) ok = (v[i] == cand * row[i]);
    if (ok) {
      r = cand;
      j = e;
      return true;
    }
  }
  return false;
}

}  // namespace

CycloPtr CycloContext::make(int q) {
  if (q < 2) throw std::invalid_argument("q must be a prime power >= 2");
  int p = 0;
  for (int d = 2; d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  int t = q;
  while (t % p == 0) t /= p;
  if (t != 1) throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power");
  int64_t m = std::lcm<int64_t>(p, static_cast<int64_t>(q) * q - 1);
  if (m > kMaxOrder) {
    throw std::invalid_argument("root-of-unity order " + std::to_string(m) +
                                " exceeds the configured bound");
  }
  auto ctx = std::make_shared<CycloContext>();
  ctx->q_ = q;
  ctx->p_ = p;
  ctx->m_ = static_cast<int>(m);
  std::map<int, Poly> memo;
  ctx->cyclo_ = cyclotomic(ctx->m_, memo);
  ctx->phi_ = static_cast<int>(ctx->cyclo_.size()) - 1;
  const int phi = ctx->phi_;
  ctx->table_.assign(static_cast<size_t>(ctx->m_) * phi, 0);
  std::vector<int64_t> row(phi, 0);
  row[0] = 1;
  for (int j = 0; j < ctx->m_; ++j) {
    std::copy(row.begin(), row.end(), ctx->table_.begin() + static_cast<size_t>(j) * phi);
    int64_t top = row[phi - 1];
    for (int i = phi - 1; i > 0; --i) row[i] = row[i - 1];
    row[0] = 0;
    if (top != 0) {
      for (int i = 0; i < phi; ++i) row[i] -= top * ctx->cyclo_[i];
    }
  }
  return ctx;
}

ScaledCyclotomic::ScaledCyclotomic(CycloPtr ctx) : ctx_(std::move(ctx)) {
  a_.assign(ctx_->phi(), 0);
  b_.assign(ctx_->phi(), 0);
}

ScaledCyclotomic::ScaledCyclotomic(CycloPtr ctx, const mpq_class& r)
    : ScaledCyclotomic(std::move(ctx)) {
  a_[0] = r;
}

ScaledCyclotomic ScaledCyclotomic::sqrt_q(CycloPtr ctx) {
  ScaledCyclotomic x(std::move(ctx));
  x.b_[0] = 1;
  return x;
}

ScaledCyclotomic ScaledCyclotomic::root_of_unity(CycloPtr ctx, int order, int64_t j) {
  if (order <= 0 || ctx->m() % order != 0) {
    throw std::invalid_argument("root order " + std::to_string(order) + " does not divide m = " +
                                std::to_string(ctx->m()));
  }
  int64_t step = ctx->m() / order;
  return zeta(std::move(ctx), step * (j % order));
}

ScaledCyclotomic ScaledCyclotomic::zeta(CycloPtr ctx, int64_t j) {
  ScaledCyclotomic x(ctx);
  const int64_t* row = ctx->power(j);
  for (int i = 0; i < ctx->phi(); ++i) x.a_[i] = row[i];
  return x;
}

ScaledCyclotomic ScaledCyclotomic::q_half_power(CycloPtr ctx, int e) {
  mpz_class qq = ctx->q();
  int k = e >= 0 ? e / 2 : -((-e + 1) / 2);  // floor(e / 2)
  bool odd = (e % 2) != 0;
  mpq_class r = 1;
  mpz_class pw;
  mpz_pow_ui(pw.get_mpz_t(), qq.get_mpz_t(), static_cast<unsigned long>(k >= 0 ? k : -k));
  if (k >= 0) {
    r = pw;
  } else {
    r = mpq_class(1, 1) / mpq_class(pw);
  }
  ScaledCyclotomic x(std::move(ctx));
  if (odd) {
    x.b_[0] = r;
  } else {
    x.a_[0] = r;
  }
  return x;
}

ScaledCyclotomic ScaledCyclotomic::from_int_coords(CycloPtr ctx, const int64_t* coords) {
  ScaledCyclotomic x(ctx);
  for (int i = 0; i < ctx->phi(); ++i) {
    if (coords[i] != 0) x.a_[i] = static_cast<long>(coords[i]);
  }
  return x;
}

void ScaledCyclotomic::check_same(const ScaledCyclotomic& o) const {
  if (!ctx_ || !o.ctx_) throw std::logic_error("uninitialized scalar");
  if (ctx_ != o.ctx_ && (ctx_->q() != o.ctx_->q() || ctx_->m() != o.ctx_->m())) {
    throw std::invalid_argument("scalar context mismatch");
  }
}

bool ScaledCyclotomic::is_zero() const { return all_zero(a_) && all_zero(b_); }

bool ScaledCyclotomic::is_one() const {
  if (a_[0] != 1 || !all_zero(b_)) return false;
  for (size_t i = 1; i < a_.size(); ++i) {
    if (sgn(a_[i]) != 0) return false;
  }
  return true;
}

bool ScaledCyclotomic::has_sqrt_part() const { return !all_zero(b_); }

bool ScaledCyclotomic::as_rational(mpq_class& out) const {
  if (!all_zero(b_)) return false;
  for (size_t i = 1; i < a_.size(); ++i) {
    if (sgn(a_[i]) != 0) return false;
  }
  out = a_[0];
  return true;
}

bool ScaledCyclotomic::int_coords(std::vector<int64_t>& out) const {
  if (!all_zero(b_)) return false;
  out.assign(a_.size(), 0);
  for (size_t i = 0; i < a_.size(); ++i) {
    if (a_[i].get_den() != 1 || !a_[i].get_num().fits_slong_p()) return false;
    out[i] = a_[i].get_num().get_si();
  }
  return true;
}

ScaledCyclotomic ScaledCyclotomic::operator+(const ScaledCyclotomic& o) const {
  ScaledCyclotomic r = *this;
  r += o;
  return r;
}

ScaledCyclotomic ScaledCyclotomic::operator-(const ScaledCyclotomic& o) const {
  ScaledCyclotomic r = *this;
  r -= o;
  return r;
}

ScaledCyclotomic& ScaledCyclotomic::operator+=(const ScaledCyclotomic& o) {
  check_same(o);
  for (size_t i = 0; i < a_.size(); ++i) {
    if (sgn(o.a_[i]) != 0) a_[i] += o.a_[i];
    if (sgn(o.b_[i]) != 0) b_[i] += o.b_[i];
  }
  return *this;
}

ScaledCyclotomic& ScaledCyclotomic::operator-=(const ScaledCyclotomic& o) {
  check_same(o);
  for (size_t i = 0; i < a_.size(); ++i) {
    if (sgn(o.a_[i]) != 0) a_[i] -= o.a_[i];
    if (sgn(o.b_[i]) != 0) b_[i] -= o.b_[i];
  }
  return *this;
}

ScaledCyclotomic ScaledCyclotomic::operator-() const {
  ScaledCyclotomic r = *this;
  for (auto& c : r.a_) c = -c;
  for (auto& c : r.b_) c = -c;
  return r;
}

ScaledCyclotomic ScaledCyclotomic::operator*(const ScaledCyclotomic& o) const {
  check_same(o);
  ScaledCyclotomic r(ctx_);
  bool b1 = !all_zero(b_), b2 = !all_zero(o.b_);
  mul_into(*ctx_, a_, o.a_, r.a_, 1);
  if (b1 && b2) mul_into(*ctx_, b_, o.b_, r.a_, ctx_->q());
  if (b2) mul_into(*ctx_, a_, o.b_, r.b_, 1);
  if (b1) mul_into(*ctx_, b_, o.a_, r.b_, 1);
  return r;
}

bool ScaledCyclotomic::operator==(const ScaledCyclotomic& o) const {
  check_same(o);
  return a_ == o.a_ && b_ == o.b_;
}

ScaledCyclotomic ScaledCyclotomic::scaled(const mpq_class& r) const {
  ScaledCyclotomic x = *this;
  for (auto& c : x.a_) {
    if (sgn(c) != 0) c *= r;
  }
  for (auto& c : x.b_) {
    if (sgn(c) != 0) c *= r;
  }
  return x;
}

ScaledCyclotomic ScaledCyclotomic::times_zeta(int64_t j) const {
  ScaledCyclotomic x(ctx_);
  for (int i = 0; i < ctx_->phi(); ++i) {
    if (sgn(a_[i]) != 0) add_power(x.a_, *ctx_, i + j, a_[i]);
    if (sgn(b_[i]) != 0) add_power(x.b_, *ctx_, i + j, b_[i]);
  }
  return x;
}

ScaledCyclotomic ScaledCyclotomic::conj() const {
  ScaledCyclotomic x(ctx_);
  for (int i = 0; i < ctx_->phi(); ++i) {
    if (sgn(a_[i]) != 0) add_power(x.a_, *ctx_, -i, a_[i]);
    if (sgn(b_[i]) != 0) add_power(x.b_, *ctx_, -i, b_[i]);
  }
  return x;
}

ScaledCyclotomic ScaledCyclotomic::div_by_sqrt_q() const {
  ScaledCyclotomic x(ctx_);
  x.a_ = b_;
  mpq_class inv_q(1, ctx_->q());
  for (int i = 0; i < ctx_->phi(); ++i) {
    if (sgn(a_[i]) != 0) x.b_[i] = a_[i] * inv_q;
  }
  return x;
}

void ScaledCyclotomic::add_zeta(int64_t j, const mpq_class& r) { add_power(a_, *ctx_, j, r); }

bool ScaledCyclotomic::try_invert_monomial(ScaledCyclotomic& out) const {
  mpq_class r;
  int j = 0;
  if (all_zero(b_)) {
    if (!match_monomial(*ctx_, a_, r, j)) return false;
    out = zeta(ctx_, -j).scaled(1 / r);
    return true;
  }
  if (all_zero(a_)) {
    if (!match_monomial(*ctx_, b_, r, j)) return false;
    out = zeta(ctx_, -j).scaled(1 / (r * ctx_->q())) * sqrt_q(ctx_);
    return true;
  }
  return false;
}

std::pair<double, double> ScaledCyclotomic::to_complex_approx() const {
  const double pi = std::acos(-1.0);
  double re = 0, im = 0, sre = 0, sim = 0;
  for (int i = 0; i < ctx_->phi(); ++i) {
    double ang = 2 * pi * i / ctx_->m();
    double av = a_[i].get_d(), bv = b_[i].get_d();
    re += av * std::cos(ang);
    im += av * std::sin(ang);
    sre += bv * std::cos(ang);
    sim += bv * std::sin(ang);
  }
  double s = std::sqrt(static_cast<double>(ctx_->q()));
  re += s * sre;
  im += s * sim;
  if (std::fabs(re) < 1e-12) re = 0;
  if (std::fabs(im) < 1e-12) im = 0;
  return {re, im};
}

std::string ScaledCyclotomic::to_string() const {
  std::ostringstream os;
  bool first = true;
  auto emit = [&](const std::vector<mpq_class>& v, const char* suffix) {
    for (int i = 0; i < ctx_->phi(); ++i) {
      if (sgn(v[i]) == 0) continue;
      if (!first) os << " + ";
      first = false;
      os << v[i].get_str();
      if (i > 0) os << "*z^" << i;
      os << suffix;
    }
  };
  emit(a_, "");
  emit(b_, "*s");
  if (first) os << "0";
  return os.str();
}

nlohmann::json ScaledCyclotomic::to_json() const {
  nlohmann::json a = nlohmann::json::array(), b = nlohmann::json::array();
  for (int i = 0; i < ctx_->phi(); ++i) {
    a.push_back(rational_string(a_[i]));
    b.push_back(rational_string(b_[i]));
  }
  return {{"m", ctx_->m()}, {"q", ctx_->q()}, {"a", a}, {"b", b}};
}

ScaledCyclotomic ScaledCyclotomic::from_json(CycloPtr ctx, const nlohmann::json& j) {
  if (j.at("m").get<int>() != ctx->m() || j.at("q").get<int>() != ctx->q()) {
    throw std::invalid_argument("serialized scalar belongs to a different context");
  }
  ScaledCyclotomic x(ctx);
  const auto& a = j.at("a");
  const auto& b = j.at("b");
  if (static_cast<int>(a.size()) != ctx->phi() || static_cast<int>(b.size()) != ctx->phi()) {
    throw std::invalid_argument("serialized scalar has the wrong length");
  }
  for (int i = 0; i < ctx->phi(); ++i) {
    x.a_[i] = mpq_class(a[i].get<std::string>());
    x.a_[i].canonicalize();
    x.b_[i] = mpq_class(b[i].get<std::string>());
    x.b_[i].canonicalize();
  }
  return x;
}

CycloAccumulator::CycloAccumulator(CycloPtr ctx) : ctx_(std::move(ctx)), m_(ctx_->m()) {
  acc_.assign(m_, 0);
}

void CycloAccumulator::clear() { std::fill(acc_.begin(), acc_.end(), 0); }

void CycloAccumulator::add_rotated(const int64_t* coords, int64_t shift) {
  int s = static_cast<int>(((shift % m_) + m_) % m_);
  kernels::active_kernels().rotate_add(acc_.data(), m_, coords, ctx_->phi(), s, 1);
}

void CycloAccumulator::sub_rotated(const int64_t* coords, int64_t shift) {
  int s = static_cast<int>(((shift % m_) + m_) % m_);
  kernels::active_kernels().rotate_add(acc_.data(), m_, coords, ctx_->phi(), s, -1);
}

void CycloAccumulator::add_scaled_rotated(const int64_t* coords, int64_t shift, int64_t w) {
  int s = static_cast<int>(((shift % m_) + m_) % m_);
  const int phi = ctx_->phi();
  for (int i = 0; i < phi; ++i) {
    int j = s + i;
    if (j >= m_) j -= m_;
    acc_[j] += w * coords[i];
  }
}

void CycloAccumulator::merge(const CycloAccumulator& o) {
  for (int i = 0; i < m_; ++i) acc_[i] += o.acc_[i];
}

ScaledCyclotomic CycloAccumulator::to_scalar() const {
  const int phi = ctx_->phi();
  std::vector<__int128> sum(phi, 0);
  for (int j = 0; j < m_; ++j) {
    if (acc_[j] == 0) continue;
    const int64_t* row = ctx_->power(j);
    for (int i = 0; i < phi; ++i) sum[i] += static_cast<__int128>(acc_[j]) * row[i];
  }
  ScaledCyclotomic out(ctx_);
  mpz_class z;
  for (int i = 0; i < phi; ++i) {
    if (sum[i] == 0) continue;
    i128_to_mpz(sum[i], z);
    out.a_[i] = z;
  }
  return out;
}

}  // namespace gkb
