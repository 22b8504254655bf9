#include "gkb/field.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace gkb {
namespace {

// Polynomial over F_p given as digits low to high; used only while building F_q.
using PrimePoly = std::vector<int>;

PrimePoly prime_poly_mod(PrimePoly a, const PrimePoly& m, int p) {
  int dm = static_cast<int>(m.size()) - 1;
  for (int i = static_cast<int>(a.size()) - 1; i >= dm; --i) {
    int c = a[i] % p;
    if (c == 0) continue;
    for (int j = 0; j <= dm; ++j) a[i - dm + j] = ((a[i - dm + j] - c * m[j]) % p + p) % p;
  }
  a.resize(std::min<size_t>(a.size(), dm));
  return a;
}

bool prime_poly_irreducible(const PrimePoly& f, int p) {
  int d = static_cast<int>(f.size()) - 1;
  for (int dd = 1; dd * 2 <= d; ++dd) {
    int count = 1;
    for (int i = 0; i < dd; ++i) count *= p;
    for (int code = 0; code < count; ++code) {
      PrimePoly g(dd + 1, 0);
      int c = code;
      for (int i = 0; i < dd; ++i) {
        g[i] = c % p;
        c /= p;
      }
      g[dd] = 1;
      PrimePoly r = prime_poly_mod(f, g, p);
      bool zero = std::all_of(r.begin(), r.end(), [](int v) { return v == 0; });
      if (zero) return false;
    }
  }
  return true;
}

}  // namespace

bool PolyFq::operator<(const PolyFq& o) const {
  if (c.size() != o.c.size()) return c.size() < o.c.size();
  for (size_t i = c.size(); i-- > 0;) {
    if (c[i] != o.c[i]) return c[i] < o.c[i];
  }
  return false;
}

FieldPtr FieldContext::make(int q) {
  if (q < 2 || q > kMaxQ) {
    throw std::invalid_argument("field size must satisfy 2 <= q <= " + std::to_string(kMaxQ));
  }
  int p = 0;
  for (int d = 2; d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  int e = 0, t = q;
  while (t % p == 0) {
    t /= p;
    ++e;
  }
  if (t != 1) throw std::invalid_argument("q = " + std::to_string(q) + " is not a prime power");

  auto F = std::make_shared<FieldContext>();
  F->p_ = p;
  F->e_ = e;
  F->q_ = q;
  if (e == 1) {
    F->modulus_ = {0, 1};
  } else {
    int count = 1;
    for (int i = 0; i < e; ++i) count *= p;
    for (int code = 0; code < count; ++code) {
      PrimePoly f(e + 1, 0);
      int c = code;
      for (int i = 0; i < e; ++i) {
        f[i] = c % p;
        c /= p;
      }
      f[e] = 1;
      if (prime_poly_irreducible(f, p)) {
        F->modulus_ = f;
        break;
      }
    }
  }

  auto digits = [&](int x) {
    PrimePoly d(e, 0);
    for (int i = 0; i < e; ++i) {
      d[i] = x % p;
      x /= p;
    }
    return d;
  };
  auto encode = [&](const PrimePoly& d) {
    int x = 0;
    for (int i = e - 1; i >= 0; --i) x = x * p + (i < static_cast<int>(d.size()) ? d[i] : 0);
    return x;
  };

  F->add_.resize(q * q);
  F->mul_.resize(q * q);
  F->neg_.resize(q);
  F->inv_.assign(q, 0);
  for (int a = 0; a < q; ++a) {
    PrimePoly da = digits(a);
    PrimePoly na(e);
    for (int i = 0; i < e; ++i) na[i] = (p - da[i]) % p;
    F->neg_[a] = static_cast<Elem>(encode(na));
    for (int b = 0; b < q; ++b) {
      PrimePoly db = digits(b);
      PrimePoly s(e);
      for (int i = 0; i < e; ++i) s[i] = (da[i] + db[i]) % p;
      F->add_[a * q + b] = static_cast<Elem>(encode(s));
      PrimePoly prod(2 * e - 1, 0);
      for (int i = 0; i < e; ++i) {
        for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
      }
      F->mul_[a * q + b] = static_cast<Elem>(encode(prime_poly_mod(prod, F->modulus_, p)));
    }
  }
  for (int a = 1; a < q; ++a) {
    for (int b = 1; b < q; ++b) {
      if (F->mul_[a * q + b] == 1) F->inv_[a] = static_cast<Elem>(b);
    }
  }

  for (int g = 1; g < q && F->gen_ == 0; ++g) {
    int x = 1, order = 0;
    do {
      x = F->mul_[x * q + g];
      ++order;
    } while (x != 1);
    if (order == q - 1) F->gen_ = static_cast<Elem>(g);
  }
  F->dlog_.assign(q, -1);
  F->exp_.resize(q - 1);
  int x = 1;
  for (int k = 0; k < q - 1; ++k) {
    F->exp_[k] = static_cast<Elem>(x);
    F->dlog_[x] = k;
    x = F->mul_[x * q + F->gen_];
  }

  F->trace_.resize(q);
  for (int a = 0; a < q; ++a) {
    int s = 0, y = a;
    for (int i = 0; i < e; ++i) {
      s = F->add_[s * q + y];
      y = F->pow(static_cast<Elem>(y), p);
    }
    if (s >= p) throw std::logic_error("trace left the prime field");
    F->trace_[a] = s;
  }

  F->build_extension();
  F->build_irreducibles();
  return F;
}

Elem FieldContext::inv(Elem a) const {
  if (a == 0) throw std::domain_error("inverse of zero in F_" + std::to_string(q_));
  return inv_[a];
}

Elem FieldContext::pow(Elem a, int64_t k) const {
  if (k < 0) {
    a = inv(a);
    k = -k;
  }
  Elem r = 1;
  while (k > 0) {
    if (k & 1) r = mul(r, a);
    a = mul(a, a);
    k >>= 1;
  }
  return r;
}

int FieldContext::dlog(Elem x) const {
  if (x == 0) throw std::domain_error("discrete log of zero");
  return dlog_[x];
}

Elem FieldContext::exp(int64_t k) const {
  int64_t r = k % (q_ - 1);
  if (r < 0) r += q_ - 1;
  return exp_[r];
}

int FieldContext::ext_add(int a, int b) const {
  return add(static_cast<Elem>(a % q_), static_cast<Elem>(b % q_)) +
         q_ * add(static_cast<Elem>(a / q_), static_cast<Elem>(b / q_));
}

int FieldContext::ext_pow(int a, int64_t k) const {
  int r = 1;
  while (k > 0) {
    if (k & 1) r = ext_mul(r, a);
    a = ext_mul(a, a);
    k >>= 1;
  }
  return r;
}

int FieldContext::ext_dlog(int x) const {
  if (x == 0) throw std::domain_error("discrete log of zero in F_{q^2}");
  return ext_dlog_[x];
}

void FieldContext::build_extension() {
  const int q = q_, Q = q * q;
  bool found = false;
  for (int code = 0; code < Q && !found; ++code) {
    Elem c0 = static_cast<Elem>(code % q), c1 = static_cast<Elem>(code / q);
    bool root = false;
    for (int x = 0; x < q && !root; ++x) {
      Elem ex = static_cast<Elem>(x);
      root = add(add(mul(ex, ex), mul(c1, ex)), c0) == 0;
    }
    if (!root) {
      ext_c0_ = c0;
      ext_c1_ = c1;
      found = true;
    }
  }
  ext_mul_.resize(static_cast<size_t>(Q) * Q);
  for (int a = 0; a < Q; ++a) {
    Elem a0 = static_cast<Elem>(a % q), a1 = static_cast<Elem>(a / q);
    for (int b = 0; b < Q; ++b) {
      Elem b0 = static_cast<Elem>(b % q), b1 = static_cast<Elem>(b / q);
      Elem r0 = mul(a0, b0);
      Elem r1 = add(mul(a0, b1), mul(a1, b0));
      Elem r2 = mul(a1, b1);
      // y^2 = -c1 y - c0
      r0 = sub(r0, mul(r2, ext_c0_));
      r1 = sub(r1, mul(r2, ext_c1_));
      ext_mul_[a * Q + b] = r0 + q * r1;
    }
  }
  ext_frob_.resize(Q);
  for (int a = 0; a < Q; ++a) ext_frob_[a] = ext_pow(a, q);
  for (int g = 2; g < Q; ++g) {
    int x = 1, order = 0;
    do {
      x = ext_mul(x, g);
      ++order;
    } while (x != 1);
    if (order == Q - 1 && ext_pow(g, q + 1) == gen_) {
      ext_gen_ = g;
      break;
    }
  }
  if (ext_gen_ == 0) throw std::logic_error("no generator of F_{q^2} with the required norm");
  ext_dlog_.assign(Q, -1);
  ext_exp_.resize(Q - 1);
  int x = 1;
  for (int k = 0; k < Q - 1; ++k) {
    ext_exp_[k] = x;
    ext_dlog_[x] = k;
    x = ext_mul(x, ext_gen_);
  }
}

int FieldContext::quadratic_root(Elem c0, Elem c1) const {
  for (int x = 0; x < q2(); ++x) {
    int v = ext_add(ext_add(ext_mul(x, x), ext_mul(c1, x)), c0);
    if (v == 0) return x;
  }
  throw std::invalid_argument("quadratic has no root in F_{q^2}");
}

void FieldContext::build_irreducibles() {
  irreducibles_.assign(1, {});
  for (int d = 1; d <= kMaxDegree; ++d) {
    int64_t count = 1;
    for (int i = 0; i < d; ++i) count *= q_;
    if (count > 1000000) break;
    std::vector<char> reducible(count, 0);
    auto code_of = [&](const PolyFq& f) { return poly_code(f); };
    for (int a = 1; 2 * a <= d; ++a) {
      int64_t rest = 1;
      for (int i = 0; i < d - a; ++i) rest *= q_;
      for (const PolyFq& f : irreducibles_[a]) {
        for (int64_t code = 0; code < rest; ++code) {
          PolyFq g;
          g.c.resize(d - a + 1);
          int64_t cc = code;
          for (int i = 0; i < d - a; ++i) {
            g.c[i] = static_cast<Elem>(cc % q_);
            cc /= q_;
          }
          g.c[d - a] = 1;
          reducible[code_of(poly_mul(f, g))] = 1;
        }
      }
    }
    std::vector<PolyFq> list;
    for (int64_t code = 0; code < count; ++code) {
      if (reducible[code]) continue;
      PolyFq f;
      f.c.resize(d + 1);
      int64_t cc = code;
      for (int i = 0; i < d; ++i) {
        f.c[i] = static_cast<Elem>(cc % q_);
        cc /= q_;
      }
      f.c[d] = 1;
      list.push_back(std::move(f));
    }
    irreducibles_.push_back(std::move(list));
  }
}

const std::vector<PolyFq>& FieldContext::irreducible_monics(int d) const {
  if (d < 1 || d >= static_cast<int>(irreducibles_.size())) {
    throw std::out_of_range("irreducible table not available for degree " + std::to_string(d));
  }
  return irreducibles_[d];
}

int64_t FieldContext::poly_code(const PolyFq& f) const {
  int64_t code = 0;
  for (int i = f.degree() - 1; i >= 0; --i) code = code * q_ + f.c[i];
  return code;
}

PolyFq FieldContext::poly_mul(const PolyFq& a, const PolyFq& b) const {
  PolyFq r;
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = add(r.c[i + j], mul(a.c[i], b.c[j]));
  }
  return r;
}

bool FieldContext::poly_divides(const PolyFq& a, const PolyFq& b, PolyFq& quotient) const {
  int da = a.degree(), db = b.degree();
  if (db > da) return false;
  std::vector<Elem> r = a.c;
  std::vector<Elem> quo(da - db + 1, 0);
  Elem lead_inv = inv(b.c.back());
  for (int i = da - db; i >= 0; --i) {
    Elem c = mul(r[i + db], lead_inv);
    quo[i] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) r[i + j] = sub(r[i + j], mul(c, b.c[j]));
  }
  for (int j = 0; j < db; ++j) {
    if (r[j] != 0) return false;
  }
  quotient.c = std::move(quo);
  return true;
}

PolyFq FieldContext::poly_gcd(PolyFq a, PolyFq b) const {
  auto trim = [](PolyFq& f) {
    while (f.c.size() > 1 && f.c.back() == 0) f.c.pop_back();
  };
  trim(a);
  trim(b);
  auto is_zero = [](const PolyFq& f) { return f.c.size() == 1 && f.c[0] == 0; };
  while (!is_zero(b)) {
    // a mod b
    std::vector<Elem> r = a.c;
    int db = b.degree();
    Elem lead_inv = inv(b.c.back());
    for (int i = static_cast<int>(r.size()) - 1; i >= db; --i) {
      Elem c = mul(r[i], lead_inv);
      if (c == 0) continue;
      for (int j = 0; j <= db; ++j) r[i - db + j] = sub(r[i - db + j], mul(c, b.c[j]));
    }
    r.resize(std::max(1, db));
    PolyFq rem{r};
    trim(rem);
    a = std::move(b);
    b = std::move(rem);
  }
  Elem li = inv(a.c.back());
  for (auto& c : a.c) c = mul(c, li);
  return a;
}

std::string FieldContext::elem_string(Elem x) const {
  if (e_ == 1) return std::to_string(x);
  // polynomial in t with digits base p
  std::ostringstream os;
  bool first = true;
  int v = x;
  for (int i = 0; i < e_; ++i) {
    int d = v % p_;
    v /= p_;
    if (d == 0) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0) {
      os << d;
    } else {
      if (d != 1) os << d;
      os << "t";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

std::string FieldContext::poly_string(const PolyFq& f) const {
  std::ostringstream os;
  bool first = true;
  for (int i = f.degree(); i >= 0; --i) {
    Elem c = f.c[i];
    if (c == 0) continue;
    if (!first) os << "+";
    first = false;
    bool unit = (c == 1 && i > 0);
    std::string cs = elem_string(c);
    if (!unit) os << (e_ > 1 && i > 0 ? "(" + cs + ")" : cs);
    if (i > 0) {
      os << "x";
      if (i > 1) os << "^" << i;
    }
  }
  if (first) os << "0";
  return os.str();
}

std::string FieldContext::modulus_string() const {
  std::ostringstream os;
  os << "F_" << q_;
  if (e_ > 1) {
    os << "=F_" << p_ << "[t]/(";
    bool first = true;
    for (int i = e_; i >= 0; --i) {
      if (modulus_[i] == 0) continue;
      if (!first) os << "+";
      first = false;
      if (i == 0 || modulus_[i] != 1) os << modulus_[i];
      if (i > 0) os << "t";
      if (i > 1) os << "^" << i;
    }
    os << ")";
  }
  os << ";ext=y^2+" << static_cast<int>(ext_c1_) << "y+" << static_cast<int>(ext_c0_);
  return os.str();
}

}  // namespace gkb
