#include "gkb/characters.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace gkb {

std::shared_ptr<Workbench> Workbench::get(int q) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<Workbench>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto it = registry.find(q);
  if (it != registry.end()) return it->second;
  auto W = std::make_shared<Workbench>();
  W->F_ = FieldContext::make(q);
  W->C_ = CycloContext::make(q);
  W->groups_.resize(kMaxN + 1);
  registry.emplace(q, W);
  return W;
}

const GroupPtr& Workbench::group(int n) {
  if (n < 1 || n > kMaxN) throw std::invalid_argument("GL_n supported for 1 <= n <= 6");
  std::lock_guard<std::mutex> lock(mu_);
  if (!groups_[n]) groups_[n] = GroupContext::build(F_, n);
  return groups_[n];
}

int64_t Workbench::alpha_exp(int a, Elem x) const {
  const int q = F_->q();
  int64_t e = static_cast<int64_t>(a) * F_->dlog(x) % (q - 1);
  return e * (C_->m() / (q - 1));
}

int64_t Workbench::theta_exp(int t, int x) const {
  const int n = F_->q2() - 1;
  int64_t e = static_cast<int64_t>(t) * F_->ext_dlog(x) % n;
  return e * (C_->m() / n);
}

int64_t Workbench::psi_exp(Elem t, Elem x) const {
  return static_cast<int64_t>(F_->trace_to_prime(F_->mul(t, x))) * (C_->m() / F_->p());
}

ClassFunction::ClassFunction(GroupPtr G, CycloPtr C)
    : G_(std::move(G)), C_(std::move(C)), v_(G_->num_classes(), ScaledCyclotomic::zero(C_)) {}

ClassFunction::ClassFunction(GroupPtr G, CycloPtr C, std::vector<ScaledCyclotomic> values)
    : G_(std::move(G)), C_(std::move(C)), v_(std::move(values)) {
  if (v_.size() != G_->num_classes()) throw std::invalid_argument("class function length");
}

void ClassFunction::set(size_t i, ScaledCyclotomic x) {
  v_.at(i) = std::move(x);
  cache_ = std::make_shared<IntCache>();
}

const int64_t* ClassFunction::int_coords(size_t i) const {
  IntCache& c = *cache_;
  std::call_once(c.once, [&] {
    c.coords.resize(v_.size());
    c.ok.resize(v_.size());
    for (size_t k = 0; k < v_.size(); ++k) c.ok[k] = v_[k].int_coords(c.coords[k]);
  });
  return c.ok[i] ? c.coords[i].data() : nullptr;
}

ClassFunction ClassFunction::operator+(const ClassFunction& o) const {
  std::vector<ScaledCyclotomic> r(v_.size());
  for (size_t i = 0; i < v_.size(); ++i) r[i] = v_[i] + o.v_.at(i);
  return ClassFunction(G_, C_, std::move(r));
}

ClassFunction ClassFunction::operator-(const ClassFunction& o) const {
  std::vector<ScaledCyclotomic> r(v_.size());
  for (size_t i = 0; i < v_.size(); ++i) r[i] = v_[i] - o.v_.at(i);
  return ClassFunction(G_, C_, std::move(r));
}

ClassFunction ClassFunction::operator*(const ClassFunction& o) const {
  std::vector<ScaledCyclotomic> r(v_.size());
  for (size_t i = 0; i < v_.size(); ++i) r[i] = v_[i] * o.v_.at(i);
  return ClassFunction(G_, C_, std::move(r));
}

ClassFunction ClassFunction::scaled(const ScaledCyclotomic& s) const {
  std::vector<ScaledCyclotomic> r(v_.size());
  for (size_t i = 0; i < v_.size(); ++i) r[i] = v_[i] * s;
  return ClassFunction(G_, C_, std::move(r));
}

ClassFunction ClassFunction::conj() const {
  std::vector<ScaledCyclotomic> r(v_.size());
  for (size_t i = 0; i < v_.size(); ++i) r[i] = v_[i].conj();
  return ClassFunction(G_, C_, std::move(r));
}

bool ClassFunction::operator==(const ClassFunction& o) const {
  return G_.get() == o.G_.get() && v_ == o.v_;
}

ScaledCyclotomic inner_product(const ClassFunction& a, const ClassFunction& b) {
  if (a.group().get() != b.group().get()) throw std::invalid_argument("class functions on different groups");
  const GroupContext& G = *a.group();
  ScaledCyclotomic sum = ScaledCyclotomic::zero(a.cyclo());
  for (size_t i = 0; i < G.num_classes(); ++i) {
    sum += (a[i] * b[i].conj()).scaled(mpq_class(G.cls(i).size));
  }
  return sum.scaled(mpq_class(1, 1) / mpq_class(G.order()));
}

ClassFunction constant_char(Workbench& W, int n, const ScaledCyclotomic& value) {
  const GroupPtr& G = W.group(n);
  return ClassFunction(G, W.cyclo(), std::vector<ScaledCyclotomic>(G->num_classes(), value));
}

ClassFunction det_char(Workbench& W, int n, int a) {
  const GroupPtr& G = W.group(n);
  ClassFunction f(G, W.cyclo());
  for (size_t i = 0; i < G->num_classes(); ++i) {
    f.set(i, ScaledCyclotomic::zeta(W.cyclo(), W.alpha_exp(a, det(*W.field(), G->cls(i).rep))));
  }
  return f;
}

ClassFunction gl1_char(Workbench& W, int a) { return det_char(W, 1, a); }

namespace {

bool theta_regular(int q, int t) {
  const int n = q * q - 1;
  int r = ((t % n) + n) % n;
  return (static_cast<int64_t>(r) * q) % n != r;
}

}  // namespace

ClassFunction cuspidal2_char(Workbench& W, int t) {
  const int q = W.q();
  if (!theta_regular(q, t)) throw std::invalid_argument("cusp2 needs a regular theta exponent");
  const FieldContext& F = *W.field();
  const GroupPtr& G = W.group(2);
  const CycloPtr& C = W.cyclo();
  ClassFunction f(G, C);
  for (size_t i = 0; i < G->num_classes(); ++i) {
    const ClassLabel& L = G->cls(i).label;
    ScaledCyclotomic v = ScaledCyclotomic::zero(C);
    if (L.parts.size() == 1 && L.parts[0].deg == 1) {
      Elem z = F.neg(static_cast<Elem>(L.parts[0].code));
      auto th = ScaledCyclotomic::zeta(C, W.theta_exp(t, F.embed(z)));
      v = L.parts[0].partition.size() == 2 ? th.scaled(q - 1) : -th;
    } else if (L.parts.size() == 1 && L.parts[0].deg == 2) {
      Elem c0 = static_cast<Elem>(L.parts[0].code % q);
      Elem c1 = static_cast<Elem>(L.parts[0].code / q);
      int x = F.quadratic_root(c0, c1);
      v = -(ScaledCyclotomic::zeta(C, W.theta_exp(t, x)) +
            ScaledCyclotomic::zeta(C, W.theta_exp(t, F.frobenius(x))));
    }
    f.set(i, v);
  }
  return f;
}

namespace {

// Adds the product of two power-basis coordinate vectors, weighted, into an accumulator.
void add_product(CycloAccumulator& acc, const int64_t* a, const int64_t* b, int phi, int64_t w) {
  int64_t* raw = acc.raw();
  for (int i = 0; i < phi; ++i) {
    if (!a[i]) continue;
    for (int j = 0; j < phi; ++j) raw[i + j] += w * a[i] * b[j];
  }
}

// Ind(f1 (x) f2) from the parabolic with blocks (n1, n2).
ClassFunction induce_pair(Workbench& W, const ClassFunction& f1, const ClassFunction& f2) {
  const int n1 = f1.group()->n();
  const int n = n1 + f2.group()->n();
  const GroupPtr& G = W.group(n);
  const FieldContext& F = *W.field();
  const CycloPtr& C = W.cyclo();
  const auto& subs = G->subspaces(n1);
  ClassFunction out(G, C);
  for (size_t ci = 0; ci < G->num_classes(); ++ci) {
    const Mat& g = G->cls(ci).rep;
    std::map<std::pair<int, int>, int64_t> counts;
    Mat A, D;
    for (const Subspace& V : subs) {
      if (!stable_blocks(F, g, V, A, D)) continue;
      ++counts[{f1.group()->class_index(A), f2.group()->class_index(D)}];
    }
    CycloAccumulator acc(C);
    ScaledCyclotomic rest = ScaledCyclotomic::zero(C);
    bool any_rest = false;
    for (const auto& [key, cnt] : counts) {
      const int64_t* a = f1.int_coords(key.first);
      const int64_t* b = f2.int_coords(key.second);
      if (a && b) {
        add_product(acc, a, b, C->phi(), cnt);
      } else {
        rest += (f1[key.first] * f2[key.second]).scaled(cnt);
        any_rest = true;
      }
    }
    ScaledCyclotomic v = acc.to_scalar();
    if (any_rest) v += rest;
    out.set(ci, v);
  }
  return out;
}

}  // namespace

ClassFunction induced_char(Workbench& W, const std::vector<ClassFunction>& levi) {
  if (levi.empty()) throw std::invalid_argument("induction needs at least one factor");
  ClassFunction acc = levi.back();
  for (size_t i = levi.size() - 1; i-- > 0;) acc = induce_pair(W, levi[i], acc);
  return acc;
}

ClassFunction speh_cuspidal2_char(Workbench& W, int t) {
  const FieldContext& F = *W.field();
  const CycloPtr& C = W.cyclo();
  const GroupPtr& G = W.group(4);
  ClassFunction theta = cuspidal2_char(W, t);
  ClassFunction rho = induced_char(W, {theta, theta});
  const auto& subs = G->subspaces(2);
  const int q = W.q();
  const int Q = q * q;
  // Trace of rho(g) composed with the self-intertwiner (swap after the standard intertwiner).
  ClassFunction trace_op(G, C);
  for (size_t ci = 0; ci < G->num_classes(); ++ci) {
    const Mat& g = G->cls(ci).rep;
    std::vector<int64_t> counts(theta.size(), 0);
    for (const Subspace& S : subs) {
      Mat x(4, 4);
      int r = 0;
      for (int j = 0; j < 4; ++j) {
        if (S.pivots[0] == j || S.pivots[1] == j) continue;
        x.at(r++, j) = 1;
      }
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 4; ++j) x.at(2 + i, j) = S.basis.at(i, j);
      }
      Mat y = mat_mul(F, mat_mul(F, x, g), mat_inv(F, x));
      Mat y11 = get_block(y, 0, 0, 2, 2), y12 = get_block(y, 0, 2, 2, 2);
      Mat y21 = get_block(y, 2, 0, 2, 2), y22 = get_block(y, 2, 2, 2, 2);
      Mat y21i;
      if (!try_inv(F, y21, y21i)) continue;
      Mat X = mat_neg(F, mat_mul(F, y11, y21i));
      Mat b = mat_add(F, y12, mat_mul(F, X, y22));
      ++counts[theta.group()->class_index(mat_mul(F, y21, b))];
    }
    ScaledCyclotomic v = ScaledCyclotomic::zero(C);
    for (size_t k = 0; k < counts.size(); ++k) {
      if (counts[k]) v += theta[k].scaled(counts[k]);
    }
    trace_op.set(ci, v);
  }
  if (!trace_op.at_identity().is_zero()) throw std::logic_error("intertwiner trace at 1 is nonzero");
  ScaledCyclotomic s = inner_product(trace_op, rho);
  ScaledCyclotomic denom_inv;
  if (!(s.scaled(-(Q + 1))).try_invert_monomial(denom_inv)) {
    throw std::logic_error("intertwiner eigenvalue is not a monomial");
  }
  ClassFunction chi = (trace_op.scaled(ScaledCyclotomic(C, 1 - Q)) - rho.scaled(s)).scaled(denom_inv);
  if (!inner_product(chi, chi).is_one()) throw std::logic_error("Speh character is not irreducible");
  ScaledCyclotomic dim_expected = rho.at_identity().scaled(mpq_class(1, Q + 1));
  if (chi.at_identity() != dim_expected) throw std::logic_error("Speh character has wrong degree");
  return chi;
}

CuspidalDatum canonical_datum(int q, CuspidalDatum d) {
  if (d.deg == 1) {
    d.x = ((d.x % (q - 1)) + (q - 1)) % (q - 1);
    return d;
  }
  if (d.deg != 2) throw std::invalid_argument("cuspidal data of degree 1 or 2 only");
  const int n = q * q - 1;
  int r = ((d.x % n) + n) % n;
  int rq = static_cast<int>(static_cast<int64_t>(r) * q % n);
  if (r == rq) throw std::invalid_argument("cusp2 exponent is not regular");
  d.x = std::min(r, rq);
  return d;
}

CuspidalDatum dual_datum(int q, const CuspidalDatum& d) {
  return canonical_datum(q, {d.deg, -d.x});
}

std::string datum_string(const CuspidalDatum& d) {
  return (d.deg == 1 ? "gl1:" : "cusp2:") + std::to_string(d.x);
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

int parse_int(const std::string& s) {
  size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad integer '" + s + "'");
  }
  if (pos != s.size()) throw std::invalid_argument("bad integer '" + s + "'");
  return v;
}

int parse_cusp_exponent(const std::string& s) {
  std::string body = s;
  if (body.rfind("t=", 0) == 0) body = body.substr(2);
  return parse_int(body);
}

CuspidalDatum parse_datum(int q, const std::string& item) {
  auto colon = item.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("bad cuspidal datum '" + item + "'");
  std::string head = item.substr(0, colon), body = item.substr(colon + 1);
  if (head == "gl1") return canonical_datum(q, {1, parse_int(body)});
  if (head == "cusp2") return canonical_datum(q, {2, parse_cusp_exponent(body)});
  throw std::invalid_argument("bad cuspidal datum '" + item + "'");
}

int mod(int a, int n) { return ((a % n) + n) % n; }

}  // namespace

std::string RepSpec::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case RepKind::PrincipalSeries:
      os << "ps:";
      for (size_t i = 0; i < exps.size(); ++i) os << (i ? "," : "") << exps[i];
      break;
    case RepKind::DetTwist:
      if (n == 1) {
        os << "gl1:" << exps[0];
      } else {
        os << "det:" << exps[0] << "@" << n;
      }
      break;
    case RepKind::SteinbergTwist:
      os << "st:" << exps[0];
      break;
    case RepKind::Cuspidal2:
      os << "cusp2:" << t;
      break;
    case RepKind::InducedCuspidals:
      os << "ind:";
      for (size_t i = 0; i < data.size(); ++i) os << (i ? "+" : "") << datum_string(data[i]);
      break;
  }
  return os.str();
}

int GenericSpec::k() const {
  int k = 0;
  for (const auto& d : support) k += d.deg;
  return k;
}

std::string GenericSpec::to_string() const {
  bool all_gl1 = std::all_of(support.begin(), support.end(), [](auto& d) { return d.deg == 1; });
  std::ostringstream os;
  if (all_gl1) {
    os << "ps:";
    for (size_t i = 0; i < support.size(); ++i) os << (i ? "," : "") << support[i].x;
  } else if (support.size() == 1) {
    os << datum_string(support[0]);
  } else {
    os << "ind:";
    for (size_t i = 0; i < support.size(); ++i) os << (i ? "+" : "") << datum_string(support[i]);
  }
  return os.str();
}

RepSpec parse_repspec(int q, const std::string& s, int default_n) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("bad representation spec '" + s + "'");
  std::string head = s.substr(0, colon), body = s.substr(colon + 1);
  RepSpec r;
  if (head == "ps") {
    r.kind = RepKind::PrincipalSeries;
    for (const auto& e : split(body, ',')) r.exps.push_back(mod(parse_int(e), q - 1));
    r.n = static_cast<int>(r.exps.size());
    if (r.n == 1) r.kind = RepKind::DetTwist;
  } else if (head == "det" || head == "gl1") {
    r.kind = RepKind::DetTwist;
    auto at = body.find('@');
    r.n = head == "gl1" ? 1 : default_n;
    if (at != std::string::npos) {
      r.n = parse_int(body.substr(at + 1));
      body = body.substr(0, at);
    }
    r.exps = {mod(parse_int(body), q - 1)};
  } else if (head == "st") {
    r.kind = RepKind::SteinbergTwist;
    r.n = 2;
    r.exps = {mod(parse_int(body), q - 1)};
  } else if (head == "cusp2") {
    r.kind = RepKind::Cuspidal2;
    r.n = 2;
    r.t = canonical_datum(q, {2, parse_cusp_exponent(body)}).x;
  } else if (head == "ind") {
    r.kind = RepKind::InducedCuspidals;
    r.n = 0;
    for (const auto& item : split(body, '+')) {
      r.data.push_back(parse_datum(q, item));
      r.n += r.data.back().deg;
    }
  } else {
    throw std::invalid_argument("unknown representation kind '" + head + "'");
  }
  if (r.n < 1 || r.n > kMaxN) throw std::invalid_argument("representation degree out of range");
  return r;
}

GenericSpec make_generic(int q, std::vector<CuspidalDatum> support) {
  if (support.empty()) throw std::invalid_argument("generic spec needs a nonempty support");
  for (auto& d : support) d = canonical_datum(q, d);
  std::sort(support.begin(), support.end());
  return GenericSpec{std::move(support)};
}

GenericSpec parse_genericspec(int q, const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("bad generic spec '" + s + "'");
  std::string head = s.substr(0, colon), body = s.substr(colon + 1);
  std::vector<CuspidalDatum> sup;
  if (head == "ps") {
    for (const auto& e : split(body, ',')) sup.push_back({1, parse_int(e)});
  } else if (head == "gl1") {
    sup.push_back({1, parse_int(body)});
  } else if (head == "st") {
    int a = parse_int(body);
    sup = {{1, a}, {1, a}};
  } else if (head == "cusp2") {
    sup.push_back({2, parse_cusp_exponent(body)});
  } else if (head == "ind") {
    for (const auto& item : split(body, '+')) sup.push_back(parse_datum(q, item));
  } else {
    throw std::invalid_argument("unknown generic spec kind '" + head + "'");
  }
  return make_generic(q, std::move(sup));
}

ClassFunction char_of_repspec(Workbench& W, const RepSpec& spec) {
  ClassFunction chi;
  switch (spec.kind) {
    case RepKind::PrincipalSeries: {
      std::vector<ClassFunction> levi;
      for (int a : spec.exps) levi.push_back(gl1_char(W, a));
      chi = induced_char(W, levi);
      break;
    }
    case RepKind::DetTwist:
      chi = det_char(W, spec.n, spec.exps.at(0));
      break;
    case RepKind::SteinbergTwist: {
      int a = spec.exps.at(0);
      chi = induced_char(W, {gl1_char(W, a), gl1_char(W, a)}) - det_char(W, 2, a);
      break;
    }
    case RepKind::Cuspidal2:
      chi = cuspidal2_char(W, spec.t);
      break;
    case RepKind::InducedCuspidals: {
      std::vector<ClassFunction> levi;
      for (const auto& d : spec.data) {
        levi.push_back(d.deg == 1 ? gl1_char(W, d.x) : cuspidal2_char(W, d.x));
      }
      chi = induced_char(W, levi);
      break;
    }
  }
  if (!inner_product(chi, chi).is_one()) {
    throw std::invalid_argument("spec " + spec.to_string() + " is not irreducible");
  }
  return chi;
}

const ClassFunction& rep_char(Workbench& W, const RepSpec& spec) {
  static std::mutex mu;
  static std::map<std::pair<int, std::string>, std::unique_ptr<ClassFunction>> cache;
  auto key = std::make_pair(W.q(), spec.to_string());
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  auto chi = std::make_unique<ClassFunction>(char_of_repspec(W, spec));
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(key, std::move(chi));
  return *it->second;
}

ClassFunction generic_char(Workbench& W, const GenericSpec& tau) {
  std::vector<ClassFunction> levi;
  const auto& sup = tau.support;
  for (size_t i = 0; i < sup.size();) {
    size_t j = i;
    while (j < sup.size() && sup[j] == sup[i]) ++j;
    const size_t mult = j - i;
    if (sup[i].deg == 1 && mult == 1) {
      levi.push_back(gl1_char(W, sup[i].x));
    } else if (sup[i].deg == 1 && mult == 2) {
      const int a = sup[i].x;
      levi.push_back(induced_char(W, {gl1_char(W, a), gl1_char(W, a)}) - det_char(W, 2, a));
    } else if (sup[i].deg == 2 && mult == 1) {
      levi.push_back(cuspidal2_char(W, sup[i].x));
    } else {
      throw std::invalid_argument("generic spec " + tau.to_string() +
                                  " repeats a cuspidal datum beyond the supported range");
    }
    i = j;
  }
  return induced_char(W, levi);
}

RepSpec dual_spec(int q, const RepSpec& spec) {
  RepSpec r = spec;
  for (int& a : r.exps) a = mod(-a, q - 1);
  if (r.kind == RepKind::Cuspidal2) r.t = dual_datum(q, {2, spec.t}).x;
  for (auto& d : r.data) d = dual_datum(q, d);
  return r;
}

GenericSpec dual_generic(int q, const GenericSpec& tau) {
  std::vector<CuspidalDatum> sup;
  for (const auto& d : tau.support) sup.push_back(dual_datum(q, d));
  return make_generic(q, std::move(sup));
}

namespace {

int datum_central(int q, const CuspidalDatum& d) { return mod(d.x, q - 1); }

}  // namespace

int central_character(int q, const RepSpec& spec) {
  int e = 0;
  for (const auto& d : cuspidal_support(q, spec)) e += datum_central(q, d);
  return mod(e, q - 1);
}

int central_character(int q, const GenericSpec& tau) {
  int e = 0;
  for (const auto& d : tau.support) e += datum_central(q, d);
  return mod(e, q - 1);
}

std::vector<CuspidalDatum> cuspidal_support(int q, const RepSpec& spec) {
  std::vector<CuspidalDatum> sup;
  switch (spec.kind) {
    case RepKind::PrincipalSeries:
      for (int a : spec.exps) sup.push_back({1, a});
      break;
    case RepKind::DetTwist:
      for (int i = 0; i < spec.n; ++i) sup.push_back({1, spec.exps[0]});
      break;
    case RepKind::SteinbergTwist:
      sup = {{1, spec.exps[0]}, {1, spec.exps[0]}};
      break;
    case RepKind::Cuspidal2:
      sup.push_back({2, spec.t});
      break;
    case RepKind::InducedCuspidals:
      sup = spec.data;
      break;
  }
  for (auto& d : sup) d = canonical_datum(q, d);
  std::sort(sup.begin(), sup.end());
  return sup;
}

bool supports_disjoint(int q, const std::vector<CuspidalDatum>& a,
                       const std::vector<CuspidalDatum>& b) {
  for (const auto& x : a) {
    CuspidalDatum cx = canonical_datum(q, x);
    for (const auto& y : b) {
      if (cx == canonical_datum(q, y)) return false;
    }
  }
  return true;
}

bool supports_disjoint(int q, const RepSpec& pi, const GenericSpec& tau_dual) {
  return supports_disjoint(q, cuspidal_support(q, pi), tau_dual.support);
}

std::vector<CuspidalDatum> cuspidal_data(int q, int deg) {
  std::vector<CuspidalDatum> out;
  if (deg == 1) {
    for (int a = 0; a < q - 1; ++a) out.push_back({1, a});
  } else if (deg == 2) {
    const int n = q * q - 1;
    for (int t = 1; t < n; ++t) {
      if (t % (q + 1) == 0) continue;
      CuspidalDatum d = canonical_datum(q, {2, t});
      if (d.x == t) out.push_back(d);
    }
  } else {
    throw std::invalid_argument("cuspidal data of degree 1 or 2 only");
  }
  return out;
}

std::vector<RepSpec> irreducible_specs(int q, int n) {
  std::vector<RepSpec> out;
  if (n == 1) {
    for (int a = 0; a < q - 1; ++a) out.push_back(parse_repspec(q, "gl1:" + std::to_string(a)));
    return out;
  }
  if (n != 2) throw std::invalid_argument("irreducible spec enumeration for n <= 2 only");
  for (int a = 0; a < q - 1; ++a) {
    out.push_back(parse_repspec(q, "det:" + std::to_string(a) + "@2"));
    out.push_back(parse_repspec(q, "st:" + std::to_string(a)));
  }
  for (int a = 0; a < q - 1; ++a)
    for (int b = a + 1; b < q - 1; ++b)
      out.push_back(parse_repspec(q, "ps:" + std::to_string(a) + "," + std::to_string(b)));
  for (const auto& d : cuspidal_data(q, 2)) out.push_back(parse_repspec(q, datum_string(d)));
  return out;
}

namespace {

void extend_supports(const std::vector<CuspidalDatum>& pool, size_t start, int remaining,
                     std::vector<CuspidalDatum>& cur, bool distinct,
                     std::vector<std::vector<CuspidalDatum>>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (size_t i = start; i < pool.size(); ++i) {
    const CuspidalDatum& d = pool[i];
    if (d.deg > remaining) continue;
    size_t mult = std::count(cur.begin(), cur.end(), d);
    if (mult >= 1 && (distinct || d.deg == 2)) continue;
    if (mult >= 2) continue;
    cur.push_back(d);
    extend_supports(pool, i, remaining - d.deg, cur, distinct, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<GenericSpec> generic_specs(int q, int k, bool distinct_support) {
  std::vector<CuspidalDatum> pool = cuspidal_data(q, 1);
  for (const auto& d : cuspidal_data(q, 2)) pool.push_back(d);
  std::vector<std::vector<CuspidalDatum>> supports;
  std::vector<CuspidalDatum> cur;
  extend_supports(pool, 0, k, cur, distinct_support, supports);
  std::vector<GenericSpec> out;
  for (auto& s : supports) out.push_back(make_generic(q, s));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace gkb
