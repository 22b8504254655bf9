// Class functions, building-block characters, parabolic induction and representation specs.
#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "gkb/cyclo.hpp"
#include "gkb/group.hpp"

namespace gkb {

// Shared per-q state: field, scalar ring and lazily built groups GL_1 .. GL_6.
class Workbench {
 public:
  static std::shared_ptr<Workbench> get(int q);

  int q() const { return F_->q(); }
  const FieldPtr& field() const { return F_; }
  const CycloPtr& cyclo() const { return C_; }
  const GroupPtr& group(int n);

  ScaledCyclotomic zero() const { return ScaledCyclotomic::zero(C_); }
  ScaledCyclotomic one() const { return ScaledCyclotomic::one(C_); }
  // alpha_a(x) for x in F_q^x as a power of zeta_m.
  int64_t alpha_exp(int a, Elem x) const;
  // theta_t(x) for x in F_{q^2}^x (encoded element) as a power of zeta_m.
  int64_t theta_exp(int t, int x) const;
  // psi_t(x) = zeta_p^{Tr(t x)} as a power of zeta_m.
  int64_t psi_exp(Elem t, Elem x) const;

 private:
  FieldPtr F_;
  CycloPtr C_;
  std::mutex mu_;
  std::vector<GroupPtr> groups_;
};
using WorkbenchPtr = std::shared_ptr<Workbench>;

class ClassFunction {
 public:
  ClassFunction() = default;
  ClassFunction(GroupPtr G, CycloPtr C);
  ClassFunction(GroupPtr G, CycloPtr C, std::vector<ScaledCyclotomic> values);

  const GroupPtr& group() const { return G_; }
  const CycloPtr& cyclo() const { return C_; }
  size_t size() const { return v_.size(); }
  const ScaledCyclotomic& operator[](size_t i) const { return v_[i]; }
  const std::vector<ScaledCyclotomic>& values() const { return v_; }
  void set(size_t i, ScaledCyclotomic x);
  const ScaledCyclotomic& at(const Mat& g) const { return v_[G_->class_index(g)]; }
  const ScaledCyclotomic& at_identity() const { return v_[G_->identity_index()]; }

  // Integer power-basis coordinates of the value at class i, or null when not integral.
  const int64_t* int_coords(size_t i) const;

  ClassFunction operator+(const ClassFunction& o) const;
  ClassFunction operator-(const ClassFunction& o) const;
  ClassFunction operator*(const ClassFunction& o) const;
  ClassFunction scaled(const ScaledCyclotomic& s) const;
  ClassFunction conj() const;
  bool operator==(const ClassFunction& o) const;
  bool operator!=(const ClassFunction& o) const { return !(*this == o); }

 private:
  struct IntCache {
    std::once_flag once;
    std::vector<std::vector<int64_t>> coords;
    std::vector<char> ok;
  };

  GroupPtr G_;
  CycloPtr C_;
  std::vector<ScaledCyclotomic> v_;
  std::shared_ptr<IntCache> cache_ = std::make_shared<IntCache>();
};

ScaledCyclotomic inner_product(const ClassFunction& a, const ClassFunction& b);

ClassFunction constant_char(Workbench& W, int n, const ScaledCyclotomic& value);
// g -> alpha_a(det g) on GL_n.
ClassFunction det_char(Workbench& W, int n, int a);
ClassFunction gl1_char(Workbench& W, int a);
// Character of the GL_2 cuspidal representation attached to a regular theta_t.
ClassFunction cuspidal2_char(Workbench& W, int t);
// Parabolic induction from the standard parabolic with diagonal blocks of the given factors,
// evaluated through g-stable subspaces and induction in stages.
ClassFunction induced_char(Workbench& W, const std::vector<ClassFunction>& levi);
// The irreducible constituent of theta_t o theta_t on GL_4 of smaller degree (Speh(theta_t, 2)).
ClassFunction speh_cuspidal2_char(Workbench& W, int t);

struct CuspidalDatum {
  int deg = 1;  // 1 or 2
  int x = 0;    // GL_1 exponent mod q-1, or GL_2 theta exponent mod q^2-1

  bool operator==(const CuspidalDatum& o) const { return deg == o.deg && x == o.x; }
  bool operator<(const CuspidalDatum& o) const {
    return deg != o.deg ? deg < o.deg : x < o.x;
  }
};

// Reduces exponents and picks min(t, tq) for GL_2 data; throws for non-regular theta.
CuspidalDatum canonical_datum(int q, CuspidalDatum d);
CuspidalDatum dual_datum(int q, const CuspidalDatum& d);
std::string datum_string(const CuspidalDatum& d);

enum class RepKind { PrincipalSeries, DetTwist, SteinbergTwist, Cuspidal2, InducedCuspidals };

struct RepSpec {
  RepKind kind = RepKind::DetTwist;
  int n = 1;
  std::vector<int> exps;            // principal series exponents, or {a} for det / st
  int t = 0;                        // cusp2 exponent
  std::vector<CuspidalDatum> data;  // induced cuspidals

  std::string to_string() const;
};

struct GenericSpec {
  std::vector<CuspidalDatum> support;  // canonical and sorted
  int k() const;
  std::string to_string() const;
  bool operator==(const GenericSpec& o) const { return support == o.support; }
  bool operator<(const GenericSpec& o) const { return support < o.support; }
};

// Syntax: ps:0,1  det:a  det:a@n  st:a  cusp2:t  cusp2:t=1  gl1:a  ind:cusp2:1+gl1:0
RepSpec parse_repspec(int q, const std::string& s, int default_n = 1);
GenericSpec parse_genericspec(int q, const std::string& s);
GenericSpec make_generic(int q, std::vector<CuspidalDatum> support);

ClassFunction char_of_repspec(Workbench& W, const RepSpec& spec);
// Cached per (q, spec string).
const ClassFunction& rep_char(Workbench& W, const RepSpec& spec);
// Character of the generic representation with the given support (GL_1 data may repeat at most
// twice, realized by Steinberg twists; GL_2 data must be distinct).
ClassFunction generic_char(Workbench& W, const GenericSpec& tau);

RepSpec dual_spec(int q, const RepSpec& spec);
GenericSpec dual_generic(int q, const GenericSpec& tau);
// Exponent a with omega(z) = alpha_a(z) on scalars.
int central_character(int q, const RepSpec& spec);
int central_character(int q, const GenericSpec& tau);
std::vector<CuspidalDatum> cuspidal_support(int q, const RepSpec& spec);
bool supports_disjoint(int q, const std::vector<CuspidalDatum>& a,
                       const std::vector<CuspidalDatum>& b);
bool supports_disjoint(int q, const RepSpec& pi, const GenericSpec& tau_dual);

// Canonical cuspidal data of degree 1 and 2.
std::vector<CuspidalDatum> cuspidal_data(int q, int deg);
// Every irreducible spec of GL_n for n <= 2 (gl1, det, st, ps, cusp2).
std::vector<RepSpec> irreducible_specs(int q, int n);
// Generic specs of GL_k built from the supported data; with distinct_support, no datum repeats.
std::vector<GenericSpec> generic_specs(int q, int k, bool distinct_support);

}  // namespace gkb
