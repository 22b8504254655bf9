// F_q and F_{q^2} with table arithmetic, discrete logs and traces.
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace gkb {

using Elem = uint8_t;  // F_q element, base-p digits of a polynomial in the generator of the modulus

// Monic or general polynomial over F_q, coefficients low to high.
struct PolyFq {
  std::vector<Elem> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool monic() const { return !c.empty() && c.back() == 1; }
  bool operator==(const PolyFq& o) const { return c == o.c; }
  bool operator<(const PolyFq& o) const;
};

class FieldContext;
using FieldPtr = std::shared_ptr<const FieldContext>;

class FieldContext {
 public:
  static constexpr int kMaxQ = 16;
  static constexpr int kMaxDegree = 6;

  static FieldPtr make(int q);

  int p() const { return p_; }
  int e() const { return e_; }
  int q() const { return q_; }
  // Modulus of F_q over F_p (digits low to high); {0, 1} when e = 1.
  const std::vector<int>& modulus() const { return modulus_; }
  std::string modulus_string() const;

  Elem add(Elem a, Elem b) const { return add_[a * q_ + b]; }
  Elem sub(Elem a, Elem b) const { return add_[a * q_ + neg_[b]]; }
  Elem mul(Elem a, Elem b) const { return mul_[a * q_ + b]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem inv(Elem a) const;
  Elem pow(Elem a, int64_t k) const;
  // Tr_{F_q/F_p}(x) as an integer in [0, p).
  int trace_to_prime(Elem x) const { return trace_[x]; }
  Elem generator() const { return gen_; }
  int dlog(Elem x) const;
  Elem exp(int64_t k) const;
  const Elem* add_table() const { return add_.data(); }
  const Elem* mul_table() const { return mul_.data(); }

  // Quadratic extension. Elements are encoded c0 + q * c1 for c0 + c1 * y.
  int q2() const { return q_ * q_; }
  int ext_add(int a, int b) const;
  int ext_mul(int a, int b) const { return ext_mul_[a * q2() + b]; }
  int ext_pow(int a, int64_t k) const;
  int ext_generator() const { return ext_gen_; }
  int ext_dlog(int x) const;
  int frobenius(int x) const { return ext_frob_[x]; }
  int embed(Elem x) const { return x; }
  // Roots in F_{q^2} of a monic irreducible quadratic (f = x^2 + c1 x + c0).
  int quadratic_root(Elem c0, Elem c1) const;

  // Monic irreducibles of degree d, sorted by integer code sum c_i q^i.
  const std::vector<PolyFq>& irreducible_monics(int d) const;
  int max_irreducible_degree() const { return static_cast<int>(irreducibles_.size()) - 1; }

  // Polynomial helpers over this field.
  PolyFq poly_mul(const PolyFq& a, const PolyFq& b) const;
  // Returns true and sets quotient when b divides a.
  bool poly_divides(const PolyFq& a, const PolyFq& b, PolyFq& quotient) const;
  PolyFq poly_gcd(PolyFq a, PolyFq b) const;
  std::string poly_string(const PolyFq& f) const;
  std::string elem_string(Elem x) const;
  int64_t poly_code(const PolyFq& f) const;

 private:
  void build_extension();
  void build_irreducibles();

  int p_ = 0, e_ = 0, q_ = 0;
  std::vector<int> modulus_;
  std::vector<Elem> add_, mul_, neg_, inv_;
  std::vector<int> trace_;
  Elem gen_ = 0;
  std::vector<int> dlog_;
  std::vector<Elem> exp_;
  std::vector<int> ext_mul_, ext_frob_, ext_dlog_, ext_exp_;
  int ext_gen_ = 0;
  Elem ext_c0_ = 0, ext_c1_ = 0;  // y^2 + ext_c1 y + ext_c0 = 0
  std::vector<std::vector<PolyFq>> irreducibles_;
};

}  // namespace gkb
