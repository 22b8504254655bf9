// Exact scalars in Q(zeta_m)[s]/(s^2 - q).
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace gkb {

class CycloContext;
using CycloPtr = std::shared_ptr<const CycloContext>;

// Root-of-unity order m = lcm(p, q^2 - 1) together with the rewriting table
// for zeta^j in the power basis 1, zeta, ..., zeta^(phi-1).
class CycloContext {
 public:
  static constexpr int kMaxOrder = 4096;

  static CycloPtr make(int q);

  int q() const { return q_; }
  int p() const { return p_; }
  int m() const { return m_; }
  int phi() const { return phi_; }

  // Coordinates of zeta^j (j taken mod m), length phi.
  const int64_t* power(int64_t j) const {
    int64_t r = j % m_;
    if (r < 0) r += m_;
    return table_.data() + r * phi_;
  }
  const std::vector<int64_t>& cyclotomic_poly() const { return cyclo_; }

 private:
  int q_ = 0, p_ = 0, m_ = 0, phi_ = 0;
  std::vector<int64_t> cyclo_;  // Phi_m, low to high, monic
  std::vector<int64_t> table_;  // m rows of phi coordinates
};

// a(zeta) + b(zeta) * sqrt(q), coefficients in the power basis mod Phi_m.
class ScaledCyclotomic {
 public:
  ScaledCyclotomic() = default;
  explicit ScaledCyclotomic(CycloPtr ctx);
  ScaledCyclotomic(CycloPtr ctx, const mpq_class& r);

  static ScaledCyclotomic zero(CycloPtr ctx) { return ScaledCyclotomic(std::move(ctx)); }
  static ScaledCyclotomic one(CycloPtr ctx) { return ScaledCyclotomic(std::move(ctx), 1); }
  static ScaledCyclotomic sqrt_q(CycloPtr ctx);
  // zeta_order^j; order must divide m.
  static ScaledCyclotomic root_of_unity(CycloPtr ctx, int order, int64_t j);
  // zeta_m^j
  static ScaledCyclotomic zeta(CycloPtr ctx, int64_t j);
  // q^(e/2) for any integer e.
  static ScaledCyclotomic q_half_power(CycloPtr ctx, int e);
  // Integer coordinate vector (length phi) times sqrt(q)^0.
  static ScaledCyclotomic from_int_coords(CycloPtr ctx, const int64_t* coords);

  const CycloPtr& context() const { return ctx_; }
  const std::vector<mpq_class>& a() const { return a_; }
  const std::vector<mpq_class>& b() const { return b_; }

  bool is_zero() const;
  bool is_one() const;
  bool has_sqrt_part() const;
  // Rational value when the element lies in Q.
  bool as_rational(mpq_class& out) const;
  // Integer coordinates when b = 0 and every a-coefficient is an integer that fits.
  bool int_coords(std::vector<int64_t>& out) const;

  ScaledCyclotomic operator+(const ScaledCyclotomic& o) const;
  ScaledCyclotomic operator-(const ScaledCyclotomic& o) const;
  ScaledCyclotomic operator*(const ScaledCyclotomic& o) const;
  ScaledCyclotomic operator-() const;
  ScaledCyclotomic& operator+=(const ScaledCyclotomic& o);
  ScaledCyclotomic& operator-=(const ScaledCyclotomic& o);
  ScaledCyclotomic& operator*=(const ScaledCyclotomic& o) { return *this = *this * o; }
  bool operator==(const ScaledCyclotomic& o) const;
  bool operator!=(const ScaledCyclotomic& o) const { return !(*this == o); }

  ScaledCyclotomic scaled(const mpq_class& r) const;
  ScaledCyclotomic times_zeta(int64_t j) const;
  ScaledCyclotomic conj() const;
  ScaledCyclotomic div_by_sqrt_q() const;
  // this += r * zeta_m^j, without building a temporary element.
  void add_zeta(int64_t j, const mpq_class& r);

  // Inverse for r * zeta^j or r * zeta^j * sqrt(q) with r rational; the
  // identities here never need a general field inverse.
  bool try_invert_monomial(ScaledCyclotomic& out) const;

  std::pair<double, double> to_complex_approx() const;
  std::string to_string() const;
  nlohmann::json to_json() const;
  static ScaledCyclotomic from_json(CycloPtr ctx, const nlohmann::json& j);

 private:
  friend class CycloAccumulator;
  void check_same(const ScaledCyclotomic& o) const;

  CycloPtr ctx_;
  std::vector<mpq_class> a_, b_;
};

// Accumulator in Z[x]/(x^m - 1) for sums of integer-coordinate values times
// roots of unity; reduced to a ScaledCyclotomic once at the end.
class CycloAccumulator {
 public:
  explicit CycloAccumulator(CycloPtr ctx);

  void clear();
  void add_zeta(int64_t j, int64_t w = 1) {
    int64_t r = j % m_;
    if (r < 0) r += m_;
    acc_[r] += w;
  }
  // acc += zeta^shift * (coords in the power basis); coords has length phi.
  void add_rotated(const int64_t* coords, int64_t shift);
  void sub_rotated(const int64_t* coords, int64_t shift);
  void add_scaled_rotated(const int64_t* coords, int64_t shift, int64_t w);
  void merge(const CycloAccumulator& o);
  int64_t* raw() { return acc_.data(); }
  const std::vector<int64_t>& data() const { return acc_; }

  ScaledCyclotomic to_scalar() const;

 private:
  CycloPtr ctx_;
  int m_;
  std::vector<int64_t> acc_;
};

}  // namespace gkb
