#include <doctest.h>

#include <random>

#include "gkb/whittaker.hpp"

using namespace gkb;

namespace {

ScaledCyclotomic psi_of(Workbench& W, Elem x) {
  const auto& F = *W.field();
  return ScaledCyclotomic::root_of_unity(W.cyclo(), F.p(), F.trace_to_prime(x));
}

ScaledCyclotomic alpha_of(Workbench& W, int a, Elem x) {
  const int q = W.q();
  return ScaledCyclotomic::root_of_unity(W.cyclo(), q - 1,
                                         static_cast<int64_t>(a) * W.field()->dlog(x) % (q - 1));
}

Mat random_invertible(const FieldContext& F, int n, std::mt19937_64& rng) {
  for (;;) {
    Mat g(n, n);
    for (int i = 0; i < n * n; ++i) g.e[i] = static_cast<Elem>(rng() % F.q());
    if (is_invertible(F, g)) return g;
  }
}

// Upper unitriangular with free entries above the diagonal c x c blocks.
Mat random_block_unipotent(const FieldContext& F, int k, int c, std::mt19937_64& rng) {
  Mat u = identity(k * c);
  for (int i = 0; i < k * c; ++i)
    for (int j = (i / c + 1) * c; j < k * c; ++j) u.at(i, j) = static_cast<Elem>(rng() % F.q());
  return u;
}

}  // namespace

TEST_CASE("Bessel function normalization and unipotent equivariance") {
  auto W = Workbench::get(3);
  const auto& F = *W->field();
  auto chi = rep_char(*W, parse_repspec(3, "ps:0,1"));
  CHECK(bessel_J(*W, chi, identity(2)).is_one());
  for (Elem x = 0; x < 3; ++x) {
    CHECK(bessel_J(*W, chi, mat_from_rows({{1, x}, {0, 1}})) == psi_of(*W, x));
  }
  auto chi3 = generic_char(*W, parse_genericspec(3, "ind:cusp2:1+gl1:0"));
  CHECK(bessel_J(*W, chi3, identity(3)).is_one());
  Mat u = mat_from_rows({{1, 2, 1}, {0, 1, 1}, {0, 0, 1}});
  CHECK(bessel_J(*W, chi3, u) == psi_of(*W, F.add(2, 1)));
}

TEST_CASE("Bessel function at the long Weyl element of GL_2(F_3)") {
  auto W = Workbench::get(3);
  const auto& F = *W->field();
  auto chi = rep_char(*W, parse_repspec(3, "ps:0,1"));
  // q^{-1} sum over x y = -1 of alpha_0(x) alpha_1(y) psi(x + y); alpha_1 is its own inverse.
  ScaledCyclotomic expect = W->zero();
  for (Elem x = 1; x < 3; ++x) {
    Elem y = F.neg(F.inv(x));
    expect += alpha_of(*W, 1, y) * psi_of(*W, F.add(x, y));
  }
  expect = expect.scaled(mpq_class(1, 3));
  CHECK(bessel_J(*W, chi, mat_from_rows({{0, 1}, {1, 0}})) == expect);
  auto tau = parse_genericspec(3, "ps:0,1");
  CHECK(special_value_profile(*W, tau, 1).at(identity(1)) == expect);
}

TEST_CASE("induction character dimensions") {
  auto W = Workbench::get(3);
  auto big = bs_induction_char(*W, parse_genericspec(3, "cusp2:1"), 2);
  CHECK(big.at_identity() == ScaledCyclotomic(W->cyclo(), 520));
  auto perm = bs_induction_char(*W, parse_genericspec(3, "gl1:0"), 2);
  CHECK(perm.at_identity() == ScaledCyclotomic(W->cyclo(), 4));
  auto ps = bs_induction_char(*W, parse_genericspec(3, "ps:0,1"), 2);
  // [GL_4 : P_(1,1,1,1)]
  CHECK(ps.at_identity() == ScaledCyclotomic(W->cyclo(), 1 * 4 * 13 * 40));
}

TEST_CASE("Bessel-Speh function against a Kloosterman enumeration") {
  auto W = Workbench::get(3);
  const auto& F = *W->field();
  auto tau = parse_genericspec(3, "ps:0,1");
  auto bs = bessel_speh(*W, tau, 2);
  CHECK((*bs)(identity(4)).is_one());
  // q^{-4} sum over x y = -I of alpha_1(det y) psi(tr x + tr y)
  const Mat minus = scalar_mat(2, F.neg(1));
  ScaledCyclotomic kl = W->zero();
  for (uint64_t code = 0; code < 81; ++code) {
    Mat x = Mat::from_code(2, 2, 3, code);
    if (!is_invertible(F, x)) continue;
    Mat y = mat_mul(F, mat_inv(F, x), minus);
    kl += alpha_of(*W, 1, det(F, y)) * psi_of(*W, F.add(trace(F, x), trace(F, y)));
  }
  CHECK((*bs)(special_element(2, identity(2))) == kl.scaled(mpq_class(1, 81)));
}

TEST_CASE("Bessel-Speh equivariance and inversion symmetry") {
  auto W = Workbench::get(3);
  const auto& F = *W->field();
  std::mt19937_64 rng(11);
  for (const char* spec : {"ps:0,1", "cusp2:1"}) {
    auto tau = parse_genericspec(3, spec);
    const int omega = central_character(3, tau);
    auto bs = bessel_speh(*W, tau, 2);
    for (int s = 0; s < 4; ++s) {
      CAPTURE(spec);
      CAPTURE(s);
      Mat g = random_invertible(F, 4, rng);
      Mat h = random_invertible(F, 2, rng);
      Mat hh = block_diag({h, h});
      const ScaledCyclotomic v = (*bs)(g);
      CHECK((*bs)(mat_mul(F, hh, g)) == alpha_of(*W, omega, det(F, h)) * v);
      CHECK((*bs)(mat_inv(F, g)) == v.conj());
      Mat u1 = random_block_unipotent(F, 2, 2, rng), u2 = random_block_unipotent(F, 2, 2, rng);
      PsiKC psi(W, 2, 2);
      CHECK((*bs)(mat_mul(F, mat_mul(F, u1, g), u2)) == psi.value(u1) * psi.value(u2) * v);
    }
  }
}

TEST_CASE("special values for k = 1 use the closed form") {
  auto W = Workbench::get(5);
  const auto& F = *W->field();
  auto prof = special_value_profile(*W, parse_genericspec(5, "gl1:2"), 2);
  for (size_t i = 0; i < prof.size(); ++i) {
    const Mat& h = prof.group()->cls(i).rep;
    CHECK(prof[i] == alpha_of(*W, 2, det(F, h)) * psi_of(*W, trace(F, mat_inv(F, h))));
  }
}

TEST_CASE("support of the Bessel-Speh function") {
  auto W = Workbench::get(3);
  for (const char* spec : {"ps:0,1", "cusp2:1"}) {
    auto r = bs_support_check(*W, parse_genericspec(3, spec), 2);
    CHECK(r.ok);
    CHECK(r.classes_checked == 8);
  }
  auto bs = bessel_speh(*W, parse_genericspec(3, "ps:0,1"), 1);
  CHECK_FALSE((*bs)(mat_from_rows({{1, 1}, {0, 1}})).is_zero());
  CHECK((*bs)(mat_from_rows({{2, 0}, {0, 1}})).is_zero());
}
