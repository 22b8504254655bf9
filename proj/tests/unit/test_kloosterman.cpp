#include <doctest.h>

#include "gkb/kloosterman.hpp"
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

std::vector<Mat> all_invertible(const FieldContext& F, int c) {
  std::vector<Mat> out;
  uint64_t total = 1;
  for (int i = 0; i < c * c; ++i) total *= F.q();
  for (uint64_t code = 0; code < total; ++code) {
    Mat g = Mat::from_code(c, c, F.q(), code);
    if (is_invertible(F, g)) out.push_back(g);
  }
  return out;
}

// sum over x y = h of alpha_a(det x) alpha_b(det y) psi(tr x + tr y)
ScaledCyclotomic kl2_oracle(Workbench& W, int c, int a, int b, const Mat& h) {
  const auto& F = *W.field();
  ScaledCyclotomic sum = W.zero();
  for (const Mat& x : all_invertible(F, c)) {
    Mat y = mat_mul(F, mat_inv(F, x), h);
    sum += alpha_of(W, a, det(F, x)) * alpha_of(W, b, det(F, y)) *
           psi_of(W, F.add(trace(F, x), trace(F, y)));
  }
  return sum;
}

}  // namespace

TEST_CASE("single factor Kloosterman sums") {
  auto W = Workbench::get(5);
  for (int a = 0; a < 4; ++a) {
    for (Elem h = 1; h < 5; ++h) {
      KloostermanQuery query{1, {a}, 1, mat_from_rows({{h}})};
      CHECK(kl_sum(*W, query) == alpha_of(*W, a, h) * psi_of(*W, h));
    }
  }
}

TEST_CASE("two factor sum over F_3") {
  auto W = Workbench::get(3);
  KloostermanQuery query{1, {0, 0}, 1, identity(1)};
  CHECK(kl_sum(*W, query) == ScaledCyclotomic(W->cyclo(), -1));
}

TEST_CASE("matrix Kloosterman sums against enumeration") {
  for (int q : {2, 3}) {
    auto W = Workbench::get(q);
    const auto& F = *W->field();
    const int bmax = q == 2 ? 1 : 2;
    for (int b = 0; b < bmax; ++b) {
      for (const auto& cls : W->group(2)->classes()) {
        KloostermanQuery query{2, {0, b}, 1, cls.rep};
        CAPTURE(q);
        CAPTURE(mat_string(F, cls.rep));
        CHECK(kl_sum(*W, query) == kl2_oracle(*W, 2, 0, b, cls.rep));
      }
    }
  }
}

TEST_CASE("three factor sum at c = 1") {
  auto W = Workbench::get(5);
  const auto& F = *W->field();
  for (Elem h = 1; h < 5; ++h) {
    ScaledCyclotomic expect = W->zero();
    for (Elem x = 1; x < 5; ++x) {
      for (Elem y = 1; y < 5; ++y) {
        Elem z = F.mul(h, F.inv(F.mul(x, y)));
        expect += alpha_of(*W, 1, x) * alpha_of(*W, 2, y) * alpha_of(*W, 3, z) *
                  psi_of(*W, F.add(F.add(x, y), z));
      }
    }
    KloostermanQuery query{1, {1, 2, 3}, 1, mat_from_rows({{h}})};
    CHECK(kl_sum(*W, query) == expect);
  }
}

TEST_CASE("kl_profile agrees with kl_sum at class representatives") {
  auto W = Workbench::get(3);
  auto prof = kl_profile(*W, 2, {0, 1});
  for (size_t i = 0; i < prof.size(); ++i) {
    KloostermanQuery query{2, {0, 1}, 1, prof.group()->cls(i).rep};
    CHECK(prof[i] == kl_sum(*W, query));
  }
}

TEST_CASE("special values through Kloosterman sums") {
  auto W3 = Workbench::get(3);
  CHECK(check_bs_kloosterman_identity(*W3, {0, 1}, 1).ok());
  CHECK(check_bs_kloosterman_identity(*W3, {0, 1}, 2).ok());
  auto W5 = Workbench::get(5);
  auto r = check_bs_kloosterman_identity(*W5, {0, 1, 2}, 1);
  CHECK(r.ok());
  CHECK(r.count(Status::Pass) > 0);
}

TEST_CASE("multiplicativity and class invariance") {
  auto W = Workbench::get(3);
  auto two = check_kl_multiplicativity(*W, 1, 1, {0, 1});
  CHECK(two.ok());
  CHECK(two.count(Status::Pass) > 0);
  auto three = check_kl_multiplicativity(*W, 1, 1, {0, 1, 0});
  CHECK(three.ok());
  CHECK(check_kl_class_invariance(*W, 2, {0, 1}, 7, 10).ok());
}

TEST_CASE("shared eigenvalues gate the product formula") {
  auto W = Workbench::get(3);
  auto r = check_kl_multiplicativity(*W, 1, 1, {0, 0});
  CHECK(r.ok());
  CHECK(r.count(Status::Skip) > 0);
}
