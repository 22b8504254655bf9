#include <doctest.h>

#include <random>

#include "gkb/cyclo.hpp"
#include "gkb/field.hpp"
#include "gkb/group.hpp"
#include "gkb/kernels.hpp"
#include "gkb/matrix.hpp"

using namespace gkb;

TEST_CASE("cyclotomic context sizes") {
  CHECK(CycloContext::make(3)->m() == 24);
  CHECK(CycloContext::make(3)->phi() == 8);
  CHECK(CycloContext::make(2)->m() == 6);
  CHECK(CycloContext::make(2)->phi() == 2);
  CHECK(CycloContext::make(5)->m() == 120);
  CHECK(CycloContext::make(5)->phi() == 32);
}

TEST_CASE("roots of unity") {
  auto c24 = CycloContext::make(3);
  auto c6 = CycloContext::make(2);
  CHECK(ScaledCyclotomic::root_of_unity(c24, 1, 0).is_one());
  auto s = ScaledCyclotomic::root_of_unity(c6, 3, 1) + ScaledCyclotomic::root_of_unity(c6, 3, 2);
  CHECK(s == ScaledCyclotomic(c6, -1));
  CHECK(ScaledCyclotomic::root_of_unity(c24, 8, 4) == ScaledCyclotomic(c24, -1));
  CHECK_THROWS(ScaledCyclotomic::root_of_unity(c24, 5, 1));
}

TEST_CASE("sqrt q relations") {
  auto ctx = CycloContext::make(3);
  auto s = ScaledCyclotomic::sqrt_q(ctx);
  auto one = ScaledCyclotomic::one(ctx);
  CHECK(s * s == ScaledCyclotomic(ctx, 3));
  CHECK(s.div_by_sqrt_q().is_one());
  CHECK((one + s) * (one - s) == ScaledCyclotomic(ctx, -2));
  CHECK(s.conj() == s);
  CHECK(ScaledCyclotomic::q_half_power(ctx, -3) * ScaledCyclotomic::q_half_power(ctx, 3) == one);
}

TEST_CASE("conjugation") {
  auto ctx = CycloContext::make(3);
  auto z3 = ScaledCyclotomic::root_of_unity(ctx, 3, 1);
  CHECK(z3.conj() == ScaledCyclotomic::root_of_unity(ctx, 3, 2));
  auto x = ScaledCyclotomic::root_of_unity(ctx, 8, 1) + ScaledCyclotomic::root_of_unity(ctx, 8, -1);
  CHECK(x.conj() * x == ScaledCyclotomic(ctx, 2));
  for (int j = 0; j < 24; ++j) {
    auto u = ScaledCyclotomic::zeta(ctx, j);
    CHECK((u * u.conj()).is_one());
  }
}

TEST_CASE("complex approximation") {
  auto ctx = CycloContext::make(3);
  auto one = ScaledCyclotomic::one(ctx).to_complex_approx();
  CHECK(one.first == doctest::Approx(1.0));
  auto i = ScaledCyclotomic::root_of_unity(ctx, 4, 1).to_complex_approx();
  CHECK(i.first == doctest::Approx(0.0));
  CHECK(i.second == doctest::Approx(1.0));
  CHECK(ScaledCyclotomic::sqrt_q(ctx).to_complex_approx().first == doctest::Approx(1.7320508));
}

TEST_CASE("ring axioms on random elements") {
  for (int q : {2, 3, 4, 5}) {
    auto ctx = CycloContext::make(q);
    std::mt19937 rng(q);
    auto rnd = [&]() {
      ScaledCyclotomic x(ctx);
      for (int t = 0; t < 4; ++t) {
        mpq_class r(int(rng() % 7) - 3, 1 + rng() % 3);
        r.canonicalize();
        x.add_zeta(rng() % ctx->m(), r);
      }
      if (rng() % 2) x += ScaledCyclotomic::sqrt_q(ctx) * ScaledCyclotomic::zeta(ctx, rng() % ctx->m());
      return x;
    };
    for (int it = 0; it < 20; ++it) {
      auto a = rnd(), b = rnd(), c = rnd();
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a * b).conj() == a.conj() * b.conj());
      CHECK(a.conj().conj() == a);
      CHECK(ScaledCyclotomic::from_json(ctx, a.to_json()) == a);
    }
  }
}

TEST_CASE("accumulator agrees with scalar sums") {
  auto ctx = CycloContext::make(5);
  CycloAccumulator acc(ctx);
  ScaledCyclotomic ref(ctx);
  std::mt19937 rng(7);
  for (int it = 0; it < 200; ++it) {
    int j = rng() % ctx->m();
    acc.add_zeta(j, 2);
    ref.add_zeta(j, 2);
    int s = rng() % ctx->m();
    acc.add_rotated(ctx->power(j), s);
    ref += ScaledCyclotomic::zeta(ctx, j + s);
  }
  CHECK(acc.to_scalar() == ref);
}

TEST_CASE("kernel variants agree") {
  const auto& sc = kernels::scalar_kernels();
  const kernels::KernelTable* vx = kernels::avx2_kernels();
  if (!vx) return;
  std::mt19937 rng(11);
  for (int m : {6, 24, 120, 240}) {
    for (int len : {1, 7, 8, 31, m}) {
      if (len > m) continue;
      std::vector<int64_t> src(len);
      for (auto& v : src) v = int64_t(rng() % 1000) - 500;
      for (int shift = 0; shift < m; shift += 5) {
        std::vector<int64_t> a(m, 1), b(m, 1);
        sc.rotate_add(a.data(), m, src.data(), len, shift, -1);
        vx->rotate_add(b.data(), m, src.data(), len, shift, -1);
        CHECK(a == b);
      }
    }
    for (size_t n : {size_t(0), size_t(3), size_t(8), size_t(1000)}) {
      std::vector<int32_t> av(n), bv(64), idx(n);
      for (auto& v : av) v = rng() % m;
      for (auto& v : bv) v = rng() % m;
      for (auto& v : idx) v = rng() % 64;
      std::vector<int64_t> h1(m), h2(m);
      sc.exponent_histogram(h1.data(), m, 3 % m, av.data(), bv.data(), idx.data(), n);
      vx->exponent_histogram(h2.data(), m, 3 % m, av.data(), bv.data(), idx.data(), n);
      CHECK(h1 == h2);
    }
  }
}

TEST_CASE("finite field examples") {
  auto F9 = FieldContext::make(9);
  // t is the element with digits (0,1)
  CHECK(F9->trace_to_prime(3) == 0);
  auto F3 = FieldContext::make(3);
  CHECK(F3->inv(2) == 2);
  auto F4 = FieldContext::make(4);
  CHECK(F4->trace_to_prime(F4->generator()) == 1);
  CHECK(F3->dlog(1) == 0);
  CHECK(F3->dlog(2) == 1);
  auto F5 = FieldContext::make(5);
  CHECK(F5->generator() == 2);
  CHECK(F5->dlog(4) == 2);
  CHECK_THROWS(F3->inv(0));
  CHECK_THROWS(FieldContext::make(6));
}

TEST_CASE("field laws") {
  for (int q : {2, 3, 4, 5, 7, 8, 9, 16}) {
    auto F = FieldContext::make(q);
    for (int x = 1; x < q; ++x) {
      CHECK(F->mul(x, F->inv(x)) == 1);
      for (int y = 1; y < q; ++y) {
        CHECK((F->dlog(x) + F->dlog(y)) % (q - 1) == F->dlog(F->mul(x, y)));
      }
    }
    CHECK(F->ext_generator() != 0);
    for (int x = 0; x < q * q; ++x) {
      CHECK(F->frobenius(F->frobenius(x)) == x);
      CHECK((F->frobenius(x) == x) == (x < q));
    }
    // the norm of the extension generator is the base generator
    CHECK(F->ext_pow(F->ext_generator(), q + 1) == F->generator());
  }
}

TEST_CASE("irreducible counts match the necklace formula") {
  auto F2 = FieldContext::make(2);
  CHECK(F2->irreducible_monics(2).size() == 1);
  CHECK(F2->irreducible_monics(3).size() == 2);
  auto F3 = FieldContext::make(3);
  REQUIRE(F3->irreducible_monics(1).size() == 3);
  CHECK(F3->poly_string(F3->irreducible_monics(1)[0]) == "x");
  for (int q : {2, 3, 4, 5}) {
    auto F = FieldContext::make(q);
    for (int n = 1; n <= 6; ++n) {
      long total = 0, qn = 1;
      for (int i = 0; i < n; ++i) qn *= q;
      for (int d = 1; d <= n; ++d) {
        if (n % d == 0) total += d * static_cast<long>(F->irreducible_monics(d).size());
      }
      CHECK(total == qn);
    }
  }
}

TEST_CASE("matrix examples") {
  auto F3 = FieldContext::make(3);
  CHECK(mat_inv(*F3, identity(3)) == identity(3));
  CHECK(det(*F3, mat_from_rows({{0, 1}, {1, 0}})) == 2);
  CHECK(trace(*F3, mat_from_rows({{1, 0}, {0, 2}})) == 0);
  CHECK_THROWS_AS(mat_inv(*F3, mat_from_rows({{1, 1}, {1, 1}})), std::domain_error);
}

TEST_CASE("class labels") {
  auto F3 = FieldContext::make(3);
  auto L = class_label(*F3, identity(3));
  REQUIRE(L.parts.size() == 1);
  CHECK(L.parts[0].partition == std::vector<uint8_t>{1, 1, 1});
  auto J = mat_from_rows({{1, 1, 0}, {0, 1, 1}, {0, 0, 1}});
  CHECK(class_label(*F3, J).parts[0].partition == std::vector<uint8_t>{3});
  const auto& cubics = F3->irreducible_monics(3);
  auto C = companion(*F3, cubics[0]);
  auto LC = class_label(*F3, C);
  REQUIRE(LC.parts.size() == 1);
  CHECK(LC.parts[0].deg == 3);
  CHECK(LC.parts[0].partition == std::vector<uint8_t>{1});
  CHECK_THROWS_AS(class_label(*F3, mat_from_rows({{1, 1}, {1, 1}})), std::domain_error);
}

TEST_CASE("class enumeration examples") {
  auto G13 = GroupContext::build(FieldContext::make(3), 1);
  CHECK(G13->num_classes() == 2);
  auto G22 = GroupContext::build(FieldContext::make(2), 2);
  REQUIRE(G22->num_classes() == 3);
  std::vector<long> sizes;
  for (auto& c : G22->classes()) sizes.push_back(c.size.get_si());
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<long>{1, 2, 3});
  auto G32 = GroupContext::build(FieldContext::make(3), 2);
  CHECK(G32->num_classes() == 8);
  CHECK(G32->order() == 48);
}

TEST_CASE("labels are conjugation invariant and round trip") {
  for (int q : {2, 3, 4}) {
    auto F = FieldContext::make(q);
    for (int n = 1; n <= 4; ++n) {
      auto G = GroupContext::build(F, n);
      for (size_t i = 0; i < G->num_classes(); ++i) {
        CHECK(class_label(*F, G->cls(i).rep) == G->cls(i).label);
      }
      std::mt19937 rng(100 * q + n);
      for (int it = 0; it < 100; ++it) {
        Mat g(n, n), x(n, n);
        do {
          for (int k = 0; k < n * n; ++k) g.e[k] = rng() % q;
        } while (!is_invertible(*F, g));
        do {
          for (int k = 0; k < n * n; ++k) x.e[k] = rng() % q;
        } while (!is_invertible(*F, x));
        Mat y = mat_mul(*F, mat_mul(*F, x, g), mat_inv(*F, x));
        CHECK(class_label(*F, y) == class_label(*F, g));
      }
    }
  }
}

TEST_CASE("subspaces, flags and unipotent radicals") {
  auto F3 = FieldContext::make(3);
  CHECK(enumerate_subspaces(*F3, 4, 2).size() == 130);
  auto F2 = FieldContext::make(2);
  CHECK(enumerate_subspaces(*F2, 2, 1).size() == 3);
  uint64_t chains = 0;
  for_each_flag_chain(*F3, 4, {2, 2}, [&](const std::vector<Mat>&) { ++chains; });
  CHECK(chains == 130);
  chains = 0;
  for_each_flag_chain(*F2, 4, {1, 2, 1}, [&](const std::vector<Mat>&) { ++chains; });
  CHECK(chains == count_flag_chains(*F2, 4, {1, 2, 1}));
  CHECK(chains == 15 * 7);
  CHECK(enumerate_unipotent_radical(*F3, {1, 1}).size() == 3);
  CHECK(enumerate_unipotent_radical(*F3, {2, 2}).size() == 81);
  CHECK(enumerate_unipotent_radical(*F2, {1, 1, 1}).size() == 8);
}
