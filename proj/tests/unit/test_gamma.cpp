#include <doctest.h>

#include "gkb/gamma.hpp"

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

RepSpec rep(int q, const char* s) { return parse_repspec(q, s); }
GenericSpec gen(int q, const char* s) { return parse_genericspec(q, s); }

}  // namespace

TEST_CASE("Godement-Jacquet gamma of the trivial character of F_3^x") {
  auto W = Workbench::get(3);
  auto g = gamma_gj(*W, rep(3, "gl1:0"));
  CHECK(g.value == -ScaledCyclotomic::q_half_power(W->cyclo(), -1));
}

TEST_CASE("GL_1 gamma factors are normalized Gauss sums") {
  for (int q : {4, 5, 7}) {
    auto W = Workbench::get(q);
    const auto& F = *W->field();
    for (int a = 0; a < q - 1; ++a) {
      ScaledCyclotomic gauss = W->zero();
      for (int x = 1; x < q; ++x) gauss += alpha_of(*W, a, x) * psi_of(*W, F.inv(x));
      auto pi = rep(q, ("gl1:" + std::to_string(a)).c_str());
      CAPTURE(q);
      CAPTURE(a);
      CHECK(gamma_gj(*W, pi).value == gauss.div_by_sqrt_q());
      for (int b = 0; b < q - 1; ++b) {
        auto sum = rep(q, ("gl1:" + std::to_string((a + b) % (q - 1))).c_str());
        CHECK(gamma_gj_twisted(*W, pi, b).value == gamma_gj(*W, sum).value);
      }
    }
  }
}

TEST_CASE("twisted gamma of a cuspidal representation") {
  auto W = Workbench::get(3);
  auto pi = rep(3, "cusp2:1");
  CHECK(gamma_gj_twisted(*W, pi, 0).value == gamma_gj(*W, pi).value);
  auto twisted = rep_char(*W, pi) * det_char(*W, 2, 1);
  CHECK(gamma_gj_twisted(*W, pi, 1).value == gj_gamma_of_char(*W, twisted));
}

TEST_CASE("Godement-Jacquet multiplicativity") {
  auto W = Workbench::get(3);
  auto lhs = gamma_gj(*W, rep(3, "ps:0,1")).value;
  CHECK(lhs == gamma_gj(*W, rep(3, "gl1:0")).value * gamma_gj(*W, rep(3, "gl1:1")).value);
  auto r = check_gj_multiplicativity(*W);
  CHECK(r.ok());
  CHECK(r.count(Status::Pass) > 0);
}

TEST_CASE("Ginzburg-Kaplan gamma for k = 1") {
  auto W = Workbench::get(3);
  for (const char* pi : {"gl1:0", "ps:0,1", "cusp2:1", "st:1"}) {
    for (int a = 0; a < 2; ++a) {
      auto tau = gen(3, ("gl1:" + std::to_string(a)).c_str());
      CAPTURE(pi);
      CHECK(gamma_gk(*W, rep(3, pi), tau).value == gamma_gj_twisted(*W, rep(3, pi), a).value);
    }
  }
  CHECK(check_gk_k1_bridge(*W, irreducible_specs(3, 2)).ok());
}

TEST_CASE("Ginzburg-Kaplan multiplicativity instances") {
  auto W = Workbench::get(3);
  auto pi = rep(3, "cusp2:1");
  auto lhs = gamma_gk_tilde(*W, pi, gen(3, "ps:0,1")).value;
  auto rhs = gamma_gk_tilde(*W, pi, gen(3, "gl1:0")).value * gamma_gk_tilde(*W, pi, gen(3, "gl1:1")).value;
  CHECK(lhs == rhs);
  auto tau = gen(3, "cusp2:1");
  CHECK(gamma_gk(*W, rep(3, "ps:0,1"), tau).value ==
        gamma_gk(*W, rep(3, "gl1:0"), tau).value * gamma_gk(*W, rep(3, "gl1:1"), tau).value);
}

TEST_CASE("contragredient property") {
  auto W = Workbench::get(3);
  for (auto [pi, tau] : {std::pair{"gl1:1", "ps:0,1"}, std::pair{"cusp2:1", "cusp2:1"},
                         std::pair{"gl1:0", "gl1:0"}}) {
    auto r = check_contragredient(*W, rep(3, pi), gen(3, tau));
    CAPTURE(pi);
    CHECK(r.ok());
    CHECK(r.count(Status::Pass) > 0);
  }
}

TEST_CASE("unit norm and its precondition") {
  auto W3 = Workbench::get(3);
  auto r = check_gamma_norm(*W3, rep(3, "cusp2:1"), gen(3, "ps:0,1"));
  CHECK(r.count(Status::Pass) == 1);
  CHECK(r.ok());
  auto W5 = Workbench::get(5);
  auto n = check_gamma_norm(*W5, rep(5, "gl1:1"), gen(5, "ps:0,2"));
  CHECK(n.count(Status::Pass) == 1);
  auto gated = check_gamma_norm(*W5, rep(5, "gl1:1"), gen(5, "ps:3,0"));
  CHECK(gated.count(Status::Skip) == 1);
  CHECK(gated.count(Status::Pass) == 0);
}

TEST_CASE("gamma values serialize with their inputs") {
  auto W = Workbench::get(3);
  auto j = gamma_gk(*W, rep(3, "gl1:1"), gen(3, "ps:0,1")).to_json();
  CHECK(j.contains("value"));
  CHECK(j.at("tau") == gen(3, "ps:0,1").to_string());
}
