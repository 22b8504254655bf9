#include <doctest.h>

#include "gkb/kloosterman.hpp"
#include "gkb/zeta.hpp"

using namespace gkb;

namespace {

ScaledCyclotomic psi_of(Workbench& W, Elem x) {
  const auto& F = *W.field();
  return ScaledCyclotomic::root_of_unity(W.cyclo(), F.p(), F.trace_to_prime(x));
}

RepSpec rep(int q, const char* s) { return parse_repspec(q, s); }
GenericSpec gen(int q, const char* s) { return parse_genericspec(q, s); }

KaplanOptions light_options(int random) {
  KaplanOptions opt;
  opt.class_translates = false;
  opt.random_translates = random;
  opt.seed = 5;
  return opt;
}

}  // namespace

TEST_CASE("Fourier transform of deltas") {
  auto W = Workbench::get(3);
  for (int c : {1, 2}) {
    auto f = fourier_transform(*W, delta_function(*W, c, zero_mat(c, c)), c);
    const auto expect = ScaledCyclotomic::q_half_power(W->cyclo(), -c * c);
    for (const auto& v : f) CHECK(v == expect);
  }
  auto g = fourier_transform(*W, delta_function(*W, 1, identity(1)), 1);
  for (Elem x = 0; x < 3; ++x) CHECK(g[x] == psi_of(*W, x).div_by_sqrt_q());
}

TEST_CASE("Fourier inversion on the delta basis") {
  for (int q : {2, 3, 4}) {
    auto W = Workbench::get(q);
    auto r = check_fourier_inversion(*W, 1);
    CHECK(r.ok());
    CHECK(r.count(Status::Pass) == static_cast<size_t>(2 * q));
  }
  auto W = Workbench::get(2);
  CHECK(check_fourier_inversion(*W, 2).ok());
  auto W5 = Workbench::get(5);
  auto sampled = check_fourier_inversion(*W5, 2, 1, 3, 9);
  CHECK(sampled.ok());
  CHECK(sampled.count(Status::Pass) == 6);
}

TEST_CASE("Macdonald functional equation") {
  auto W = Workbench::get(3);
  auto r = check_macdonald_fe(*W, rep(3, "gl1:1"), 0);
  CHECK(r.ok());
  CHECK(r.count(Status::Pass) == 3);
  auto gated = check_macdonald_fe(*W, rep(3, "gl1:0"), 0);
  CHECK(gated.count(Status::Skip) == 1);
  auto ps = check_macdonald_fe(*W, rep(3, "cusp2:1"), 1);
  CHECK(ps.ok());
  CHECK(ps.count(Status::Pass) == 81);
}

TEST_CASE("contragredient realized through the inverse transpose") {
  auto W = Workbench::get(5);
  const auto& F = *W->field();
  for (const char* s : {"ps:0,1", "cusp2:3", "st:1"}) {
    const auto& chi = rep_char(*W, rep(5, s));
    const auto dual = rep_char(*W, dual_spec(5, rep(5, s)));
    for (size_t i = 0; i < chi.size(); ++i) {
      const Mat& g = chi.group()->cls(i).rep;
      CHECK(chi.at(transpose_inverse(F, g)) == chi[i].conj());
      CHECK(dual[i] == chi[i].conj());
    }
  }
}

TEST_CASE("identity translate at j = k - 2 recovers the character") {
  auto W = Workbench::get(3);
  auto bs = bessel_speh(*W, gen(3, "ps:0,1"), 2);
  auto zc = gk_zeta_coefficients(*bs, identity(4), 0);
  const auto& chi = rep_char(*W, rep(3, "cusp2:1"));
  auto profile = operator_profile(*W, zc.z, chi);
  auto T = ElementTable::get(W->field(), 2);
  for (size_t x = 0; x < T->size(); ++x) CHECK(profile[x] == chi.at((*T)[x]));
}

TEST_CASE("zeta elements") {
  const Mat g = mat_from_rows({{2, 1}, {1, 1}});
  Mat z = zeta_element(3, 2, 0, g, mat_from_rows({{1, 0}, {0, 2}}));
  CHECK(get_block(z, 0, 0, 2, 2) == g);
  CHECK(get_block(z, 2, 0, 2, 2) == mat_from_rows({{1, 0}, {0, 2}}));
  CHECK(get_block(z, 4, 4, 2, 2) == identity(2));
  Mat d = dual_zeta_element(3, 1, 1, mat_from_rows({{2}}), mat_from_rows({{1}}));
  CHECK(d == mat_from_rows({{0, 1, 0}, {0, 0, 1}, {2, 0, 1}}));
  CHECK(translate_cost(3, 2, 1) == 2 * 2 * 3);
}

TEST_CASE("Kaplan functional equation at c = 1") {
  auto W5 = Workbench::get(5);
  auto r = check_kaplan_fe(*W5, gen(5, "ps:0,1"), 1, {rep(5, "gl1:1"), rep(5, "gl1:2")},
                           light_options(3));
  CHECK(r.ok());
  CHECK(r.count(Status::Pass) > 0);
  auto W3 = Workbench::get(3);
  auto three = check_kaplan_fe(*W3, gen(3, "ind:cusp2:1+gl1:0"), 1, {rep(3, "gl1:1")},
                               light_options(2));
  CHECK(three.ok());
  size_t j0 = 0, j1 = 0;
  for (const auto& cs : three.cases) {
    if (cs.status != Status::Pass) continue;
    j0 += cs.name.find("j=0") != std::string::npos;
    j1 += cs.name.find("j=1") != std::string::npos;
  }
  CHECK(j0 > 0);
  CHECK(j1 > 0);
}

TEST_CASE("Kaplan functional equation at c = 2 for a cuspidal pi") {
  auto W = Workbench::get(3);
  auto r = check_kaplan_fe(*W, gen(3, "ps:0,1"), 2, {rep(3, "cusp2:1")}, light_options(0));
  CHECK(r.ok());
  CHECK(r.count(Status::Pass) > 0);
}

TEST_CASE("precondition gate for the Kaplan equation") {
  auto W = Workbench::get(3);
  auto r = check_kaplan_fe(*W, gen(3, "ps:0,1"), 1, {rep(3, "gl1:0")}, light_options(1));
  CHECK(r.count(Status::Fail) == 0);
  CHECK(r.count(Status::Skip) > 0);
}

TEST_CASE("function variant of the Kaplan equation") {
  auto W = Workbench::get(3);
  auto r = check_fe_with_function(*W, gen(3, "ps:0,0"), 1, {rep(3, "gl1:1")}, light_options(1));
  CHECK(r.ok());
  CHECK(r.count(Status::Pass) == 4);
  auto W5 = Workbench::get(5);
  auto three = check_fe_with_function(*W5, gen(5, "ps:0,1,2"), 1, {rep(5, "gl1:1")}, light_options(1));
  CHECK(three.ok());
  CHECK(three.count(Status::Pass) == 4);
}

TEST_CASE("converse scan over GL_2(F_5)") {
  auto W = Workbench::get(5);
  auto r = converse_scan(*W, 2);
  CHECK(r.ok());
  const std::string gated = gen(5, "ps:0,1").to_string() + " vs " + gen(5, "ps:2,4").to_string();
  bool seen = false;
  for (const auto& cs : r.cases) {
    if (cs.name != gated) continue;
    seen = true;
    CHECK(cs.status == Status::Skip);
  }
  CHECK(seen);
  CHECK(r.count(Status::Pass) > 0);
}

TEST_CASE("special values at c = 2 for a cuspidal tau") {
  auto W = Workbench::get(3);
  auto r = check_appendix_c2(*W, gen(3, "cusp2:1"), 24, 1);
  CHECK(r.ok());
  CHECK(r.count(Status::Pass) >= 24);
  auto skipped = check_appendix_c2(*W, gen(3, "ps:0,1"), 1, 1);
  CHECK(skipped.count(Status::Skip) == 1);
}
