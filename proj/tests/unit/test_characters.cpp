#include <doctest.h>

#include "gkb/characters.hpp"

using namespace gkb;

namespace {

bool is_int(const ScaledCyclotomic& x, long v) { return x == ScaledCyclotomic(x.context(), v); }

}  // namespace

TEST_CASE("building block characters") {
  auto W = Workbench::get(3);
  auto triv = gl1_char(*W, 0);
  for (size_t i = 0; i < triv.size(); ++i) CHECK(triv[i].is_one());
  auto cusp = cuspidal2_char(*W, 1);
  CHECK(is_int(cusp.at_identity(), 2));
  CHECK(inner_product(cusp, cusp).is_one());
  CHECK(cusp.at(mat_from_rows({{1, 0}, {0, 2}})).is_zero());
  CHECK(inner_product(gl1_char(*W, 0), gl1_char(*W, 1)).is_zero());
  CHECK(inner_product(triv, triv).is_one());
  CHECK_THROWS(cuspidal2_char(*W, 4));
}

TEST_CASE("permutation character of the projective line over F_2") {
  auto W = Workbench::get(2);
  auto chi = induced_char(*W, {gl1_char(*W, 0), gl1_char(*W, 0)});
  CHECK(is_int(chi.at(identity(2)), 3));
  CHECK(is_int(chi.at(mat_from_rows({{1, 1}, {0, 1}})), 1));
  CHECK(is_int(chi.at(mat_from_rows({{0, 1}, {1, 1}})), 0));
  CHECK(is_int(inner_product(chi, chi), 2));
}

TEST_CASE("rep specs") {
  auto W = Workbench::get(3);
  auto det0 = char_of_repspec(*W, parse_repspec(3, "det:0@3"));
  for (size_t i = 0; i < det0.size(); ++i) CHECK(det0[i].is_one());
  CHECK(is_int(char_of_repspec(*W, parse_repspec(3, "st:0")).at_identity(), 3));
  CHECK(is_int(char_of_repspec(*W, parse_repspec(3, "ps:0,1")).at_identity(), 4));
  CHECK_THROWS(char_of_repspec(*W, parse_repspec(3, "ps:0,0")));
  auto ind = char_of_repspec(*W, parse_repspec(3, "ind:cusp2:1+gl1:0"));
  CHECK(is_int(ind.at_identity(), 13 * 2));
  CHECK(parse_repspec(3, "cusp2:t=3").t == 1);
}

TEST_CASE("induction is commutative and has the index dimension") {
  auto W = Workbench::get(3);
  auto a = induced_char(*W, {cuspidal2_char(*W, 1), gl1_char(*W, 1)});
  auto b = induced_char(*W, {gl1_char(*W, 1), cuspidal2_char(*W, 1)});
  CHECK(a == b);
  CHECK(is_int(a.at_identity(), 26));
}

TEST_CASE("Speh characters of GL_2 cuspidals") {
  for (int q : {2, 3}) {
    auto W = Workbench::get(q);
    for (int t : {1, 2}) {
      if ((t * q) % (q * q - 1) == t) continue;
      auto chi = speh_cuspidal2_char(*W, t);
      CHECK(inner_product(chi, chi).is_one());
      long dim = q == 3 ? 52 : 7;
      CHECK(is_int(chi.at_identity(), dim));
    }
  }
}

TEST_CASE("duals, central characters and supports") {
  const int q = 3;
  auto g = parse_repspec(q, "gl1:0");
  CHECK(dual_spec(q, g).exps[0] == 0);
  CHECK(central_character(q, parse_repspec(q, "ps:0,1")) == 1);
  auto pi = parse_repspec(5, "ps:1,2");
  CHECK(central_character(5, dual_spec(5, pi)) == (4 - central_character(5, pi)) % 4);
  CHECK(dual_spec(5, dual_spec(5, pi)).exps == pi.exps);
  CHECK_FALSE(supports_disjoint(3, parse_repspec(3, "gl1:1"), parse_genericspec(3, "gl1:-1")));
  CHECK(supports_disjoint(3, parse_repspec(3, "gl1:1"), parse_genericspec(3, "gl1:0")));
  CHECK_FALSE(supports_disjoint(3, parse_repspec(3, "cusp2:1"), parse_genericspec(3, "cusp2:3")));
  CHECK(central_character(3, parse_genericspec(3, "cusp2:1")) == 1);
}

TEST_CASE("central character matches the value on scalars") {
  auto W = Workbench::get(5);
  for (const char* s : {"cusp2:1", "cusp2:2", "ps:1,2", "st:3", "det:2@2"}) {
    auto spec = parse_repspec(5, s, 2);
    auto chi = char_of_repspec(*W, spec);
    int w = central_character(5, spec);
    for (Elem z = 1; z < 5; ++z) {
      auto lhs = chi.at(scalar_mat(2, z));
      auto rhs = chi.at_identity() * ScaledCyclotomic::zeta(W->cyclo(), W->alpha_exp(w, z));
      CHECK(lhs == rhs);
    }
  }
}
