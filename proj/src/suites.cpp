#include "gkb/suites.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "gkb/gamma.hpp"
#include "gkb/kloosterman.hpp"
#include "gkb/whittaker.hpp"
#include "gkb/zeta.hpp"

namespace gkb {

namespace {

using nlohmann::json;

bool in_filter(int want, int v) { return want == 0 || want == v; }

std::vector<RepSpec> pis_up_to(int q, int max_n) {
  std::vector<RepSpec> out;
  for (int n = 1; n <= std::min(2, max_n); ++n)
    for (auto& p : irreducible_specs(q, n)) out.push_back(p);
  return out;
}

std::vector<GenericSpec> taus_up_to(int q, int max_k) {
  std::vector<GenericSpec> out;
  for (int k = 1; k <= max_k; ++k)
    for (auto& t : generic_specs(q, k, false)) out.push_back(t);
  return out;
}

// [GL_n : P] for the standard parabolic with the given block sizes.
mpz_class parabolic_index(int q, const std::vector<int>& blocks) {
  int n = 0;
  mpz_class levi = 1;
  for (int b : blocks) {
    n += b;
    levi *= gl_order(q, b);
  }
  int cross = 0;
  for (size_t i = 0; i < blocks.size(); ++i)
    for (size_t j = i + 1; j < blocks.size(); ++j) cross += blocks[i] * blocks[j];
  mpz_class unip;
  mpz_ui_pow_ui(unip.get_mpz_t(), q, cross);
  return gl_order(q, n) / (levi * unip);
}

CheckReport suite_infra(const SuiteConfig& cfg) {
  auto Wp = Workbench::get(cfg.q);
  Workbench& W = *Wp;
  const FieldContext& F = *W.field();
  CheckReport r;
  for (int n = 1; n <= cfg.max_n; ++n) {
    const GroupPtr& G = W.group(n);
    mpz_class total = 0;
    for (const auto& c : G->classes()) total += c.size;
    r.check("GL_" + std::to_string(n) + " class sizes sum to the group order", total == G->order(),
            total.get_str(), G->order().get_str());
    if (n > 3 || cfg.q > 3) continue;
    auto T = ElementTable::get(W.field(), n);
    for (size_t i = 0; i < G->num_classes(); ++i) {
      const auto& cls = G->cls(i);
      std::set<uint64_t> orbit;
      mpz_class cent = 0;
      bool labels_ok = true;
      for (const auto& x : T->elements()) {
        Mat y = mat_mul(F, mat_mul(F, x, cls.rep), mat_inv(F, x));
        if (orbit.insert(y.code(F.q())).second && G->class_index(y) != static_cast<int>(i))
          labels_ok = false;
        if (y == cls.rep) ++cent;
      }
      const std::string name = "GL_" + std::to_string(n) + " class " + cls.label.to_string(F);
      r.check(name + " orbit size", mpz_class(static_cast<unsigned long>(orbit.size())) == cls.size,
              std::to_string(orbit.size()), cls.size.get_str());
      r.check(name + " centralizer order", cent == cls.centralizer, cent.get_str(),
              cls.centralizer.get_str());
      r.check(name + " orbit lookup", labels_ok, "class_index over the orbit", "constant");
    }
  }
  for (int c = 1; c <= std::min(2, cfg.max_n); ++c) {
    uint64_t space = 1;
    for (int i = 0; i < c * c; ++i) space *= cfg.q;
    if (space > 81) {
      r.append(check_fourier_inversion(W, c, cfg.psi, 8, cfg.seed),
               "fourier c=" + std::to_string(c) + " seeded ");
      continue;
    }
    r.append(check_fourier_inversion(W, c, cfg.psi), "fourier c=" + std::to_string(c) + " ");
  }
  for (int c = 1; c <= std::min(2, cfg.max_n); ++c) {
    r.append(check_kl_class_invariance(W, c, {0, 1 % (cfg.q - 1)}, cfg.seed, 8, cfg.psi),
             "kl-conjugation c=" + std::to_string(c) + " ");
  }
  return r;
}

CheckReport suite_characters(const SuiteConfig& cfg) {
  auto Wp = Workbench::get(cfg.q);
  Workbench& W = *Wp;
  const int q = cfg.q;
  CheckReport r;
  // Named irreducible characters grouped by GL_n.
  std::map<int, std::vector<std::pair<std::string, const ClassFunction*>>> by_n;
  for (const auto& p : pis_up_to(q, cfg.max_n)) by_n[p.n].push_back({p.to_string(), &rep_char(W, p)});
  for (int k = 3; k <= std::min(3, cfg.max_n); ++k)
    for (const auto& t : generic_specs(q, k, false))
      by_n[k].push_back({"generic " + t.to_string(), &speh_char(W, t, 1)});
  for (int c = 2; c <= 2; ++c)
    for (int k = 2; k * c <= std::min(4, cfg.max_n); ++k)
      for (const auto& t : generic_specs(q, k, false))
        by_n[k * c].push_back({"Speh(" + t.to_string() + "," + std::to_string(c) + ")", &speh_char(W, t, c)});
  for (const auto& [n, list] : by_n) {
    for (size_t a = 0; a < list.size(); ++a) {
      ScaledCyclotomic ip = inner_product(*list[a].second, *list[a].second);
      r.check("<chi,chi> = 1 for " + list[a].first, ip.is_one(), ip.to_string(), "1");
      for (size_t b = a + 1; b < list.size(); ++b) {
        ScaledCyclotomic x = inner_product(*list[a].second, *list[b].second);
        r.check("orthogonal " + list[a].first + " and " + list[b].first, x.is_zero(), x.to_string(), "0");
      }
    }
  }
  // Induced dimensions [G:P] prod dim.
  for (int c = 1; c <= 2; ++c) {
    for (int k = 1; k * c <= std::min(4, cfg.max_n); ++k) {
      for (const auto& t : generic_specs(q, k, false)) {
        std::vector<int> blocks;
        mpz_class dims = 1;
        for (const auto& d : t.support) {
          for (int i = 0; i < c; ++i) {
            blocks.push_back(d.deg);
            if (d.deg == 2) dims *= q - 1;
          }
        }
        ClassFunction chi = bs_induction_char(W, t, c);
        mpz_class expected = parabolic_index(q, blocks) * dims;
        r.check("dimension of the induction for (" + t.to_string() + "," + std::to_string(c) + ")",
                chi.at_identity() == ScaledCyclotomic(W.cyclo(), mpq_class(expected)),
                chi.at_identity().to_string(), expected.get_str());
      }
    }
  }
  return r;
}

CheckReport suite_whittaker(const SuiteConfig& cfg) {
  auto Wp = Workbench::get(cfg.q);
  Workbench& W = *Wp;
  CheckReport r;
  for (int k = 2; k <= 3; ++k) {
    if (!in_filter(cfg.k, k)) continue;
    for (int c = 1; c <= 2; ++c) {
      if (!in_filter(cfg.c, c) || k * c > cfg.max_n) continue;
      for (const auto& t : generic_specs(cfg.q, k, false)) {
        const std::string tag = "(" + t.to_string() + "," + std::to_string(c) + ")";
        auto bs = bessel_speh(W, t, c, cfg.psi);
        ScaledCyclotomic one = (*bs)(identity(k * c));
        r.check("BS(1) = 1 for " + tag, one.is_one(), one.to_string(), "1");
        if (c == 1) {
          ScaledCyclotomic j = bessel_J(W, speh_char(W, t, 1), identity(k), cfg.psi);
          r.check("J(1) = 1 for " + t.to_string(), j.is_one(), j.to_string(), "1");
        }
        SupportCheck s = bs_support_check(W, t, c, cfg.psi);
        if (s.ok) {
          r.pass("support of BS on diag(g, I) for " + tag);
        } else {
          r.fail("support of BS on diag(g, I) for " + tag, s.witness);
        }
      }
    }
  }
  return r;
}

void k_subsets(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int a = start; a < n; ++a) {
    cur.push_back(a);
    k_subsets(n, k, a + 1, cur, out);
    cur.pop_back();
  }
}

CheckReport suite_bs_kloosterman(const SuiteConfig& cfg) {
  auto Wp = Workbench::get(cfg.q);
  Workbench& W = *Wp;
  CheckReport r;
  for (int k = 2; k <= 3; ++k) {
    if (!in_filter(cfg.k, k)) continue;
    for (int c = 1; c <= 2; ++c) {
      if (!in_filter(cfg.c, c) || k * c > cfg.max_n) continue;
      std::vector<std::vector<int>> subsets;
      std::vector<int> cur;
      k_subsets(cfg.q - 1, k, 0, cur, subsets);
      if (subsets.empty()) {
        r.notes.push_back("no principal series with " + std::to_string(k) +
                          " distinct exponents at q = " + std::to_string(cfg.q));
      }
      for (const auto& e : subsets) r.append(check_bs_kloosterman_identity(W, e, c, cfg.psi));
    }
  }
  return r;
}

CheckReport suite_kl_mult(const SuiteConfig& cfg) {
  auto Wp = Workbench::get(cfg.q);
  Workbench& W = *Wp;
  const int q = cfg.q;
  CheckReport r;
  auto tuples = [&](int k) {
    std::vector<std::vector<int>> out(1);
    for (int j = 0; j < k; ++j) {
      std::vector<std::vector<int>> next;
      for (const auto& t : out)
        for (int a = 0; a < q - 1; ++a) {
          auto u = t;
          u.push_back(a);
          next.push_back(u);
        }
      out = std::move(next);
    }
    return out;
  };
  if (cfg.max_n >= 2) {
    for (int k = 2; k <= 3; ++k) {
      if (!in_filter(cfg.k, k)) continue;
      for (const auto& a : tuples(k)) r.append(check_kl_multiplicativity(W, 1, 1, a, cfg.psi));
    }
  }
  if (cfg.max_n >= 3 && in_filter(cfg.k, 2) && q == 2) {
    for (const auto& a : tuples(2)) r.append(check_kl_multiplicativity(W, 1, 2, a, cfg.psi), "c1=1 c2=2 ");
  }
  return r;
}

CheckReport suite_gj_fe(const SuiteConfig& cfg) {
  auto Wp = Workbench::get(cfg.q);
  Workbench& W = *Wp;
  CheckReport r;
  for (const auto& pi : pis_up_to(cfg.q, cfg.max_n)) {
    if (!in_filter(cfg.c, pi.n)) continue;
    if (pi.n == 2 && cfg.q > 3) {
      r.skip(pi.to_string(), "budget: the delta basis of M_2 is exhausted only for q <= 3");
      continue;
    }
    for (int a = 0; a < cfg.q - 1; ++a) r.append(check_macdonald_fe(W, pi, a, cfg.psi));
  }
  return r;
}

// Pairs (pi, tau) with k n <= max_n.
template <class Fn>
void for_pairs(const SuiteConfig& cfg, Fn&& fn) {
  for (const auto& pi : pis_up_to(cfg.q, cfg.max_n)) {
    if (!in_filter(cfg.c, pi.n)) continue;
    for (const auto& tau : taus_up_to(cfg.q, 3)) {
      if (!in_filter(cfg.k, tau.k()) || tau.k() * pi.n > cfg.max_n) continue;
      fn(pi, tau);
    }
  }
}

CheckReport suite_gk_mult2(const SuiteConfig& cfg) {
  auto Wp = Workbench::get(cfg.q);
  CheckReport r;
  r.append(check_gk_k1_bridge(*Wp, pis_up_to(cfg.q, cfg.max_n), cfg.psi));
  for (const auto& pi : pis_up_to(cfg.q, cfg.max_n)) {
    if (!in_filter(cfg.c, pi.n)) continue;
    std::vector<GenericSpec> taus;
    for (const auto& t : taus_up_to(cfg.q, 3))
      if (t.k() >= 2 && in_filter(cfg.k, t.k()) && t.k() * pi.n <= cfg.max_n) taus.push_back(t);
    r.append(check_gk_multiplicativity_second(*Wp, {pi}, taus, cfg.psi));
  }
  return r;
}

CheckReport suite_gk_mult1(const SuiteConfig& cfg) {
  auto Wp = Workbench::get(cfg.q);
  std::vector<GenericSpec> taus;
  for (const auto& t : taus_up_to(cfg.q, 3))
    if (in_filter(cfg.k, t.k()) && 2 * t.k() <= cfg.max_n) taus.push_back(t);
  return check_gk_multiplicativity_first(*Wp, taus, cfg.psi);
}

CheckReport suite_convolution(const SuiteConfig& cfg) {
  auto Wp = Workbench::get(cfg.q);
  CheckReport r;
  for (const auto& t : taus_up_to(cfg.q, 3)) {
    if (t.k() < 2 || !in_filter(cfg.k, t.k())) continue;
    for (int c = 1; c <= 2; ++c)
      if (in_filter(cfg.c, c) && t.k() * c <= cfg.max_n) r.append(check_convolution_lemma(*Wp, t, c, cfg.psi));
  }
  return r;
}

CheckReport suite_unipotent_average(const SuiteConfig& cfg) {
  auto Wp = Workbench::get(cfg.q);
  CheckReport r;
  for (const auto& t : taus_up_to(cfg.q, 3))
    if (t.k() >= 2 && in_filter(cfg.k, t.k()) && 2 * t.k() <= cfg.max_n)
      r.append(check_unipotent_average(*Wp, t, cfg.psi));
  return r;
}

CheckReport suite_contragredient(const SuiteConfig& cfg) {
  auto Wp = Workbench::get(cfg.q);
  CheckReport r;
  for_pairs(cfg, [&](const RepSpec& pi, const GenericSpec& tau) {
    r.append(check_contragredient(*Wp, pi, tau, cfg.psi));
  });
  return r;
}

CheckReport suite_gk_norm(const SuiteConfig& cfg) {
  auto Wp = Workbench::get(cfg.q);
  CheckReport r;
  for_pairs(cfg, [&](const RepSpec& pi, const GenericSpec& tau) {
    r.append(check_gamma_norm(*Wp, pi, tau, cfg.psi));
  });
  return r;
}

KaplanOptions kaplan_options(const SuiteConfig& cfg) {
  KaplanOptions o;
  o.class_translates = cfg.class_translates;
  o.random_translates = cfg.random_translates;
  o.seed = cfg.seed;
  o.psi = cfg.psi;
  o.translate_budget = cfg.translate_budget;
  return o;
}

CheckReport suite_gk_fe(const SuiteConfig& cfg) {
  auto Wp = Workbench::get(cfg.q);
  Workbench& W = *Wp;
  CheckReport r;
  for (int k = 2; k <= 3; ++k) {
    if (!in_filter(cfg.k, k)) continue;
    for (int c = 1; c <= 2; ++c) {
      if (!in_filter(cfg.c, c) || k * c > cfg.max_n) continue;
      KaplanOptions o = kaplan_options(cfg);
      o.dual_data_identity = k * c <= 4;
      const auto pis = irreducible_specs(cfg.q, c);
      for (const auto& tau : generic_specs(cfg.q, k, false)) {
        r.append(check_kaplan_fe(W, tau, c, pis, o), "k=" + std::to_string(k) + " c=" + std::to_string(c) + " ");
        if (k == 2 || (k == 3 && c == 1)) {
          KaplanOptions f = o;
          f.class_translates = false;
          f.random_translates = std::min(2, cfg.random_translates);
          r.append(check_fe_with_function(W, tau, c, pis, f),
                   "function k=" + std::to_string(k) + " c=" + std::to_string(c) + " ");
        }
      }
    }
  }
  return r;
}

CheckReport suite_converse(const SuiteConfig& cfg) {
  if (cfg.max_n < 2) {
    CheckReport r;
    r.skip("converse", "needs max-n >= 2");
    return r;
  }
  return converse_scan(*Workbench::get(cfg.q), 2, cfg.psi);
}

CheckReport suite_appendix(const SuiteConfig& cfg) {
  CheckReport r;
  if (cfg.max_n < 4) {
    r.skip("appendix-c2", "needs max-n >= 4");
    return r;
  }
  auto Wp = Workbench::get(cfg.q);
  for (const auto& tau : generic_specs(cfg.q, 2, false))
    if (tau.support.size() == 1) r.append(check_appendix_c2(*Wp, tau, 24, cfg.seed, cfg.psi));
  return r;
}

using SuiteFn = CheckReport (*)(const SuiteConfig&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites = {
      {"infra", suite_infra},
      {"characters", suite_characters},
      {"whittaker", suite_whittaker},
      {"bs-kloosterman", suite_bs_kloosterman},
      {"kl-mult", suite_kl_mult},
      {"gj-mult", [](const SuiteConfig& cfg) {
         return check_gj_multiplicativity(*Workbench::get(cfg.q), cfg.psi);
       }},
      {"gj-fe", suite_gj_fe},
      {"gk-mult1", suite_gk_mult1},
      {"gk-mult2", suite_gk_mult2},
      {"convolution", suite_convolution},
      {"unipotent-average", suite_unipotent_average},
      {"contragredient", suite_contragredient},
      {"gk-norm", suite_gk_norm},
      {"gk-fe", suite_gk_fe},
      {"converse", suite_converse},
      {"appendix-c2", suite_appendix},
  };
  return suites;
}

}  // namespace

json SuiteConfig::to_json() const {
  return {{"q", q},         {"max_n", max_n},
          {"k", k},         {"c", c},
          {"seed", seed},   {"psi", psi},
          {"random_translates", random_translates},
          {"class_translates", class_translates},
          {"translate_budget", translate_budget}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [n, fn] : registry()) out.push_back(n);
    return out;
  }();
  return names;
}

bool is_suite(const std::string& name) {
  const auto& n = suite_names();
  return name == "all" || std::find(n.begin(), n.end(), name) != n.end();
}

CheckReport run_suite(const std::string& name, const SuiteConfig& cfg) {
  for (const auto& [n, fn] : registry()) {
    if (n != name) continue;
    CheckReport r = fn(cfg);
    r.suite = name;
    r.params = cfg.to_json();
    return r;
  }
  throw std::invalid_argument("unknown suite " + name);
}

json run_verify(const std::string& name, const SuiteConfig& cfg, bool& ok) {
  if (name != "all") {
    CheckReport r = run_suite(name, cfg);
    ok = r.ok();
    return r.to_json();
  }
  json suites = json::array();
  size_t pass = 0, fail = 0, skip = 0;
  for (const auto& n : suite_names()) {
    CheckReport r = run_suite(n, cfg);
    pass += r.count(Status::Pass);
    fail += r.count(Status::Fail);
    skip += r.count(Status::Skip);
    suites.push_back(r.to_json());
  }
  ok = fail == 0;
  return {{"suite", "all"},
          {"params", cfg.to_json()},
          {"status", ok ? "pass" : "fail"},
          {"counts", {{"pass", pass}, {"fail", fail}, {"skip", skip}}},
          {"suites", suites}};
}

}  // namespace gkb
