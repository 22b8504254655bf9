#include "gkb/gamma.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "gkb/kloosterman.hpp"
#include "gkb/whittaker.hpp"

namespace gkb {

namespace {

ScaledCyclotomic inverse_dimension(const ClassFunction& chi) {
  mpq_class d;
  if (!chi.at_identity().as_rational(d) || d <= 0) {
    throw std::invalid_argument("character degree is not a positive rational");
  }
  return ScaledCyclotomic(chi.cyclo(), 1 / d);
}

ScaledCyclotomic omega_at_minus_one(Workbench& W, int central) {
  return ScaledCyclotomic::zeta(W.cyclo(), W.alpha_exp(central, W.field()->neg(1)));
}

std::string twist_string(int a) { return "chi=gl1:" + std::to_string(a); }

// Runs f and records a skip when the configuration is outside the supported range.
template <class F>
bool guarded(CheckReport& r, const std::string& name, F&& f) {
  try {
    f();
    return true;
  } catch (const std::invalid_argument& e) {
    r.skip(name, e.what());
  } catch (const BudgetExceeded& e) {
    r.skip(name, e.what());
  }
  return false;
}

}  // namespace

nlohmann::json GammaValue::to_json() const {
  auto [re, im] = value.to_complex_approx();
  nlohmann::json j = {{"pi", pi}, {"psi_twist", psi}, {"definition", definition},
                      {"value", value.to_json()}, {"value_string", value.to_string()},
                      {"value_approx", {re, im}}};
  if (!tau.empty()) j["tau"] = tau;
  return j;
}

ScaledCyclotomic gj_gamma_of_char(Workbench& W, const ClassFunction& chi, int twist, Elem psi) {
  const FieldContext& F = *W.field();
  const GroupContext& G = *chi.group();
  const int c = G.n();
  ScaledCyclotomic sum = W.zero();
  for (size_t i = 0; i < G.num_classes(); ++i) {
    const ClassInfo& cl = G.cls(i);
    int64_t e = W.alpha_exp(((twist % (F.q() - 1)) + F.q() - 1) % (F.q() - 1), det(F, cl.rep)) +
                W.psi_exp(psi, trace(F, mat_inv(F, cl.rep)));
    sum += chi[i].times_zeta(e).scaled(mpq_class(cl.size));
  }
  return sum * inverse_dimension(chi) * ScaledCyclotomic::q_half_power(W.cyclo(), -c * c);
}

ScaledCyclotomic gk_gamma_of_char(Workbench& W, const ClassFunction& chi, const ClassFunction& B,
                                  int k) {
  const GroupContext& G = *chi.group();
  const int c = G.n();
  ScaledCyclotomic sum = W.zero();
  for (size_t i = 0; i < G.num_classes(); ++i) {
    sum += (B[i] * chi[i]).scaled(mpq_class(G.cls(i).size));
  }
  return sum * inverse_dimension(chi) * ScaledCyclotomic::q_half_power(W.cyclo(), (k - 2) * c * c);
}

GammaValue gamma_gj(Workbench& W, const RepSpec& pi, Elem psi) {
  return {gj_gamma_of_char(W, rep_char(W, pi), 0, psi), pi.to_string(), "", psi, "Gamma_GJ"};
}

GammaValue gamma_gj_twisted(Workbench& W, const RepSpec& pi, int twist, Elem psi) {
  return {gj_gamma_of_char(W, rep_char(W, pi), twist, psi), pi.to_string(), twist_string(twist),
          psi, "gamma_GJ(pi x chi)"};
}

GammaValue gamma_gk(Workbench& W, const RepSpec& pi, const GenericSpec& tau, Elem psi) {
  const ClassFunction& chi = rep_char(W, pi);
  const ClassFunction& B = special_value_profile(W, tau, pi.n, psi);
  return {gk_gamma_of_char(W, chi, B, tau.k()), pi.to_string(), tau.to_string(), psi, "Gamma_GK"};
}

GammaValue gamma_gk_tilde(Workbench& W, const RepSpec& pi, const GenericSpec& tau, Elem psi) {
  GammaValue g = gamma_gk(W, pi, tau, psi);
  if ((tau.k() - 1) % 2) g.value = g.value * omega_at_minus_one(W, central_character(W.q(), pi));
  g.definition = "gamma~_GK";
  return g;
}

CheckReport check_contragredient(Workbench& W, const RepSpec& pi, const GenericSpec& tau,
                                 Elem psi) {
  CheckReport r;
  r.suite = "contragredient";
  const int q = W.q();
  r.params = {{"q", q}, {"pi", pi.to_string()}, {"tau", tau.to_string()}, {"psi", psi}};
  const std::string name = pi.to_string() + " x " + tau.to_string();
  guarded(r, name, [&] {
    ScaledCyclotomic lhs =
        gamma_gk(W, dual_spec(q, pi), dual_generic(q, tau), W.field()->neg(psi)).value;
    ScaledCyclotomic rhs = gamma_gk(W, pi, tau, psi).value.conj();
    r.check(name, lhs == rhs, lhs.to_string(), rhs.to_string());
  });
  return r;
}

CheckReport check_gamma_norm(Workbench& W, const RepSpec& pi, const GenericSpec& tau, Elem psi) {
  CheckReport r;
  r.suite = "gk-norm";
  const int q = W.q();
  r.params = {{"q", q}, {"pi", pi.to_string()}, {"tau", tau.to_string()}, {"psi", psi}};
  const std::string name = pi.to_string() + " x " + tau.to_string();
  if (!supports_disjoint(q, pi, dual_generic(q, tau))) {
    r.skip(name, "cuspidal support of pi meets that of tau^vee");
    return r;
  }
  guarded(r, name, [&] {
    ScaledCyclotomic g = gamma_gk(W, pi, tau, psi).value;
    ScaledCyclotomic n = g * g.conj();
    r.check(name, n.is_one(), n.to_string(), "1");
  });
  return r;
}

std::vector<RepFactorization> gl2_factorizations(int q) {
  std::vector<RepFactorization> out;
  auto gl1 = [&](int a) { return parse_repspec(q, "gl1:" + std::to_string(a)); };
  for (int a = 0; a < q - 1; ++a) {
    out.push_back({parse_repspec(q, "det:" + std::to_string(a) + "@2"), gl1(a), gl1(a)});
    out.push_back({parse_repspec(q, "st:" + std::to_string(a)), gl1(a), gl1(a)});
    for (int b = a + 1; b < q - 1; ++b) {
      out.push_back(
          {parse_repspec(q, "ps:" + std::to_string(a) + "," + std::to_string(b)), gl1(a), gl1(b)});
    }
  }
  return out;
}

std::vector<std::pair<GenericSpec, GenericSpec>> generic_splittings(int q,
                                                                    const GenericSpec& tau) {
  const auto& sup = tau.support;
  const size_t n = sup.size();
  std::set<std::pair<GenericSpec, GenericSpec>> seen;
  std::vector<std::pair<GenericSpec, GenericSpec>> out;
  for (uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
    std::vector<CuspidalDatum> a, b;
    for (size_t i = 0; i < n; ++i) ((mask >> i) & 1 ? a : b).push_back(sup[i]);
    auto p = std::make_pair(make_generic(q, a), make_generic(q, b));
    if (seen.insert(p).second) out.push_back(p);
  }
  return out;
}

CheckReport check_gj_multiplicativity(Workbench& W, Elem psi) {
  CheckReport r;
  r.suite = "gj-mult";
  const int q = W.q();
  r.params = {{"q", q}, {"psi", psi}};
  for (const auto& f : gl2_factorizations(q)) {
    for (int a = 0; a < q - 1; ++a) {
      ScaledCyclotomic lhs = gamma_gj_twisted(W, f.pi, a, psi).value;
      ScaledCyclotomic rhs =
          gamma_gj_twisted(W, f.pi1, a, psi).value * gamma_gj_twisted(W, f.pi2, a, psi).value;
      r.check(f.pi.to_string() + " = " + f.pi1.to_string() + " o " + f.pi2.to_string() + " " +
                  twist_string(a),
              lhs == rhs, lhs.to_string(), rhs.to_string());
    }
  }
  return r;
}

CheckReport check_gk_multiplicativity_second(Workbench& W, const std::vector<RepSpec>& pis,
                                             const std::vector<GenericSpec>& taus, Elem psi) {
  CheckReport r;
  r.suite = "gk-mult2";
  const int q = W.q();
  r.params = {{"q", q}, {"psi", psi}};
  for (const auto& tau : taus) {
    for (const auto& [t1, t2] : generic_splittings(q, tau)) {
      for (const auto& pi : pis) {
        std::string name = pi.to_string() + " x " + tau.to_string() + " = " + t1.to_string() +
                           " o " + t2.to_string();
        guarded(r, name, [&] {
          ScaledCyclotomic lhs = gamma_gk_tilde(W, pi, tau, psi).value;
          ScaledCyclotomic rhs =
              gamma_gk_tilde(W, pi, t1, psi).value * gamma_gk_tilde(W, pi, t2, psi).value;
          r.check(name, lhs == rhs, lhs.to_string(), rhs.to_string());
        });
      }
    }
  }
  return r;
}

CheckReport check_gk_multiplicativity_first(Workbench& W, const std::vector<GenericSpec>& taus,
                                            Elem psi) {
  CheckReport r;
  r.suite = "gk-mult1";
  const int q = W.q();
  r.params = {{"q", q}, {"psi", psi}};
  for (const auto& tau : taus) {
    for (const auto& f : gl2_factorizations(q)) {
      std::string name = f.pi.to_string() + " x " + tau.to_string() + " with " +
                         f.pi1.to_string() + " o " + f.pi2.to_string();
      guarded(r, name, [&] {
        ScaledCyclotomic lhs = gamma_gk(W, f.pi, tau, psi).value;
        ScaledCyclotomic rhs = gamma_gk(W, f.pi1, tau, psi).value * gamma_gk(W, f.pi2, tau, psi).value;
        r.check(name, lhs == rhs, lhs.to_string(), rhs.to_string());
      });
    }
  }
  return r;
}

CheckReport check_gk_k1_bridge(Workbench& W, const std::vector<RepSpec>& pis, Elem psi) {
  CheckReport r;
  r.suite = "gk-k1";
  const int q = W.q();
  r.params = {{"q", q}, {"psi", psi}};
  for (const auto& pi : pis) {
    for (int a = 0; a < q - 1; ++a) {
      GenericSpec tau = make_generic(q, {{1, a}});
      ScaledCyclotomic lhs = gamma_gk(W, pi, tau, psi).value;
      ScaledCyclotomic rhs = gamma_gj_twisted(W, pi, a, psi).value;
      r.check(pi.to_string() + " x " + tau.to_string(), lhs == rhs, lhs.to_string(),
              rhs.to_string());
    }
  }
  return r;
}

CheckReport check_convolution_lemma(Workbench& W, const GenericSpec& tau, int c, Elem psi) {
  CheckReport r;
  r.suite = "convolution";
  const int q = W.q();
  r.params = {{"q", q}, {"tau", tau.to_string()}, {"c", c}, {"psi", psi}};
  const FieldContext& F = *W.field();
  const GroupPtr& G = W.group(c);
  auto T = ElementTable::get(W.field(), c);
  const ScaledCyclotomic scale = ScaledCyclotomic::q_half_power(W.cyclo(), -2 * c * c);
  for (const auto& [t1, t2] : generic_splittings(q, tau)) {
    const std::string tag = tau.to_string() + " = " + t1.to_string() + " o " + t2.to_string();
    guarded(r, tag, [&] {
      const ClassFunction& B = special_value_profile(W, tau, c, psi);
      const ClassFunction& B1 = special_value_profile(W, t1, c, psi);
      const ClassFunction& B2 = special_value_profile(W, t2, c, psi);
      std::vector<int> cls(T->size());
      for (size_t i = 0; i < T->size(); ++i) cls[i] = G->class_index((*T)[i]);
      for (size_t i = 0; i < G->num_classes(); ++i) {
        const int mh = T->index(mat_neg(F, G->cls(i).rep));
        ScaledCyclotomic sum = W.zero();
        for (size_t x = 0; x < T->size(); ++x) {
          const int y = T->product(T->inverse(static_cast<int>(x)), mh);
          sum += B1[cls[x]] * B2[cls[y]];
        }
        ScaledCyclotomic rhs = scale * sum;
        r.check(tag + " h=" + G->cls(i).label.to_string(F), B[i] == rhs, B[i].to_string(),
                rhs.to_string());
      }
    });
  }
  return r;
}

CheckReport check_unipotent_average(Workbench& W, const GenericSpec& tau, Elem psi) {
  CheckReport r;
  r.suite = "unipotent-average";
  const int q = W.q();
  const int k = tau.k();
  r.params = {{"q", q}, {"tau", tau.to_string()}, {"c1", 1}, {"c2", 1}, {"psi", psi}};
  const FieldContext& F = *W.field();
  guarded(r, tau.to_string(), [&] {
    const ClassFunction& B = special_value_profile(W, tau, 2, psi);
    const ClassFunction& B1 = special_value_profile(W, tau, 1, psi);
    const GroupPtr& G1 = W.group(1);
    const ScaledCyclotomic lhs_scale = ScaledCyclotomic::q_half_power(W.cyclo(), -2);
    const ScaledCyclotomic rhs_scale = ScaledCyclotomic::q_half_power(W.cyclo(), -2 * (k - 1));
    for (size_t i1 = 0; i1 < G1->num_classes(); ++i1) {
      for (size_t i2 = 0; i2 < G1->num_classes(); ++i2) {
        Mat d = block_diag({G1->cls(i1).rep, G1->cls(i2).rep});
        ScaledCyclotomic sum = W.zero();
        for (int x = 0; x < q; ++x) {
          Mat n = identity(2);
          n.at(0, 1) = static_cast<Elem>(x);
          sum += B.at(mat_mul(F, n, d));
        }
        ScaledCyclotomic lhs = lhs_scale * sum;
        ScaledCyclotomic rhs = rhs_scale * B1[i1] * B1[i2];
        r.check(tau.to_string() + " h1=" + G1->cls(i1).label.to_string(F) +
                    " h2=" + G1->cls(i2).label.to_string(F),
                lhs == rhs, lhs.to_string(), rhs.to_string());
      }
    }
  });
  return r;
}

}  // namespace gkb
