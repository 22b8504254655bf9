// gkbench: command-line access to classes, characters, Bessel-Speh data, gamma factors,
// Kloosterman sums, verification suites and the on-disk cache.
#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "gkb/cache.hpp"
#include "gkb/gamma.hpp"
#include "gkb/kloosterman.hpp"
#include "gkb/suites.hpp"
#include "gkb/whittaker.hpp"

using namespace gkb;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "1,0;0,1" or "1 0; 0 1".
Mat parse_matrix(const std::string& s, int q) {
  std::vector<std::vector<int>> rows;
  std::stringstream rs(s);
  std::string row;
  while (std::getline(rs, row, ';')) {
    for (char& ch : row)
      if (ch == ',') ch = ' ';
    std::stringstream es(row);
    std::vector<int> r;
    int v;
    while (es >> v) {
      if (v < 0 || v >= q) throw UsageError("matrix entry " + std::to_string(v) + " is not in [0, q)");
      r.push_back(v);
    }
    if (!es.eof()) throw UsageError("cannot parse matrix row '" + row + "'");
    if (!r.empty()) rows.push_back(r);
  }
  if (rows.empty()) throw UsageError("empty matrix");
  for (const auto& r : rows)
    if (r.size() != rows.size()) throw UsageError("matrix must be square");
  return mat_from_rows(rows);
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("cannot parse integer list '" + s + "'");
    }
  }
  return out;
}

json matrix_json(const Mat& A) {
  json rows = json::array();
  for (int i = 0; i < A.rows; ++i) {
    json r = json::array();
    for (int j = 0; j < A.cols; ++j) r.push_back(A.at(i, j));
    rows.push_back(r);
  }
  return rows;
}

json class_function_json(const ClassFunction& f) {
  const GroupContext& G = *f.group();
  json out = json::array();
  for (size_t i = 0; i < f.size(); ++i) {
    out.push_back({{"class", G.cls(i).label.to_string(G.field())},
                   {"size", G.cls(i).size.get_str()},
                   {"value", f[i].to_string()}});
  }
  return out;
}

struct Output {
  std::string path;

  void emit(const json& j) const {
    const std::string text = j.dump(2) + "\n";
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    out << text;
  }
};

void check_q(int q) {
  if (q < 2 || q > FieldContext::kMaxQ) throw UsageError("q must be a prime power in [2, 16]");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gamma factors and Bessel-Speh functions of GL_n over finite fields"};
  app.require_subcommand(1);
  Output out;
  std::string cache_dir;
  app.add_option("-o,--output", out.path, "Write the JSON result to this file");
  app.add_option("--cache-dir", cache_dir, std::string("Cache directory (default $") + kCacheDirEnv +
                                               " or .gkbench-cache)");

  int q = 3, n = 2, c = 1, twist = 0, psi = 1;
  std::string spec, pi, tau, matrix, alphas;

  auto* classes = app.add_subcommand("classes", "Conjugacy classes of GL_n(F_q)");
  classes->add_option("--q", q)->required();
  classes->add_option("--n", n)->required()->check(CLI::Range(1, 6));

  auto* chr = app.add_subcommand("char", "Character table row of a representation spec");
  chr->add_option("--q", q)->required();
  chr->add_option("--spec", spec, "ps:a,b | det:a@n | st:a | cusp2:t | gl1:a | ind:...")->required();

  auto* bessel = app.add_subcommand("bessel", "Bessel-Speh function BS of Speh(tau, c) at a matrix");
  bessel->add_option("--q", q)->required();
  bessel->add_option("--tau", tau, "generic spec of GL_k")->required();
  bessel->add_option("--c", c)->check(CLI::Range(1, 2));
  bessel->add_option("--g", matrix, "kc x kc matrix, rows separated by ';' (default identity)");
  bessel->add_option("--psi", psi);

  auto* bs = app.add_subcommand("bs", "Special values h -> B_tau(h) on the classes of GL_c");
  bs->add_option("--q", q)->required();
  bs->add_option("--tau", tau)->required();
  bs->add_option("--c", c)->check(CLI::Range(1, 2));
  bs->add_option("--psi", psi);

  auto* gamma = app.add_subcommand("gamma", "Gamma factors");
  gamma->require_subcommand(1);
  auto* gk = gamma->add_subcommand("gk", "Ginzburg-Kaplan Gamma(pi, tau, psi)");
  gk->add_option("--q", q)->required();
  gk->add_option("--pi", pi)->required();
  gk->add_option("--tau", tau)->required();
  gk->add_option("--psi", psi);
  bool tilde = false;
  gk->add_flag("--normalized", tilde, "Report omega_pi(-1)^{k-1} Gamma");
  auto* gj = gamma->add_subcommand("gj", "Godement-Jacquet gamma(pi x alpha, psi)");
  gj->add_option("--q", q)->required();
  gj->add_option("--pi", pi)->required();
  gj->add_option("--twist", twist, "exponent a of the GL_1 twist alpha_a");
  gj->add_option("--psi", psi);

  auto* kl = app.add_subcommand("kloosterman", "Twisted matrix Kloosterman sums");
  kl->add_option("--q", q)->required();
  kl->add_option("--c", c)->check(CLI::Range(1, 3));
  kl->add_option("--alphas", alphas, "comma separated GL_1 exponents, one per factor")->required();
  kl->add_option("--target", matrix, "target matrix (default: every class representative)");
  kl->add_option("--psi", psi);

  SuiteConfig cfg;
  std::string suite;
  bool override_budgets = false, no_class_translates = false;
  auto* verify = app.add_subcommand("verify", "Run a verification suite and emit a JSON report");
  std::vector<std::string> names = suite_names();
  names.push_back("all");
  verify->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(names));
  verify->add_option("--q", cfg.q)->required();
  verify->add_option("--max-n", cfg.max_n, "Largest GL_n touched (default 4)")->check(CLI::Range(1, 6));
  verify->add_option("--k", cfg.k, "Restrict to this k")->check(CLI::Range(0, 3));
  verify->add_option("--c", cfg.c, "Restrict to this c")->check(CLI::Range(0, 2));
  verify->add_option("--seed", cfg.seed);
  verify->add_option("--psi", psi);
  verify->add_option("--random-translates", cfg.random_translates)->check(CLI::Range(0, 1000));
  verify->add_flag("--no-class-translates", no_class_translates);
  verify->add_option("--translate-budget", cfg.translate_budget);
  verify->add_flag("--override-budgets", override_budgets, "Allow budgets above the defaults");

  auto* cache = app.add_subcommand("cache", "Inspect or manage the cache");
  cache->require_subcommand(1);
  auto* cache_path = cache->add_subcommand("path", "Print the cache directory");
  auto* cache_list = cache->add_subcommand("list", "List cache entries and their status");
  auto* cache_clear = cache->add_subcommand("clear", "Remove every cache entry");
  auto* cache_warm = cache->add_subcommand("warm", "Store class lists for GL_1 .. GL_n");
  cache_warm->add_option("--q", q)->required();
  cache_warm->add_option("--max-n", n)->check(CLI::Range(1, 6));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    Cache store(cache_dir.empty() ? Cache::default_dir() : std::filesystem::path(cache_dir));
    auto workbench = [&]() {
      check_q(q);
      return Workbench::get(q);
    };

    if (*classes) {
      auto W = workbench();
      const GroupContext* G = nullptr;
      CacheKey key;
      key.kind = "classes";
      key.q = q;
      key.n = n;
      key.modulus = W->field()->modulus_string();
      CacheLookup hit = store.load(key);
      if (!hit.warning.empty()) std::cerr << "warning: " << hit.warning << '\n';
      json payload;
      if (hit.status == CacheStatus::Hit) {
        payload = hit.payload;
      } else {
        G = W->group(n).get();
        payload = classes_payload(*G);
        store.store(key, payload);
      }
      json list = json::array();
      mpz_class total = 0;
      for (const auto& cls : classes_from_payload(payload)) {
        total += cls.size;
        list.push_back({{"label", cls.label}, {"size", cls.size.get_str()},
                        {"centralizer", cls.centralizer.get_str()}, {"rep", matrix_json(cls.rep)}});
      }
      const std::string order = payload.at("order").get<std::string>();
      out.emit({{"q", q}, {"n", n}, {"order", order}, {"num_classes", list.size()},
                {"size_sum", total.get_str()}, {"classes", list}});
      return total == mpz_class(order) ? kExitOk : kExitCheckFailed;
    }

    if (*chr) {
      auto W = workbench();
      RepSpec s = parse_repspec(q, spec);
      const ClassFunction& f = rep_char(*W, s);
      out.emit({{"q", q}, {"spec", s.to_string()}, {"n", s.n}, {"degree", f.at_identity().to_string()},
                {"norm", inner_product(f, f).to_string()}, {"values", class_function_json(f)}});
      return kExitOk;
    }

    if (*bessel) {
      auto W = workbench();
      GenericSpec t = parse_genericspec(q, tau);
      const int size = t.k() * c;
      Mat g = matrix.empty() ? identity(size) : parse_matrix(matrix, q);
      if (g.rows != size) throw UsageError("matrix must be " + std::to_string(size) + " x " + std::to_string(size));
      if (!is_invertible(*W->field(), g)) throw UsageError("matrix is not invertible");
      auto B = bessel_speh(*W, t, c, static_cast<Elem>(psi));
      out.emit({{"q", q}, {"tau", t.to_string()}, {"c", c}, {"psi", psi}, {"g", matrix_json(g)},
                {"value", (*B)(g).to_string()}});
      return kExitOk;
    }

    if (*bs) {
      auto W = workbench();
      GenericSpec t = parse_genericspec(q, tau);
      ClassFunction B = cached_special_values(store, *W, t, c, static_cast<Elem>(psi));
      out.emit({{"q", q}, {"tau", t.to_string()}, {"c", c}, {"psi", psi},
                {"values", class_function_json(B)}});
      return kExitOk;
    }

    if (*gk) {
      auto W = workbench();
      RepSpec p = parse_repspec(q, pi);
      GenericSpec t = parse_genericspec(q, tau);
      GammaValue g = tilde ? gamma_gk_tilde(*W, p, t, static_cast<Elem>(psi))
                           : gamma_gk(*W, p, t, static_cast<Elem>(psi));
      out.emit(g.to_json());
      return kExitOk;
    }

    if (*gj) {
      auto W = workbench();
      RepSpec p = parse_repspec(q, pi);
      out.emit(gamma_gj_twisted(*W, p, twist, static_cast<Elem>(psi)).to_json());
      return kExitOk;
    }

    if (*kl) {
      auto W = workbench();
      std::vector<int> a = parse_int_list(alphas);
      json values = json::array();
      if (!matrix.empty()) {
        Mat h = parse_matrix(matrix, q);
        if (h.rows != c) throw UsageError("h must be " + std::to_string(c) + " x " + std::to_string(c));
        values.push_back({{"h", matrix_json(h)},
                          {"value", kl_sum(*W, {c, a, static_cast<Elem>(psi), h}).to_string()}});
      } else {
        ClassFunction K = kl_profile(*W, c, a, static_cast<Elem>(psi));
        values = class_function_json(K);
      }
      out.emit({{"q", q}, {"c", c}, {"alphas", a}, {"psi", psi}, {"values", values}});
      return kExitOk;
    }

    if (*verify) {
      check_q(cfg.q);
      cfg.psi = static_cast<Elem>(psi);
      cfg.class_translates = !no_class_translates;
      if (cfg.translate_budget > SuiteConfig{}.translate_budget && !override_budgets)
        throw UsageError("--translate-budget above the default needs --override-budgets");
      bool ok = true;
      json report = run_verify(suite, cfg, ok);
      out.emit(report);
      return ok ? kExitOk : kExitCheckFailed;
    }

    if (*cache_path) {
      std::cout << store.dir().string() << '\n';
      return kExitOk;
    }
    if (*cache_list) {
      json list = json::array();
      for (const auto& p : store.entries()) {
        json e = {{"file", p.filename().string()}};
        std::ifstream in(p);
        try {
          json entry = json::parse(in);
          const bool hash_ok = entry.value("hash", "") == content_hash(entry.at("payload"));
          e["schema"] = entry.value("schema", "");
          e["key"] = entry.value("key", json());
          e["status"] = entry.value("schema", "") != kCacheSchema ? "stale" : hash_ok ? "ok" : "corrupt";
        } catch (const std::exception&) {
          e["status"] = "corrupt";
        }
        list.push_back(e);
      }
      out.emit({{"dir", store.dir().string()}, {"entries", list}});
      return kExitOk;
    }
    if (*cache_clear) {
      std::cout << "removed " << store.clear() << " entries from " << store.dir().string() << '\n';
      return kExitOk;
    }
    if (*cache_warm) {
      auto W = workbench();
      json stored = json::array();
      for (int m = 1; m <= n; ++m) {
        const GroupContext& G = *W->group(m);
        store.store(classes_key(G), classes_payload(G));
        stored.push_back({{"n", m}, {"classes", G.num_classes()}});
      }
      out.emit({{"dir", store.dir().string()}, {"q", q}, {"stored", stored}});
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "refused: " << e.what() << "\n"
              << "sizing: q = " << q << ", c = " << c << ", n = " << n << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitOk;
}
