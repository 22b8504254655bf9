// Acceptance run: one PASS/FAIL line per criterion. Full JSON reports are written to
// acceptance_reports/ in the working directory.
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <sys/wait.h>

#include "gkb/suites.hpp"

#ifndef GKBENCH_PATH
#error "GKBENCH_PATH must point at the gkbench executable"
#endif

using namespace gkb;
namespace fs = std::filesystem;

namespace {

const fs::path kReportDir = "acceptance_reports";

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Tally {
  size_t pass = 0, fail = 0, gated = 0, budget = 0;
  std::vector<std::string> failures;

  void add(const CheckReport& r) {
    for (const auto& c : r.cases) {
      if (c.status == Status::Pass) {
        ++pass;
      } else if (c.status == Status::Fail) {
        ++fail;
        if (failures.size() < 3) failures.push_back(r.suite + ": " + c.name + " [" + c.witness + "]");
      } else if (c.witness.rfind("budget", 0) == 0) {
        ++budget;
      } else {
        ++gated;
      }
    }
  }
  std::string summary() const {
    std::ostringstream s;
    s << pass << " pass, " << fail << " fail, " << gated << " skipped by hypothesis";
    if (budget) s << ", " << budget << " beyond budget";
    for (const auto& f : failures) s << "; " << f;
    return s.str();
  }
};

CheckReport run(const std::string& suite, int q, int max_n, const std::string& tag) {
  SuiteConfig cfg;
  cfg.q = q;
  cfg.max_n = max_n;
  CheckReport r = run_suite(suite, cfg);
  std::ofstream(kReportDir / (tag + "-" + suite + "-q" + std::to_string(q) + ".json"))
      << r.to_json().dump(2) << '\n';
  return r;
}

// Runs the suites over (q, max_n) pairs and requires zero failures and zero budget skips.
Outcome suites_outcome(const std::string& tag, const std::vector<std::string>& suites,
                       const std::vector<std::pair<int, int>>& grid) {
  Tally t;
  for (const auto& [q, max_n] : grid)
    for (const auto& s : suites) t.add(run(s, q, max_n, tag));
  Outcome o;
  o.ok = t.fail == 0 && t.pass > 0 && t.budget == 0;
  o.detail = t.summary();
  return o;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  const fs::path dir = kReportDir / "determinism";
  fs::create_directories(dir);
  std::string outputs[2];
  for (int i = 0; i < 2; ++i) {
    const fs::path out = dir / ("run" + std::to_string(i) + ".json");
    const std::string cmd = std::string("GKBENCH_CACHE_DIR=") + (dir / "cache").string() + " " +
                            GKBENCH_PATH + " --output " + out.string() + " verify all --q 3 --seed 1";
    const int rc = std::system(cmd.c_str());
    if (rc != 0 && WEXITSTATUS(rc) != 1) return {false, "gkbench exited with status " + std::to_string(rc)};
    outputs[i] = read_file(out);
  }
  if (outputs[0].empty()) return {false, "empty report"};
  if (outputs[0] != outputs[1]) return {false, "reports differ"};
  return {true, "two runs, " + std::to_string(outputs[0].size()) + " identical bytes"};
}

}  // namespace

int main() {
  fs::create_directories(kReportDir);
  struct Criterion {
    int id;
    std::string title;
    double limit_s;  // 0 means no runtime bound
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "class enumeration", 30,
       [] { return suites_outcome("c1", {"infra"}, {{2, 4}, {3, 4}, {5, 2}}); }},
      {2, "character sanity", 60,
       [] { return suites_outcome("c2", {"characters"}, {{2, 4}, {3, 4}}); }},
      {3, "BS(1) = 1 and support of BS", 600,
       [] { return suites_outcome("c3", {"whittaker"}, {{2, 6}, {3, 6}}); }},
      {4, "special values through Kloosterman sums", 0,
       [] { return suites_outcome("c4", {"bs-kloosterman"}, {{2, 6}, {3, 6}}); }},
      {5, "Kloosterman multiplicativity", 0,
       [] { return suites_outcome("c5", {"kl-mult"}, {{3, 2}, {5, 2}, {2, 3}}); }},
      {6, "Godement-Jacquet multiplicativity and Macdonald equation", 0,
       [] {
         Outcome a = suites_outcome("c6", {"gj-mult"}, {{2, 2}, {3, 2}, {4, 2}, {5, 2}});
         Outcome b = suites_outcome("c6", {"gj-fe"}, {{3, 2}});
         return Outcome{a.ok && b.ok, "multiplicativity: " + a.detail + " | functional equation: " + b.detail};
       }},
      {7, "Ginzburg-Kaplan multiplicativity", 0,
       [] {
         return suites_outcome("c7", {"gk-mult1", "gk-mult2", "convolution", "unipotent-average"},
                               {{3, 6}, {2, 6}});
       }},
      {8, "Kaplan functional equation, norm and contragredient", 1800,
       [] {
         return suites_outcome("c8", {"gk-fe", "gk-norm", "contragredient"}, {{2, 6}, {3, 6}});
       }},
      {9, "converse scan", 0,
       [] { return suites_outcome("c9", {"converse"}, {{3, 2}, {5, 2}}); }},
      {10, "special values at c = 2 for cuspidal tau", 300,
       [] { return suites_outcome("c10", {"appendix-c2"}, {{3, 4}}); }},
      {11, "byte-identical reports", 0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream time;
    time.precision(1);
    time << std::fixed << secs << " s";
    if (c.limit_s > 0 && secs > c.limit_s) {
      o.ok = false;
      o.detail += "; runtime " + time.str() + " exceeds " + std::to_string(static_cast<int>(c.limit_s)) + " s";
    }
    failed += !o.ok;
    std::cout << "CRITERION " << c.id << " " << (o.ok ? "PASS" : "FAIL") << " " << c.title << " ("
              << time.str() << "): " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << " of " << criteria.size() << " criteria pass" << std::endl;
  return failed ? 1 : 0;
}
