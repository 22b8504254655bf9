// Named verification suites over fixed grids, shared by the CLI and the acceptance run.
#pragma once

#include <string>
#include <vector>

#include "gkb/field.hpp"
#include "gkb/report.hpp"

namespace gkb {

struct SuiteConfig {
  int q = 3;
  int max_n = 4;  // largest GL_n touched, n = k c for Bessel-Speh data
  int k = 0;      // 0 means every k in the grid
  int c = 0;      // 0 means every c in the grid
  uint64_t seed = 1;
  Elem psi = 1;
  int random_translates = 8;
  bool class_translates = true;
  uint64_t translate_budget = 100'000'000;

  nlohmann::json to_json() const;
};

// Every suite except "all", in the order "all" runs them.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

CheckReport run_suite(const std::string& name, const SuiteConfig& cfg);
// {"suites": [...], "status", "counts"} for "all", otherwise the single report.
nlohmann::json run_verify(const std::string& name, const SuiteConfig& cfg, bool& ok);

}  // namespace gkb
