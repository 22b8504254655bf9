// Check reports shared by the verification suites and the CLI.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace gkb {

enum class Status { Pass, Fail, Skip };

const char* status_name(Status s);

struct CheckCase {
  std::string name;
  Status status = Status::Pass;
  std::string witness;
  std::string lhs, rhs;
};

struct CheckReport {
  std::string suite;
  nlohmann::json params = nlohmann::json::object();
  std::vector<CheckCase> cases;
  std::vector<std::string> notes;

  void pass(std::string name) { cases.push_back({std::move(name), Status::Pass, {}, {}, {}}); }
  void fail(std::string name, std::string witness, std::string lhs = {}, std::string rhs = {}) {
    cases.push_back({std::move(name), Status::Fail, std::move(witness), std::move(lhs), std::move(rhs)});
  }
  void skip(std::string name, std::string reason) {
    cases.push_back({std::move(name), Status::Skip, std::move(reason), {}, {}});
  }
  void check(std::string name, bool ok, const std::string& lhs, const std::string& rhs);
  void append(const CheckReport& other, const std::string& prefix = {});

  size_t count(Status s) const;
  bool ok() const { return count(Status::Fail) == 0; }
  std::string summary() const;
  nlohmann::json to_json() const;
};

}  // namespace gkb
