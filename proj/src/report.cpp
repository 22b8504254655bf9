#include "gkb/report.hpp"

namespace gkb {

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skip: return "skip";
  }
  return "?";
}

void CheckReport::check(std::string name, bool ok, const std::string& lhs, const std::string& rhs) {
  if (ok) {
    pass(std::move(name));
  } else {
    fail(std::move(name), "lhs != rhs", lhs, rhs);
  }
}

void CheckReport::append(const CheckReport& other, const std::string& prefix) {
  for (const auto& c : other.cases) {
    CheckCase d = c;
    if (!prefix.empty()) d.name = prefix + "/" + d.name;
    cases.push_back(std::move(d));
  }
  for (const auto& n : other.notes) notes.push_back(prefix.empty() ? n : prefix + ": " + n);
}

size_t CheckReport::count(Status s) const {
  size_t n = 0;
  for (const auto& c : cases) n += c.status == s;
  return n;
}

std::string CheckReport::summary() const {
  return suite + ": " + std::to_string(count(Status::Pass)) + " pass, " +
         std::to_string(count(Status::Fail)) + " fail, " + std::to_string(count(Status::Skip)) +
         " skip";
}

nlohmann::json CheckReport::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["params"] = params;
  j["status"] = ok() ? "pass" : "fail";
  j["counts"] = {{"pass", count(Status::Pass)},
                 {"fail", count(Status::Fail)},
                 {"skip", count(Status::Skip)}};
  auto arr = nlohmann::json::array();
  for (const auto& c : cases) {
    nlohmann::json e = {{"name", c.name}, {"status", status_name(c.status)}};
    if (!c.witness.empty()) e["witness"] = c.witness;
    if (!c.lhs.empty()) e["lhs"] = c.lhs;
    if (!c.rhs.empty()) e["rhs"] = c.rhs;
    arr.push_back(std::move(e));
  }
  j["cases"] = std::move(arr);
  if (!notes.empty()) j["notes"] = notes;
  return j;
}

}  // namespace gkb
