#include "gkb/cache.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

#include "gkb/whittaker.hpp"

namespace gkb {

namespace fs = std::filesystem;
using nlohmann::json;

nlohmann::json CacheKey::to_json() const {
  return {{"kind", kind}, {"q", q}, {"n", n}, {"modulus", modulus}, {"detail", detail},
          {"version", version}};
}

std::string CacheKey::file_name() const {
  std::string name = kind + "-q" + std::to_string(q) + "-n" + std::to_string(n);
  if (!detail.empty()) name += "-" + detail;
  for (char& ch : name) {
    const bool keep = std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_' || ch == '.';
    if (!keep) ch = '_';
  }
  return name + ".json";
}

std::string content_hash(const json& payload) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : payload.dump()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Cache::Cache(fs::path dir) : dir_(std::move(dir)) {}

fs::path Cache::default_dir() {
  if (const char* env = std::getenv(kCacheDirEnv); env && *env) return env;
  return ".gkbench-cache";
}

fs::path Cache::path_of(const CacheKey& key) const { return dir_ / key.file_name(); }

CacheLookup Cache::load(const CacheKey& key) const {
  CacheLookup out;
  const fs::path path = path_of(key);
  std::ifstream in(path);
  if (!in) return out;
  json entry;
  try {
    in >> entry;
  } catch (const json::exception& e) {
    out.status = CacheStatus::Corrupt;
    out.warning = "cache entry " + path.string() + " is not valid JSON; rebuilding";
    return out;
  }
  if (entry.value("schema", "") != kCacheSchema || entry.value("key", json()) != key.to_json()) {
    out.status = CacheStatus::VersionMismatch;
    return out;
  }
  if (!entry.contains("payload") || entry.value("hash", "") != content_hash(entry["payload"])) {
    out.status = CacheStatus::Corrupt;
    out.warning = "cache entry " + path.string() + " failed its content hash; rebuilding";
    return out;
  }
  out.status = CacheStatus::Hit;
  out.payload = std::move(entry["payload"]);
  return out;
}

void Cache::store(const CacheKey& key, const json& payload) const {
  fs::create_directories(dir_);
  json entry = {{"schema", kCacheSchema}, {"key", key.to_json()}, {"hash", content_hash(payload)},
                {"payload", payload}};
  const fs::path path = path_of(key);
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
    out << entry.dump(1) << '\n';
    if (!out) throw std::runtime_error("write failed for cache file " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::vector<fs::path> Cache::entries() const {
  std::vector<fs::path> out;
  if (!fs::exists(dir_)) return out;
  for (const auto& e : fs::directory_iterator(dir_))
    if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

size_t Cache::clear() const {
  size_t n = 0;
  for (const auto& p : entries()) n += fs::remove(p);
  return n;
}

CacheKey classes_key(const GroupContext& G) {
  CacheKey key;
  key.kind = "classes";
  key.q = G.field().q();
  key.n = G.n();
  key.modulus = G.field().modulus_string();
  return key;
}

namespace {

json mat_json(const Mat& A) {
  json rows = json::array();
  for (int i = 0; i < A.rows; ++i) {
    json row = json::array();
    for (int j = 0; j < A.cols; ++j) row.push_back(A.at(i, j));
    rows.push_back(row);
  }
  return rows;
}

Mat mat_from_json(const json& j) {
  const int r = static_cast<int>(j.size());
  const int c = r ? static_cast<int>(j[0].size()) : 0;
  Mat A(r, c);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < c; ++k) A.at(i, k) = j[i][k].get<Elem>();
  return A;
}

}  // namespace

json classes_payload(const GroupContext& G) {
  json classes = json::array();
  for (const auto& c : G.classes()) {
    classes.push_back({{"key", c.key}, {"label", c.label.to_string(G.field())},
                       {"size", c.size.get_str()}, {"centralizer", c.centralizer.get_str()},
                       {"rep", mat_json(c.rep)}});
  }
  return {{"q", G.field().q()}, {"n", G.n()}, {"order", G.order().get_str()}, {"classes", classes}};
}

std::vector<CachedClass> classes_from_payload(const json& payload) {
  std::vector<CachedClass> out;
  for (const auto& c : payload.at("classes")) {
    out.push_back({c.at("key").get<std::string>(), c.at("label").get<std::string>(),
                   mpz_class(c.at("size").get<std::string>()),
                   mpz_class(c.at("centralizer").get<std::string>()), mat_from_json(c.at("rep"))});
  }
  return out;
}

CacheKey special_values_key(const GroupContext& G, const GenericSpec& tau, Elem psi) {
  CacheKey key = classes_key(G);
  key.kind = "special-values";
  key.detail = tau.to_string() + "-psi" + std::to_string(psi);
  return key;
}

json class_function_payload(const ClassFunction& f) {
  const GroupContext& G = *f.group();
  json values = json::array();
  for (size_t i = 0; i < f.size(); ++i) values.push_back({{"class", G.cls(i).key}, {"value", f[i].to_json()}});
  return {{"n", G.n()}, {"values", values}};
}

ClassFunction class_function_from_payload(const GroupPtr& G, const CycloPtr& C, const json& payload) {
  const auto& values = payload.at("values");
  if (values.size() != G->num_classes()) throw std::runtime_error("cached class function has the wrong length");
  ClassFunction f(G, C);
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i].at("class").get<std::string>() != G->cls(i).key)
      throw std::runtime_error("cached class function uses a different class order");
    f.set(i, ScaledCyclotomic::from_json(C, values[i].at("value")));
  }
  return f;
}

ClassFunction cached_special_values(const Cache& cache, Workbench& W, const GenericSpec& tau, int c,
                                    Elem psi) {
  const GroupPtr& G = W.group(c);
  const CacheKey key = special_values_key(*G, tau, psi);
  CacheLookup hit = cache.load(key);
  if (!hit.warning.empty()) std::cerr << "warning: " << hit.warning << '\n';
  if (hit.status == CacheStatus::Hit) {
    try {
      return class_function_from_payload(G, W.cyclo(), hit.payload);
    } catch (const std::exception& e) {
      std::cerr << "warning: " << e.what() << "; rebuilding\n";
    }
  }
  const ClassFunction& B = special_value_profile(W, tau, c, psi);
  cache.store(key, class_function_payload(B));
  return B;
}

}  // namespace gkb
