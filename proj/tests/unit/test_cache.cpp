#include <doctest.h>

#include <unistd.h>

#include <fstream>

#include "gkb/cache.hpp"
#include "gkb/suites.hpp"
#include "gkb/whittaker.hpp"

using namespace gkb;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("gkb-unit-" + std::to_string(::getpid()));
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("class list round trip keeps the order") {
  TempDir tmp;
  Cache cache(tmp.path);
  auto W = Workbench::get(3);
  const GroupContext& G = *W->group(4);
  const auto key = classes_key(G);
  CHECK(cache.load(key).status == CacheStatus::Miss);
  cache.store(key, classes_payload(G));
  auto hit = cache.load(key);
  REQUIRE(hit.status == CacheStatus::Hit);
  auto classes = classes_from_payload(hit.payload);
  REQUIRE(classes.size() == G.num_classes());
  for (size_t i = 0; i < classes.size(); ++i) {
    CHECK(classes[i].key == G.cls(i).key);
    CHECK(classes[i].size == G.cls(i).size);
    CHECK(classes[i].rep == G.cls(i).rep);
  }
  CHECK(cache.entries().size() == 1);
  for (const auto& e : fs::directory_iterator(tmp.path))
    CHECK(e.path().string().find(".tmp.") == std::string::npos);
}

TEST_CASE("version bump misses") {
  TempDir tmp;
  Cache cache(tmp.path);
  auto W = Workbench::get(2);
  auto key = classes_key(*W->group(2));
  cache.store(key, classes_payload(*W->group(2)));
  key.version = "9.9.9";
  auto r = cache.load(key);
  CHECK(r.status != CacheStatus::Hit);
  CHECK(r.status != CacheStatus::Corrupt);
}

TEST_CASE("hash mismatch misses with a warning") {
  TempDir tmp;
  Cache cache(tmp.path);
  auto W = Workbench::get(2);
  const auto key = classes_key(*W->group(2));
  cache.store(key, classes_payload(*W->group(2)));
  nlohmann::json entry;
  std::ifstream(cache.path_of(key)) >> entry;
  entry["payload"]["classes"][0]["size"] = "12345";
  std::ofstream(cache.path_of(key)) << entry.dump();
  auto r = cache.load(key);
  CHECK(r.status == CacheStatus::Corrupt);
  CHECK_FALSE(r.warning.empty());
  std::ofstream(cache.path_of(key)) << "{ not json";
  CHECK(cache.load(key).status == CacheStatus::Corrupt);
  CHECK(cache.clear() == 1);
  CHECK(cache.entries().empty());
}

TEST_CASE("special values survive the cache") {
  TempDir tmp;
  Cache cache(tmp.path);
  auto W = Workbench::get(3);
  auto tau = parse_genericspec(3, "cusp2:1");
  auto first = cached_special_values(cache, *W, tau, 1, 1);
  CHECK(cache.entries().size() == 1);
  auto second = cached_special_values(cache, *W, tau, 1, 1);
  CHECK(first == second);
  CHECK(second == special_value_profile(*W, tau, 1));
  auto json = class_function_payload(first);
  CHECK(class_function_from_payload(first.group(), W->cyclo(), json) == first);
}

TEST_CASE("content hash is stable and sensitive") {
  nlohmann::json a = {{"x", 1}, {"y", "2"}};
  nlohmann::json b = {{"y", "2"}, {"x", 1}};
  CHECK(content_hash(a) == content_hash(b));
  CHECK(content_hash(a).size() == 16);
  b["x"] = 2;
  CHECK(content_hash(a) != content_hash(b));
}

TEST_CASE("verify reports are deterministic") {
  SuiteConfig cfg;
  cfg.q = 2;
  cfg.max_n = 2;
  bool ok1 = false, ok2 = false;
  auto a = run_verify("all", cfg, ok1).dump();
  auto b = run_verify("all", cfg, ok2).dump();
  CHECK(ok1);
  CHECK(ok2);
  CHECK(a == b);
  CHECK(is_suite("gk-fe"));
  CHECK_FALSE(is_suite("all-of-it"));
  CHECK_THROWS(run_suite("nope", cfg));
}
