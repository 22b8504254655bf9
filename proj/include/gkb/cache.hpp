// On-disk JSON cache for group data and computed tables.
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gkb/characters.hpp"
#include "gkb/group.hpp"
#include <json.hpp>

namespace gkb {

inline constexpr const char* kCacheSchema = "gkbench-cache/1";
inline constexpr const char* kArtifactVersion = "0.1.0";
inline constexpr const char* kCacheDirEnv = "GKBENCH_CACHE_DIR";

struct CacheKey {
  std::string kind;       // "classes", "special-values", ...
  int q = 0;
  int n = 0;
  std::string modulus;    // field modulus over F_p
  std::string detail;     // spec strings and twists, empty when unused
  std::string version = kArtifactVersion;

  nlohmann::json to_json() const;
  std::string file_name() const;
};

// 64-bit FNV-1a of the compact JSON dump, as 16 hex digits.
std::string content_hash(const nlohmann::json& payload);

enum class CacheStatus { Hit, Miss, VersionMismatch, Corrupt };

struct CacheLookup {
  CacheStatus status = CacheStatus::Miss;
  nlohmann::json payload;
  std::string warning;
};

class Cache {
 public:
  explicit Cache(std::filesystem::path dir);
  // $GKBENCH_CACHE_DIR, else .gkbench-cache in the working directory.
  static std::filesystem::path default_dir();

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path_of(const CacheKey& key) const;

  CacheLookup load(const CacheKey& key) const;
  // Writes to a temporary file in the cache directory and renames it into place.
  void store(const CacheKey& key, const nlohmann::json& payload) const;

  std::vector<std::filesystem::path> entries() const;
  size_t clear() const;

 private:
  std::filesystem::path dir_;
};

CacheKey classes_key(const GroupContext& G);
nlohmann::json classes_payload(const GroupContext& G);
// Class list, sizes and representatives as stored by classes_payload.
struct CachedClass {
  std::string key, label;
  mpz_class size, centralizer;
  Mat rep;
};
std::vector<CachedClass> classes_from_payload(const nlohmann::json& payload);

CacheKey special_values_key(const GroupContext& G, const GenericSpec& tau, Elem psi);
nlohmann::json class_function_payload(const ClassFunction& f);
ClassFunction class_function_from_payload(const GroupPtr& G, const CycloPtr& C,
                                          const nlohmann::json& payload);

// Cached special value profile; computes and stores on a miss. Warnings go to stderr.
ClassFunction cached_special_values(const Cache& cache, Workbench& W, const GenericSpec& tau, int c,
                                    Elem psi);

}  // namespace gkb
