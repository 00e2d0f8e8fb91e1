#include "esum/cache.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>

#include "json.hpp"

namespace esum {

namespace memo {

namespace {
std::mutex& mu() {
  static std::mutex m;
  return m;
}
std::map<std::string, ValueWithError>& table() {
  static std::map<std::string, ValueWithError> t;
  return t;
}
}  // namespace

std::optional<ValueWithError> lookup(const std::string& key, double need_tol) {
  std::lock_guard<std::mutex> lock(mu());
  auto it = table().find(key);
  if (it == table().end()) return std::nullopt;
  if (!(it->second.abs_err <= need_tol)) return std::nullopt;
  ValueWithError out = it->second;
  out.terms_used = 0;
  return out;
}

void store(const std::string& key, const ValueWithError& v) {
  if (!std::isfinite(v.value.real()) || !std::isfinite(v.value.imag()) ||
      !std::isfinite(v.abs_err))
    return;  // never memoize a non-finite result
  std::lock_guard<std::mutex> lock(mu());
  table()[key] = v;
}

std::map<std::string, ValueWithError> snapshot() {
  std::lock_guard<std::mutex> lock(mu());
  return table();
}

void preload(const std::map<std::string, ValueWithError>& entries) {
  std::lock_guard<std::mutex> lock(mu());
  for (const auto& [k, v] : entries) table()[k] = v;
}

void clear() {
  std::lock_guard<std::mutex> lock(mu());
  table().clear();
}

}  // namespace memo

namespace cache {

std::string resolve_path(const std::string& explicit_path) {
  if (!explicit_path.empty()) return explicit_path;
  if (const char* env = std::getenv(kEnvVar); env && *env) return env;
  return kDefaultFileName;
}

bool load_into_memo(const std::string& path, std::string* warning) {
  if (warning) warning->clear();
  std::ifstream in(path, std::ios::binary);
  if (!in) return true;  // absent file: normal cold start

  nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
  auto cold = [&](const std::string& why) {
    if (warning) *warning = "cache file '" + path + "' ignored: " + why;
    return false;
  };
  if (doc.is_discarded()) return cold("not valid JSON");
  if (!doc.is_object() || !doc.contains("schema_version") ||
      !doc["schema_version"].is_number_integer())
    return cold("missing schema_version");
  if (doc["schema_version"].get<int>() != kSchemaVersion)
    return cold("schema version mismatch");
  if (!doc.contains("entries") || !doc["entries"].is_object())
    return cold("missing entries object");

  std::map<std::string, ValueWithError> entries;
  for (const auto& [key, val] : doc["entries"].items()) {
    if (!val.is_array() || val.size() != 3 || !val[0].is_number() ||
        !val[1].is_number() || !val[2].is_number())
      return cold("malformed entry for key '" + key + "'");
    ValueWithError v;
    v.value = {val[0].get<double>(), val[1].get<double>()};
    v.abs_err = val[2].get<double>();
    if (!std::isfinite(v.value.real()) || !std::isfinite(v.value.imag()) ||
        !std::isfinite(v.abs_err))
      return cold("non-finite entry for key '" + key + "'");
    v.terms_used = 0;
    entries[key] = v;
  }
  memo::preload(entries);
  return true;
}

bool save_from_memo(const std::string& path, std::string* warning) {
  if (warning) warning->clear();
  nlohmann::json entries = nlohmann::json::object();
  for (const auto& [key, v] : memo::snapshot())
    entries[key] = {v.value.real(), v.value.imag(), v.abs_err};
  nlohmann::json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["entries"] = entries;

  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      if (warning) *warning = "cannot open '" + tmp + "' for writing";
      return false;
    }
    out << doc.dump(1) << '\n';
    if (!out.good()) {
      if (warning) *warning = "write to '" + tmp + "' failed";
      return false;
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    if (warning) *warning = "rename to '" + path + "' failed";
    return false;
  }
  return true;
}

}  // namespace cache

}  // namespace esum
