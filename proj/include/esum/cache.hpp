#pragma once

/**
 * Process-wide value memoization plus its on-disk persistence.
 *
 * Every evaluator stores finished results under a canonical string key; a
 * later identical request is served from memory with terms_used = 0. The
 * cache file is a small JSON document mapping canonical keys to
 * [re, im, abs_err] triples; loading it warms the memo so repeated runs skip
 * series summation entirely.
 */

#include <map>
#include <optional>
#include <string>

#include "esum/common.hpp"

namespace esum {

namespace memo {

/// Thread-safe lookup. Hits only when the stored absolute error meets
/// `need_tol`; returned entries report terms_used = 0.
std::optional<ValueWithError> lookup(const std::string& key, double need_tol);

/// Inserts or overwrites one entry (last writer wins; entries for a given
/// key are deterministic, so the race is benign).
void store(const std::string& key, const ValueWithError& v);

std::map<std::string, ValueWithError> snapshot();
void preload(const std::map<std::string, ValueWithError>& entries);
void clear();

}  // namespace memo

namespace cache {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kDefaultFileName = "./.eulersum-cache.json";
inline constexpr const char* kEnvVar = "EULERSUM_CACHE";

/// Explicit path if nonempty, else $EULERSUM_CACHE, else the default name.
std::string resolve_path(const std::string& explicit_path = "");

/**
 * Loads a cache file into the process memo. An absent file is a normal cold
 * start (returns true, empty warning). A corrupt file or a schema-version
 * mismatch never aborts: the memo stays cold and a warning is reported
 * (returns false).
 */
bool load_into_memo(const std::string& path, std::string* warning = nullptr);

/**
 * Atomically persists the current memo snapshot: writes a temporary file in
 * the same directory and renames it over the target. Returns false with a
 * warning on IO failure.
 */
bool save_from_memo(const std::string& path, std::string* warning = nullptr);

}  // namespace cache

}  // namespace esum
