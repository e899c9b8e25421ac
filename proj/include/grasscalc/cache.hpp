/* Process-wide memo for expensive products, with an optional persistent JSONL
 * layer rooted at the directory named by GRASSCALC_CACHE_DIR.  Disk entries
 * are append-only and duplicate-tolerant; corrupt lines are skipped with a
 * warning.  The in-memory layer is always active. */
#pragma once

#include <optional>
#include <string>

namespace grasscalc::cache {

std::optional<std::string> get(const std::string& key);
void put(const std::string& key, const std::string& value);

/* Disable or enable the persistent layer (the in-memory layer stays on). */
void set_disk_enabled(bool enabled);
bool disk_enabled();

/* Drop the in-memory layer and re-read GRASSCALC_CACHE_DIR. */
void reset();

}  // namespace grasscalc::cache
