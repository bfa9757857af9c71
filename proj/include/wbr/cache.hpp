#pragma once

#include <json.hpp>

#include <optional>
#include <string>

namespace wbr {

// Content-addressed JSON cache on disk; directory from WBR_CACHE_DIR,
// default ".wbr-cache". Writes are atomic (write temp + rename).
std::string cache_directory();
std::optional<nlohmann::json> cache_load(const std::string& key);
void cache_store(const std::string& key, const nlohmann::json& doc);

}  // namespace wbr
