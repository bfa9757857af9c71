#include "wbr/cache.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

namespace wbr {

namespace fs = std::filesystem;

std::string cache_directory() {
    const char* env = std::getenv("WBR_CACHE_DIR");
    return env && *env ? std::string(env) : std::string(".wbr-cache");
}

std::optional<nlohmann::json> cache_load(const std::string& key) {
    fs::path path = fs::path(cache_directory()) / (key + ".json");
    std::ifstream in(path);
    if (!in) return std::nullopt;
    nlohmann::json doc = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) return std::nullopt;  // partial or corrupt file: recompute
    return doc;
}

void cache_store(const std::string& key, const nlohmann::json& doc) {
    std::error_code ec;
    fs::path dir(cache_directory());
    fs::create_directories(dir, ec);
    fs::path tmp = dir / (key + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream out(tmp);
        if (!out) return;  // cache is best-effort
        out << doc.dump(1);
    }
    fs::rename(tmp, dir / (key + ".json"), ec);
    if (ec) fs::remove(tmp, ec);
}

}  // namespace wbr
