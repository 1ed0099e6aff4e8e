#pragma once
// Content-addressed result cache: <dir>/<key[0..1]>/<key>.json, key = SHA-256 of the
// canonical key material. Entries are written once through a temp file and rename.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace gcx::cli {

std::string sha256_hex(const std::string& data);

struct CacheEntry {
    std::string key;
    nlohmann::ordered_json material;  // what the key hashes, includes the code version
    std::string payload;              // exact report text
    nlohmann::ordered_json meta;      // creation time, budget; not hashed
    std::string path;
};

class Cache {
public:
    explicit Cache(std::string dir) : dir_(std::move(dir)) {}

    static std::string key_of(const nlohmann::ordered_json& material);
    std::optional<CacheEntry> get(const nlohmann::ordered_json& material) const;
    // No-op when the entry exists: entries are immutable.
    void put(const nlohmann::ordered_json& material, const std::string& payload, const nlohmann::ordered_json& meta) const;
    std::vector<CacheEntry> entries() const;  // sorted by key; unreadable files are reported with empty payload
    bool exists() const;
    const std::string& dir() const { return dir_; }

private:
    std::string dir_;
    std::string path_of(const std::string& key) const;
};

}  // namespace gcx::cli
