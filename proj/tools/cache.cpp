#include "cache.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace fs = std::filesystem;

namespace gcx::cli {

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr)) throw std::runtime_error("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string s;
    for (unsigned i = 0; i < len; ++i) {
        s += hex[md[i] >> 4];
        s += hex[md[i] & 15];
    }
    return s;
}

std::string Cache::key_of(const nlohmann::ordered_json& material) { return sha256_hex(material.dump()); }

std::string Cache::path_of(const std::string& key) const { return (fs::path(dir_) / key.substr(0, 2) / (key + ".json")).string(); }

bool Cache::exists() const { return fs::is_directory(dir_); }

namespace {

std::optional<CacheEntry> read_entry(const std::string& path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::stringstream ss;
    ss << in.rdbuf();
    CacheEntry e;
    e.path = path;
    e.key = fs::path(path).stem().string();
    try {
        auto j = nlohmann::ordered_json::parse(ss.str());
        e.material = j.at("material");
        e.payload = j.at("payload").get<std::string>();
        e.meta = j.value("meta", nlohmann::ordered_json::object());
    } catch (const nlohmann::json::exception&) {
        e.payload.clear();
        e.material = nullptr;
    }
    return e;
}

}  // namespace

std::optional<CacheEntry> Cache::get(const nlohmann::ordered_json& material) const {
    auto key = key_of(material);
    auto e = read_entry(path_of(key));
    if (!e || e->material.is_null() || e->material != material) return std::nullopt;
    return e;
}

void Cache::put(const nlohmann::ordered_json& material, const std::string& payload, const nlohmann::ordered_json& meta) const {
    auto key = key_of(material);
    fs::path target = path_of(key);
    if (fs::exists(target)) return;
    fs::create_directories(target.parent_path());
    nlohmann::ordered_json j;
    j["material"] = material;
    j["payload"] = payload;
    j["meta"] = meta;
    std::random_device rd;
    std::ostringstream tmpname;
    tmpname << target.string() << ".tmp." << std::hex << rd() << std::hash<std::thread::id>{}(std::this_thread::get_id());
    {
        std::ofstream out(tmpname.str(), std::ios::binary);
        if (!out) throw std::runtime_error("cannot write cache entry " + tmpname.str());
        out << j.dump(1) << '\n';
        if (!out.flush()) throw std::runtime_error("cannot write cache entry " + tmpname.str());
    }
    std::error_code ec;
    fs::rename(tmpname.str(), target, ec);
    if (ec) {
        fs::remove(tmpname.str());
        throw std::runtime_error("cannot publish cache entry " + target.string() + ": " + ec.message());
    }
}

std::vector<CacheEntry> Cache::entries() const {
    std::vector<CacheEntry> out;
    if (!exists()) return out;
    for (auto& p : fs::recursive_directory_iterator(dir_)) {
        if (!p.is_regular_file() || p.path().extension() != ".json") continue;
        if (auto e = read_entry(p.path().string())) out.push_back(*e);
    }
    std::sort(out.begin(), out.end(), [](const CacheEntry& a, const CacheEntry& b) { return a.key < b.key; });
    return out;
}

}  // namespace gcx::cli
