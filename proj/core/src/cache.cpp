#include "cubelab/cache.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>

namespace cubelab {

namespace fs = std::filesystem;

namespace {
std::atomic<uint64_t> g_hits{0}, g_misses{0};
constexpr char kMagic[4] = {'C', 'L', 'B', 'C'};
}  // namespace

uint64_t fnv1a64(const std::string& s) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

DiskCache& DiskCache::global() {
    static DiskCache cache = [] {
        const char* env = std::getenv("CUBELAB_CACHE_DIR");
        return DiskCache(env ? env : "");
    }();
    return cache;
}

std::string DiskCache::path_for(const std::string& kind, const std::string& key) const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)fnv1a64(key));
    return dir_ + "/" + kind + "/" + buf + ".bin";
}

std::optional<std::vector<uint8_t>> DiskCache::load(const std::string& kind,
                                                    const std::string& key,
                                                    uint32_t version) const {
    if (!enabled()) return std::nullopt;
    std::ifstream in(path_for(kind, key), std::ios::binary);
    if (!in) {
        ++g_misses;
        return std::nullopt;
    }
    char magic[4];
    uint32_t ver = 0;
    uint64_t keylen = 0;
    in.read(magic, 4);
    in.read(reinterpret_cast<char*>(&ver), sizeof ver);
    in.read(reinterpret_cast<char*>(&keylen), sizeof keylen);
    if (!in || std::memcmp(magic, kMagic, 4) != 0 || ver != version) {
        ++g_misses;
        return std::nullopt;
    }
    std::string stored_key(keylen, '\0');
    in.read(stored_key.data(), std::streamsize(keylen));
    if (!in || stored_key != key) {
        ++g_misses;
        return std::nullopt;
    }
    std::vector<uint8_t> payload((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
    ++g_hits;
    return payload;
}

void DiskCache::store(const std::string& kind, const std::string& key, uint32_t version,
                      const std::vector<uint8_t>& payload) const {
    if (!enabled()) return;
    fs::create_directories(dir_ + "/" + kind);
    std::string path = path_for(kind, key);
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) return;
        uint64_t keylen = key.size();
        out.write(kMagic, 4);
        out.write(reinterpret_cast<const char*>(&version), sizeof version);
        out.write(reinterpret_cast<const char*>(&keylen), sizeof keylen);
        out.write(key.data(), std::streamsize(key.size()));
        out.write(reinterpret_cast<const char*>(payload.data()),
                  std::streamsize(payload.size()));
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
}

uint64_t DiskCache::hits() { return g_hits.load(); }
uint64_t DiskCache::misses() { return g_misses.load(); }

}  // namespace cubelab
