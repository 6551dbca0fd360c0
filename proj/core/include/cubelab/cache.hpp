#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cubelab {

// Versioned binary key/value store: one directory per artifact kind, file
// name = hex of a stable hash of the key, each file self-describing.  Stale
// versions are ignored, never reused.  An empty directory disables caching.
class DiskCache {
  public:
    explicit DiskCache(std::string dir) : dir_(std::move(dir)) {}

    // Configured from CUBELAB_CACHE_DIR (unset -> disabled).
    static DiskCache& global();

    bool enabled() const { return !dir_.empty(); }
    void set_dir(std::string dir) { dir_ = std::move(dir); }
    const std::string& dir() const { return dir_; }

    std::optional<std::vector<uint8_t>> load(const std::string& kind,
                                             const std::string& key,
                                             uint32_t version) const;
    void store(const std::string& kind, const std::string& key, uint32_t version,
               const std::vector<uint8_t>& payload) const;

    // statistics for provenance reporting
    static uint64_t hits();
    static uint64_t misses();

  private:
    std::string path_for(const std::string& kind, const std::string& key) const;
    std::string dir_;
};

uint64_t fnv1a64(const std::string& s);

}  // namespace cubelab
