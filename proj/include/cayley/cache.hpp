#pragma once

#include <optional>
#include <string>

namespace cayley {

/// Canonical cache key: every parameter that can change a row's bytes is
/// part of the string, plus the schema version so format bumps invalidate
/// old entries. Equal parameters give equal keys.
std::string make_cache_key(const std::string& command, std::int64_t n, std::int64_t k,
                           const std::string& parity, double a, double b,
                           const std::string& method, double tolerance, std::uint64_t seed);

/// FNV-1a 64-bit digest, in hex; the cache filename.
std::string key_digest(const std::string& canonical);

/// One file per key under `dir`. Files store the canonical key on the first
/// line (verified on read, so digest collisions cannot alias) and the
/// payload after it. Writes go through a temp file and rename.
class RecordCache {
public:
    RecordCache(std::string dir, bool enabled);

    /// Resolution order for the directory: explicit flag, then
    /// CAYLEY_CACHE_DIR, then ./.cayley-cache.
    static std::string resolve_dir(const std::string& flag_value);

    bool enabled() const noexcept { return enabled_; }
    const std::string& dir() const noexcept { return dir_; }

    std::optional<std::string> get(const std::string& key) const;
    void put(const std::string& key, const std::string& payload) const;

private:
    std::string dir_;
    bool enabled_;
};

} // namespace cayley
