#include "cayley/cache.hpp"

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cayley/records.hpp"

namespace cayley {

std::string make_cache_key(const std::string& command, std::int64_t n, std::int64_t k,
                           const std::string& parity, double a, double b,
                           const std::string& method, double tolerance, std::uint64_t seed) {
    std::ostringstream os;
    os << "v" << kSchemaVersion << "|" << command << "|n=" << n << "|k=" << k
       << "|parity=" << parity << "|a=" << fmt_double(a) << "|b=" << fmt_double(b)
       << "|method=" << method << "|tol=" << fmt_double(tolerance) << "|seed=" << seed;
    return os.str();
}

std::string key_digest(const std::string& canonical) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : canonical) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

RecordCache::RecordCache(std::string dir, bool enabled) : dir_(std::move(dir)), enabled_(enabled) {
    if (enabled_) std::filesystem::create_directories(dir_);
}

std::string RecordCache::resolve_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("CAYLEY_CACHE_DIR"); env && *env) return env;
    return ".cayley-cache";
}

std::optional<std::string> RecordCache::get(const std::string& key) const {
    if (!enabled_) return std::nullopt;
    std::filesystem::path p = std::filesystem::path(dir_) / (key_digest(key) + ".rec");
    std::ifstream in(p);
    if (!in) return std::nullopt;
    std::string stored_key;
    if (!std::getline(in, stored_key) || stored_key != key) return std::nullopt;
    std::ostringstream rest;
    rest << in.rdbuf();
    return rest.str();
}

void RecordCache::put(const std::string& key, const std::string& payload) const {
    if (!enabled_) return;
    std::filesystem::path p = std::filesystem::path(dir_) / (key_digest(key) + ".rec");
    std::filesystem::path tmp = p;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << key << '\n' << payload;
    }
    std::filesystem::rename(tmp, p);
}

} // namespace cayley
