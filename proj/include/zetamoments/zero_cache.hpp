#pragma once

// On-disk cache of computed zeros. One JSON file per precision; reals are
// stored as shortest round-trip decimal strings and a SHA-256 digest over
// canonical record lines guards against corruption.

#include "zetamoments/zeta.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace zm {

inline constexpr int kCacheFormatVersion = 1;

class CacheCorruptError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CacheLockedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ZeroCacheFile {
    int format_version = kCacheFormatVersion;
    Precision prec_bits = kDefaultPrecision;
    Real t_lo;
    Real t_hi;
    long zero_count = 0;
    std::string content_digest;
    std::vector<ZetaZero> records;
};

/// "index gamma gamma_error re im" with lossless decimal strings.
std::string canonical_record(const ZetaZero& z);
/// "sha256:" followed by the hex digest of all canonical records, newline terminated.
std::string records_digest(const std::vector<ZetaZero>& records);

std::string serialize_cache(const ZeroCacheFile& file);
/// Parses and validates: digest, count, ascending ordinates. Throws CacheCorruptError.
ZeroCacheFile parse_cache(const std::string& text);

std::filesystem::path cache_path(const std::filesystem::path& dir, Precision prec_bits);
std::optional<ZeroCacheFile> read_cache(const std::filesystem::path& path);
/// Writes through a temporary file and an atomic rename.
void write_cache(const std::filesystem::path& path, const ZeroCacheFile& file);

/// Exclusive lock file next to the cache, removed on destruction.
class CacheLock {
public:
    explicit CacheLock(std::filesystem::path cache_file);
    ~CacheLock();
    CacheLock(const CacheLock&) = delete;
    CacheLock& operator=(const CacheLock&) = delete;

private:
    std::filesystem::path lock_path_;
};

struct EnsureResult {
    ZeroCacheFile file;  // as stored on disk
    bool cache_hit = false;
    bool extended = false;
};

/// Loads the cache for cfg.prec_bits and extends it to `height` if needed.
/// With `rebuild` any existing file is discarded first.
EnsureResult ensure_zeros(const std::filesystem::path& dir, const Real& height, const EvalConfig& cfg, unsigned threads,
                          bool rebuild);

/// Records with gamma <= height as a file restricted to (t_lo, height].
ZeroCacheFile restrict_to(const ZeroCacheFile& file, const Real& height);

}  // namespace zm
