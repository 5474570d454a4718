#include "zetamoments/zero_cache.hpp"

#include "json.hpp"

#include <openssl/evp.h>

#include <fcntl.h>
#include <unistd.h>

#include <array>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

namespace zm {

namespace {

using nlohmann::json;

std::string sha256_hex(const std::string& data) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (ctx == nullptr) throw std::runtime_error("sha256: context allocation failed");
    const bool ok = EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) == 1 &&
                    EVP_DigestUpdate(ctx, data.data(), data.size()) == 1 &&
                    EVP_DigestFinal_ex(ctx, md.data(), &len) == 1;
    EVP_MD_CTX_free(ctx);
    if (!ok) throw std::runtime_error("sha256: digest failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned i = 0; i < len; ++i) {
        out.push_back(hex[md[i] >> 4]);
        out.push_back(hex[md[i] & 0xf]);
    }
    return out;
}

Real parse_field(const json& j, const char* key, Precision prec) {
    if (!j.contains(key) || !j.at(key).is_string()) {
        throw CacheCorruptError(std::string("zero cache: missing string field '") + key + "'");
    }
    try {
        return Real::parse(j.at(key).get<std::string>(), prec);
    } catch (const std::exception& e) {
        throw CacheCorruptError(std::string("zero cache: bad number in '") + key + "': " + e.what());
    }
}

}  // namespace

std::string canonical_record(const ZetaZero& z) {
    std::string line = std::to_string(z.index);
    line += ' ';
    line += z.gamma.to_string();
    line += ' ';
    line += z.gamma_error.to_string();
    line += ' ';
    line += z.zeta_prime.re.to_string();
    line += ' ';
    line += z.zeta_prime.im.to_string();
    return line;
}

std::string records_digest(const std::vector<ZetaZero>& records) {
    std::string all;
    for (const auto& z : records) {
        all += canonical_record(z);
        all += '\n';
    }
    return "sha256:" + sha256_hex(all);
}

std::string serialize_cache(const ZeroCacheFile& file) {
    json j;
    j["format_version"] = file.format_version;
    j["prec_bits"] = file.prec_bits;
    j["t_lo"] = file.t_lo.to_string();
    j["t_hi"] = file.t_hi.to_string();
    j["zero_count"] = file.zero_count;
    j["content_digest"] = file.content_digest;
    json recs = json::array();
    for (const auto& z : file.records) {
        recs.push_back({{"index", z.index},
                        {"gamma", z.gamma.to_string()},
                        {"gamma_error", z.gamma_error.to_string()},
                        {"zeta_prime_re", z.zeta_prime.re.to_string()},
                        {"zeta_prime_im", z.zeta_prime.im.to_string()}});
    }
    j["records"] = std::move(recs);
    return j.dump(1) + "\n";
}

ZeroCacheFile parse_cache(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw CacheCorruptError(std::string("zero cache: invalid JSON: ") + e.what());
    }
    ZeroCacheFile f;
    try {
        f.format_version = j.at("format_version").get<int>();
        f.prec_bits = j.at("prec_bits").get<Precision>();
        f.zero_count = j.at("zero_count").get<long>();
        f.content_digest = j.at("content_digest").get<std::string>();
    } catch (const json::exception& e) {
        throw CacheCorruptError(std::string("zero cache: bad header: ") + e.what());
    }
    if (f.format_version != kCacheFormatVersion) throw CacheCorruptError("zero cache: unsupported format version");
    if (f.prec_bits < 64) throw CacheCorruptError("zero cache: prec_bits below 64");
    f.t_lo = parse_field(j, "t_lo", f.prec_bits);
    f.t_hi = parse_field(j, "t_hi", f.prec_bits);
    if (!j.contains("records") || !j.at("records").is_array()) throw CacheCorruptError("zero cache: missing records");
    for (const auto& r : j.at("records")) {
        ZetaZero z;
        try {
            z.index = r.at("index").get<long>();
        } catch (const json::exception& e) {
            throw CacheCorruptError(std::string("zero cache: bad record index: ") + e.what());
        }
        z.gamma = parse_field(r, "gamma", f.prec_bits);
        z.gamma_error = parse_field(r, "gamma_error", f.prec_bits);
        z.zeta_prime = Complex(parse_field(r, "zeta_prime_re", f.prec_bits), parse_field(r, "zeta_prime_im", f.prec_bits));
        z.prec_bits = f.prec_bits;
        f.records.push_back(std::move(z));
    }
    if (static_cast<long>(f.records.size()) != f.zero_count) throw CacheCorruptError("zero cache: record count mismatch");
    for (std::size_t i = 1; i < f.records.size(); ++i) {
        if (!(f.records[i - 1].gamma < f.records[i].gamma)) throw CacheCorruptError("zero cache: ordinates not ascending");
    }
    if (records_digest(f.records) != f.content_digest) {
        throw CacheCorruptError("zero cache: content digest mismatch; rerun with --rebuild");
    }
    return f;
}

std::filesystem::path cache_path(const std::filesystem::path& dir, Precision prec_bits) {
    return dir / ("zeros_p" + std::to_string(prec_bits) + ".json");
}

std::optional<ZeroCacheFile> read_cache(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_cache(buf.str());
}

void write_cache(const std::filesystem::path& path, const ZeroCacheFile& file) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("zero cache: cannot write " + tmp.string());
        out << serialize_cache(file);
        if (!out) throw std::runtime_error("zero cache: write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

CacheLock::CacheLock(std::filesystem::path cache_file) : lock_path_(cache_file.string() + ".lock") {
    if (lock_path_.has_parent_path()) std::filesystem::create_directories(lock_path_.parent_path());
    const int fd = ::open(lock_path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd < 0) {
        if (errno == EEXIST) {
            throw CacheLockedError("zero cache is locked by another process: " + lock_path_.string());
        }
        throw std::runtime_error("zero cache: cannot create lock " + lock_path_.string() + ": " + std::strerror(errno));
    }
    const std::string pid = std::to_string(::getpid()) + "\n";
    [[maybe_unused]] const auto written = ::write(fd, pid.data(), pid.size());
    ::close(fd);
}

CacheLock::~CacheLock() {
    std::error_code ec;
    std::filesystem::remove(lock_path_, ec);
}

ZeroCacheFile restrict_to(const ZeroCacheFile& file, const Real& height) {
    ZeroCacheFile out;
    out.format_version = file.format_version;
    out.prec_bits = file.prec_bits;
    out.t_lo = file.t_lo;
    out.t_hi = height.rounded(file.prec_bits);
    for (const auto& z : file.records)
        if (z.gamma <= height) out.records.push_back(z);
    out.zero_count = static_cast<long>(out.records.size());
    out.content_digest = records_digest(out.records);
    return out;
}

EnsureResult ensure_zeros(const std::filesystem::path& dir, const Real& height, const EvalConfig& cfg, unsigned threads,
                          bool rebuild) {
    cfg.validate();
    const auto path = cache_path(dir, cfg.prec_bits);
    CacheLock lock(path);
    EnsureResult result;
    std::optional<ZeroCacheFile> existing;
    if (!rebuild) existing = read_cache(path);
    if (existing && existing->prec_bits != cfg.prec_bits) throw CacheCorruptError("zero cache: precision does not match file name");

    if (existing && existing->t_hi >= height) {
        result.file = std::move(*existing);
        result.cache_hit = true;
        return result;
    }

    ZeroCacheFile file;
    file.prec_bits = cfg.prec_bits;
    file.t_lo = Real(0L, cfg.prec_bits);
    if (existing) {
        file = std::move(*existing);
        auto more = find_zeros(file.t_hi, height, cfg, threads);
        if (!more.empty() && more.front().index != file.zero_count + 1) {
            throw CacheCorruptError("zero cache: stored zeros do not continue at the new range; rerun with --rebuild");
        }
        for (auto& z : more) file.records.push_back(std::move(z));
        result.extended = true;
    } else {
        file.records = find_zeros(file.t_lo, height, cfg, threads);
    }
    file.t_hi = height.rounded(cfg.prec_bits);
    file.zero_count = static_cast<long>(file.records.size());
    file.content_digest = records_digest(file.records);
    write_cache(path, file);
    result.file = std::move(file);
    return result;
}

}  // namespace zm
