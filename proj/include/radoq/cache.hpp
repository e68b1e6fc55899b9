#ifndef RADOQ_CACHE_HPP
#define RADOQ_CACHE_HPP

#include <array>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <utility>

#include "radoq/io.hpp"

namespace radoq {

// Part of every cache key: bump on any change that affects emitted
// documents, so stale entries can never be served.
inline constexpr const char* engine_version = "radoq-1.0";

namespace detail {

// FIPS 180-4 SHA-256 over a byte stream.
class Sha256 {
  public:
    void update(const void* data, std::size_t len) {
        const unsigned char* p = static_cast<const unsigned char*>(data);
        total_ += len;
        while (len > 0) {
            std::size_t take = 64 - fill_ < len ? 64 - fill_ : len;
            std::memcpy(buf_ + fill_, p, take);
            fill_ += take;
            p += take;
            len -= take;
            if (fill_ == 64) {
                compress(buf_);
                fill_ = 0;
            }
        }
    }

    std::array<unsigned char, 32> finish() {
        std::uint64_t bits = total_ * 8;
        const unsigned char pad = 0x80;
        update(&pad, 1);
        const unsigned char zero = 0;
        while (fill_ != 56) update(&zero, 1);
        unsigned char len[8];
        for (int i = 0; i < 8; ++i) len[i] = static_cast<unsigned char>(bits >> (56 - 8 * i));
        update(len, 8);
        std::array<unsigned char, 32> out{};
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 4; ++j)
                out[static_cast<std::size_t>(4 * i + j)] =
                    static_cast<unsigned char>(state_[static_cast<std::size_t>(i)] >> (24 - 8 * j));
        return out;
    }

  private:
    static std::uint32_t rotr(std::uint32_t x, int n) { return x >> n | x << (32 - n); }

    void compress(const unsigned char* block) {
        static constexpr std::uint32_t K[64] = {
            0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4,
            0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe,
            0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f,
            0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7,
            0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
            0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
            0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116,
            0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
            0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7,
            0xc67178f2};
        std::uint32_t w[64];
        for (int i = 0; i < 16; ++i)
            w[i] = static_cast<std::uint32_t>(block[4 * i]) << 24 |
                   static_cast<std::uint32_t>(block[4 * i + 1]) << 16 |
                   static_cast<std::uint32_t>(block[4 * i + 2]) << 8 |
                   static_cast<std::uint32_t>(block[4 * i + 3]);
        for (int i = 16; i < 64; ++i) {
            std::uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
            std::uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
            w[i] = w[i - 16] + s0 + w[i - 7] + s1;
        }
        std::uint32_t a = state_[0], b = state_[1], c = state_[2], d = state_[3];
        std::uint32_t e = state_[4], f = state_[5], g = state_[6], h = state_[7];
        for (int i = 0; i < 64; ++i) {
            std::uint32_t s1 = rotr(e, 6) ^ rotr(e, 11) ^ rotr(e, 25);
            std::uint32_t ch = (e & f) ^ (~e & g);
            std::uint32_t t1 = h + s1 + ch + K[i] + w[i];
            std::uint32_t s0 = rotr(a, 2) ^ rotr(a, 13) ^ rotr(a, 22);
            std::uint32_t maj = (a & b) ^ (a & c) ^ (b & c);
            std::uint32_t t2 = s0 + maj;
            h = g;
            g = f;
            f = e;
            e = d + t1;
            d = c;
            c = b;
            b = a;
            a = t1 + t2;
        }
        state_[0] += a;
        state_[1] += b;
        state_[2] += c;
        state_[3] += d;
        state_[4] += e;
        state_[5] += f;
        state_[6] += g;
        state_[7] += h;
    }

    std::array<std::uint32_t, 8> state_ = {0x6a09e667, 0xbb67ae85, 0x3c6ef372, 0xa54ff53a,
                                           0x510e527f, 0x9b05688c, 0x1f83d9ab, 0x5be0cd19};
    unsigned char buf_[64] = {};
    std::size_t fill_ = 0;
    std::uint64_t total_ = 0;
};

}  // namespace detail

inline std::string sha256_hex(const std::string& data) {
    detail::Sha256 h;
    h.update(data.data(), data.size());
    std::array<unsigned char, 32> digest = h.finish();
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(64);
    for (unsigned char byte : digest) {
        out.push_back(hex[byte >> 4]);
        out.push_back(hex[byte & 0xf]);
    }
    return out;
}

// Key of a run: hash of its canonical configuration.  nlohmann orders
// object members, so the dump is a canonical serialization.
inline std::string cache_key(const Json& config) { return sha256_hex(config.dump()); }

// Content-addressed result store under one directory, one JSON file
// per key.  Everything is best-effort: a missing directory disables
// the store, a corrupt entry reads as a miss.
class CacheStore {
  public:
    explicit CacheStore(std::string dir) : dir_(std::move(dir)) {}

    static CacheStore from_environment() {
        const char* dir = std::getenv("RADOQ_CACHE_DIR");
        return CacheStore(dir ? dir : "");
    }

    bool enabled() const { return !dir_.empty(); }

    // warnings for unreadable entries go to `warn` when given.
    std::optional<Json> load(const std::string& key, std::ostream* warn = nullptr) const {
        if (!enabled()) return std::nullopt;
        std::string path = entry_path(key);
        std::error_code ec;
        if (!std::filesystem::exists(path, ec)) return std::nullopt;
        try {
            return load_json_file(path);
        } catch (const Error& e) {
            if (warn)
                *warn << "warning: ignoring corrupt cache entry " << path << " (" << e.what()
                      << ")\n";
            return std::nullopt;
        }
    }

    void store(const std::string& key, const Json& value) const {
        if (!enabled()) return;
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec) return;
        try {
            write_text_file(entry_path(key), value.dump(2) + "\n");
        } catch (const Error&) {
        }
    }

    std::string entry_path(const std::string& key) const {
        return (std::filesystem::path(dir_) / (key + ".json")).string();
    }

  private:
    std::string dir_;
};

}  // namespace radoq

#endif
