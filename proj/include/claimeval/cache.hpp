#pragma once
// Content-addressed disk cache for judge responses.
//
// One file per key under the cache directory; the filename is the lowercase
// hex SHA-256 of the key material, the payload is stored verbatim. Writes
// go to a unique temp file first and are renamed into place, so concurrent
// writers of the same key cannot interleave and readers never observe a
// partial file.

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>
#include <string_view>

#include <openssl/evp.h>

#include "claimeval/core.hpp"

namespace claimeval {

inline std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int digest_len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 ||
        EVP_DigestFinal_ex(ctx, digest, &digest_len) != 1) {
        EVP_MD_CTX_free(ctx);
        throw Error("SHA-256 digest computation failed");
    }
    EVP_MD_CTX_free(ctx);
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(static_cast<size_t>(digest_len) * 2);
    for (unsigned int i = 0; i < digest_len; ++i) {
        out.push_back(kHex[digest[i] >> 4]);
        out.push_back(kHex[digest[i] & 0x0f]);
    }
    return out;
}

// Key material is length-prefixed so field boundaries cannot collide
// ("a"+"bc" hashes differently from "ab"+"c").
inline std::string cache_key(std::string_view backend_kind, std::string_view model,
                             std::string_view template_version, std::string_view input_text,
                             std::string_view reference_text) {
    std::string material;
    const auto append = [&material](std::string_view field) {
        material += std::to_string(field.size());
        material += ':';
        material += field;
    };
    append(backend_kind);
    append(model);
    append(template_version);
    append(input_text);
    append(reference_text);
    return sha256_hex(material);
}

class CacheStore {
  public:
    explicit CacheStore(std::filesystem::path dir) : dir_(std::move(dir)) {
        std::filesystem::create_directories(dir_);
    }

    std::optional<std::string> load(const std::string& key) const {
        std::ifstream in(dir_ / key, std::ios::binary);
        if (!in) return std::nullopt;
        return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    }

    void store(const std::string& key, std::string_view payload) const {
        static std::atomic<unsigned long long> counter{0};
        const std::filesystem::path target = dir_ / key;
        const std::filesystem::path temp =
            dir_ / (key + ".tmp." + std::to_string(counter.fetch_add(1)));
        {
            std::ofstream out(temp, std::ios::binary | std::ios::trunc);
            if (!out) throw Error("cannot write cache entry: " + temp.string());
            out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
            out.flush();
            if (!out.good()) {
                throw Error("short write on cache entry: " + temp.string());
            }
        }
        std::filesystem::rename(temp, target);
    }

    bool contains(const std::string& key) const {
        return std::filesystem::exists(dir_ / key);
    }

    const std::filesystem::path& dir() const { return dir_; }

  private:
    std::filesystem::path dir_;
};

}  // namespace claimeval
