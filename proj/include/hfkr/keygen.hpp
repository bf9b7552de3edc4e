#pragma once

// Trajectory serialization and the hash layer k = H(x0 || x1 || ... || xn).

#include <hfkr/errors.hpp>
#include <hfkr/walk.hpp>

#include <blake3.h>
#include <openssl/evp.h>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hfkr {

enum class hash_kind { sha3_512, shake256, blake3 };

/// A hash function together with its output length in bytes.
class hash_alg {
public:
    static hash_alg sha3_512() { return hash_alg(hash_kind::sha3_512, 64); }
    static hash_alg shake256(std::size_t out_len = 64) { return hash_alg(hash_kind::shake256, out_len); }
    static hash_alg blake3(std::size_t out_len = BLAKE3_OUT_LEN) { return hash_alg(hash_kind::blake3, out_len); }

    /// Parses "sha3-512", "shake256", "blake3", optionally suffixed ":<bytes>".
    static hash_alg parse(std::string_view text) {
        std::string_view name = text;
        std::optional<std::size_t> len;
        if (const auto colon = text.find(':'); colon != std::string_view::npos) {
            name = text.substr(0, colon);
            const std::string digits(text.substr(colon + 1));
            if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
                throw config_error("alg", "output length must be a positive integer in '" + std::string(text) + "'");
            len = std::stoul(digits);
        }
        if (name == "sha3-512") {
            if (len && *len != 64) throw config_error("out_len", "sha3-512 has a fixed 64-byte output");
            return sha3_512();
        }
        if (name == "shake256") return shake256(len.value_or(64));
        if (name == "blake3") return blake3(len.value_or(BLAKE3_OUT_LEN));
        throw config_error("alg", "unknown hash '" + std::string(name) + "' (expected sha3-512, shake256 or blake3)");
    }

    hash_kind kind() const noexcept { return kind_; }
    std::size_t out_len() const noexcept { return out_len_; }
    std::size_t out_bits() const noexcept { return out_len_ * 8; }

    std::string_view name() const noexcept {
        switch (kind_) {
            case hash_kind::sha3_512: return "sha3-512";
            case hash_kind::shake256: return "shake256";
            case hash_kind::blake3: return "blake3";
        }
        return "?";
    }

    /// Name plus output length, e.g. "blake3:32"; round-trips through parse().
    std::string label() const { return std::string(name()) + ":" + std::to_string(out_len_); }

    friend bool operator==(const hash_alg&, const hash_alg&) = default;

private:
    hash_alg(hash_kind kind, std::size_t out_len) : kind_(kind), out_len_(out_len) {
        if (out_len < 16) throw config_error("out_len", "digest length must be at least 16 bytes");
    }

    hash_kind kind_;
    std::size_t out_len_;
};

struct digest {
    hash_alg alg;
    std::vector<std::uint8_t> bytes;
};

inline std::string to_hex(std::span<const std::uint8_t> bytes) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (const std::uint8_t b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xF]);
    }
    return out;
}

inline std::string to_hex(const digest& d) { return to_hex(d.bytes); }

/// Size in bytes of one serialized lattice point.
inline constexpr std::size_t point_bytes = 16;

/// x then y of each point as 8-byte little-endian two's complement, no framing.
inline std::vector<std::uint8_t> serialize_points(std::span<const lattice_point> points) {
    std::vector<std::uint8_t> out;
    out.reserve(points.size() * point_bytes);
    auto put = [&out](std::int64_t v) {
        const auto u = static_cast<std::uint64_t>(v);
        for (int k = 0; k < 8; ++k) out.push_back(static_cast<std::uint8_t>(u >> (8 * k)));
    };
    for (const auto& p : points) {
        put(p.x);
        put(p.y);
    }
    return out;
}

inline std::vector<std::uint8_t> serialize_trajectory(const trajectory& t) { return serialize_points(t.points); }

/// Inverse of serialize_points.
inline std::vector<lattice_point> parse_points(std::span<const std::uint8_t> bytes) {
    if (bytes.size() % point_bytes != 0)
        throw error("serialized trajectory length " + std::to_string(bytes.size()) + " is not a multiple of 16");
    auto get = [&bytes](std::size_t at) {
        std::uint64_t u = 0;
        for (int k = 0; k < 8; ++k) u |= std::uint64_t{bytes[at + k]} << (8 * k);
        return static_cast<std::int64_t>(u);
    };
    std::vector<lattice_point> points(bytes.size() / point_bytes);
    for (std::size_t i = 0; i < points.size(); ++i) points[i] = {get(i * 16), get(i * 16 + 8)};
    return points;
}

namespace detail {

struct evp_ctx_deleter {
    void operator()(EVP_MD_CTX* ctx) const noexcept { EVP_MD_CTX_free(ctx); }
};

inline void evp_hash(const EVP_MD* md, bool xof, std::span<const std::uint8_t> msg, std::span<std::uint8_t> out) {
    std::unique_ptr<EVP_MD_CTX, evp_ctx_deleter> ctx(EVP_MD_CTX_new());
    if (!ctx || EVP_DigestInit_ex(ctx.get(), md, nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), msg.data(), msg.size()) != 1)
        throw hash_error("OpenSSL digest initialisation failed");
    int ok = 0;
    if (xof) {
        ok = EVP_DigestFinalXOF(ctx.get(), out.data(), out.size());
    } else {
        unsigned int written = 0;
        ok = EVP_DigestFinal_ex(ctx.get(), out.data(), &written);
        ok = ok && written == out.size();
    }
    if (ok != 1) throw hash_error("OpenSSL digest finalisation failed");
}

}  // namespace detail

inline digest hash_bytes(std::span<const std::uint8_t> msg, const hash_alg& alg) {
    digest d{alg, std::vector<std::uint8_t>(alg.out_len())};
    switch (alg.kind()) {
        case hash_kind::sha3_512:
            detail::evp_hash(EVP_sha3_512(), false, msg, d.bytes);
            break;
        case hash_kind::shake256:
            detail::evp_hash(EVP_shake256(), true, msg, d.bytes);
            break;
        case hash_kind::blake3: {
            blake3_hasher h;
            blake3_hasher_init(&h);
            blake3_hasher_update(&h, msg.data(), msg.size());
            blake3_hasher_finalize(&h, d.bytes.data(), d.bytes.size());
            break;
        }
    }
    return d;
}

/// k = H(serialize(t)).
inline digest derive_key(const trajectory& t, const hash_alg& alg) {
    return hash_bytes(serialize_trajectory(t), alg);
}

}  // namespace hfkr
