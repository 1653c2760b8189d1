#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace syra {

// All iterate arithmetic runs on 128 bits with explicit overflow checks.
// 3m+1 on a 64-bit start value stays far below 2^128 for every sweep this
// library performs, so a checked fixed width stands in for unbounded
// integers; overflow throws, it never wraps.
using u128 = unsigned __int128;

inline constexpr u128 u128_max = ~static_cast<u128>(0);

constexpr int trailing_zeros(u128 x) {
    const auto lo = static_cast<std::uint64_t>(x);
    if (lo != 0) return __builtin_ctzll(lo);
    return 64 + __builtin_ctzll(static_cast<std::uint64_t>(x >> 64));
}

constexpr int bit_width(u128 x) {
    const auto hi = static_cast<std::uint64_t>(x >> 64);
    if (hi != 0) return 128 - __builtin_clzll(hi);
    const auto lo = static_cast<std::uint64_t>(x);
    return lo == 0 ? 0 : 64 - __builtin_clzll(lo);
}

// 3*m + 1, throwing instead of wrapping.
constexpr u128 three_m_plus_one(u128 m) {
    if (m > (u128_max - 1) / 3)
        throw std::overflow_error("3m+1 exceeds 128-bit range");
    return 3 * m + 1;
}

// x * y with overflow detection (used by the residue-class machinery,
// whose moduli grow as powers of four).
constexpr u128 checked_mul(u128 x, u128 y) {
    if (x != 0 && y > u128_max / x)
        throw std::overflow_error("128-bit multiply overflow");
    return x * y;
}

constexpr u128 checked_add(u128 x, u128 y) {
    if (y > u128_max - x)
        throw std::overflow_error("128-bit add overflow");
    return x + y;
}

inline std::string to_string(u128 x) {
    char buf[40];
    char* p = buf + sizeof buf;
    do {
        *--p = static_cast<char>('0' + static_cast<unsigned>(x % 10));
        x /= 10;
    } while (x != 0);
    return std::string(p, buf + sizeof buf);
}

inline std::optional<u128> parse_u128(std::string_view s) {
    if (s.empty()) return std::nullopt;
    u128 v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') return std::nullopt;
        if (v > u128_max / 10) return std::nullopt;
        v *= 10;
        const auto d = static_cast<unsigned>(c - '0');
        if (v > u128_max - d) return std::nullopt;
        v += d;
    }
    return v;
}

}  // namespace syra
