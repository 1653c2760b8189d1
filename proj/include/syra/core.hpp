#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "syra/int128.hpp"

namespace syra {

/// A positive odd integer, the domain of the Syracuse map.
class OddInt {
  public:
    explicit constexpr OddInt(u128 v) : value_(v) {
        if (v == 0 || (v & 1) == 0)
            throw std::domain_error("OddInt requires a positive odd value");
    }
    constexpr u128 value() const noexcept { return value_; }
    friend constexpr bool operator==(OddInt, OddInt) = default;

  private:
    u128 value_;
};

namespace detail {

struct RawStep {
    u128 next;       // odd part of 3m+1
    int valuation;   // exponent of 2 removed, always >= 1
};

// Core of the Syracuse map on raw words; sweeps call this directly.
constexpr RawStep syracuse_step_raw(u128 m) {
    const u128 t = three_m_plus_one(m);
    const int e = trailing_zeros(t);
    return {t >> e, e};
}

}  // namespace detail

struct SyracuseStep {
    OddInt next;
    int valuation;
};

/// One application of the Syracuse map: m -> (3m+1)/2^e with e maximal.
inline SyracuseStep syracuse_step(OddInt m) {
    const auto [q, e] = detail::syracuse_step_raw(m.value());
    return {OddInt(q), e};
}

/// The first n iterates m, S(m), ..., S^{n-1}(m) together with the
/// power-of-two exponent divided out at each step.
struct Trajectory {
    u128 start = 1;
    std::vector<u128> iterates;    // size n, iterates[0] == start
    std::vector<int> valuations;   // size n-1, valuations[j-1] pairs with iterates[j]
};

inline Trajectory trajectory(OddInt m, int n) {
    if (n < 1) throw std::invalid_argument("trajectory length must be >= 1");
    Trajectory t;
    t.start = m.value();
    t.iterates.reserve(static_cast<std::size_t>(n));
    t.valuations.reserve(static_cast<std::size_t>(n) - 1);
    u128 cur = m.value();
    t.iterates.push_back(cur);
    for (int j = 1; j < n; ++j) {
        const auto [next, e] = detail::syracuse_step_raw(cur);
        t.iterates.push_back(next);
        t.valuations.push_back(e);
        cur = next;
    }
    return t;
}

/// Collatz variant C: 3m+1 on odd, m/2 on even.
constexpr u128 collatz_step(u128 m) {
    if (m == 0) throw std::domain_error("collatz_step requires m >= 1");
    return (m & 1) ? three_m_plus_one(m) : m >> 1;
}

/// Collatz variant C1: (3m+1)/2 on odd, m/2 on even.
constexpr u128 collatz1_step(u128 m) {
    if (m == 0) throw std::domain_error("collatz1_step requires m >= 1");
    return (m & 1) ? three_m_plus_one(m) >> 1 : m >> 1;
}

/// The base-4 repunit with k+1 digits: (4^{k+1} - 1)/3 = 5, 21, 85, 341, ...
/// for k = 1, 2, 3, 4. These are exactly the odd m > 1 that the Syracuse
/// map sends to 1 in a single step.
constexpr u128 repunit4(int k) {
    if (k < 1) throw std::domain_error("repunit4 requires k >= 1");
    if (k > 62) throw std::overflow_error("repunit4 exceeds 128-bit range");
    return ((static_cast<u128>(1) << (2 * (k + 1))) - 1) / 3;
}

/// If m equals repunit4(k) for some k >= 1, returns that k.
/// m = 1 is excluded: it also maps to 1 but is the fixed point, not a
/// member of the family, and callers treat it separately.
constexpr std::optional<int> repunit4_index(OddInt m) {
    const u128 t = three_m_plus_one(m.value());
    if ((t & (t - 1)) != 0) return std::nullopt;    // 3m+1 must be a power of two
    const int e = trailing_zeros(t);
    if ((e & 1) != 0) return std::nullopt;          // and in fact a power of four
    const int k = e / 2 - 1;
    if (k < 1) return std::nullopt;                 // excludes m = 1
    return k;
}

}  // namespace syra
