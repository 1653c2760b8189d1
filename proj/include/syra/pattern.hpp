#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "syra/core.hpp"
#include "syra/int128.hpp"

namespace syra {

inline constexpr int max_pattern_len = 8;

inline constexpr std::array<int, max_pattern_len + 1> factorial = {
    1, 1, 2, 6, 24, 120, 720, 5040, 40320};

/// A permutation of (1, ..., n) in one-line notation; the pattern of a
/// tuple of distinct values. Text form is comma separated, e.g. "1,3,4,2".
class PermPattern {
  public:
    PermPattern(std::initializer_list<int> entries) {
        if (entries.size() < 1 || entries.size() > max_pattern_len)
            throw std::invalid_argument("pattern length must be in [1, 8]");
        len_ = static_cast<std::uint8_t>(entries.size());
        int i = 0;
        for (int v : entries) entries_[i++] = static_cast<std::uint8_t>(v);
        validate();
    }

    static PermPattern identity(int n) {
        PermPattern p(n);
        for (int i = 0; i < n; ++i) p.entries_[i] = static_cast<std::uint8_t>(i + 1);
        return p;
    }

    int size() const noexcept { return len_; }

    /// sigma(i) for 1-based position i.
    int at(int i) const {
        if (i < 1 || i > len_) throw std::out_of_range("pattern position");
        return entries_[i - 1];
    }
    int operator[](int i) const noexcept { return entries_[i]; }   // 0-based

    friend bool operator==(const PermPattern&, const PermPattern&) = default;
    friend auto operator<=>(const PermPattern& a, const PermPattern& b) {
        if (auto c = a.len_ <=> b.len_; c != 0) return c;
        return a.entries_ <=> b.entries_;
    }

    /// Rank in [0, n!): position of the one-line form in lexicographic
    /// order over all patterns of the same length.
    int index() const noexcept {
        int idx = 0;
        for (int i = 0; i < len_; ++i) {
            int smaller_after = 0;
            for (int j = i + 1; j < len_; ++j)
                smaller_after += entries_[j] < entries_[i];
            idx += smaller_after * factorial[len_ - 1 - i];
        }
        return idx;
    }

    static PermPattern from_index(int n, int idx) {
        if (n < 1 || n > max_pattern_len || idx < 0 || idx >= factorial[n])
            throw std::invalid_argument("pattern index out of range");
        PermPattern p(n);
        bool used[max_pattern_len + 1] = {};
        for (int i = 0; i < n; ++i) {
            int d = idx / factorial[n - 1 - i];
            idx %= factorial[n - 1 - i];
            for (int v = 1; v <= n; ++v) {
                if (used[v]) continue;
                if (d == 0) {
                    p.entries_[i] = static_cast<std::uint8_t>(v);
                    used[v] = true;
                    break;
                }
                --d;
            }
        }
        return p;
    }

    /// Appends n+1 at the end; the lift that preserves impossibility.
    PermPattern lifted() const {
        if (len_ >= max_pattern_len) throw std::length_error("pattern lift past max length");
        PermPattern p(len_ + 1);
        p.entries_ = entries_;
        p.entries_[len_] = static_cast<std::uint8_t>(len_ + 1);
        return p;
    }

    std::string to_string() const {
        std::string s;
        for (int i = 0; i < len_; ++i) {
            if (i) s += ',';
            s += static_cast<char>('0' + entries_[i]);
        }
        return s;
    }

    /// Accepts "1,3,4,2", "(1,3,4,2)", and embedded whitespace.
    static std::optional<PermPattern> parse(std::string_view text);

  private:
    explicit PermPattern(int n) : len_(static_cast<std::uint8_t>(n)) {}

    void validate() const {
        bool seen[max_pattern_len + 1] = {};
        for (int i = 0; i < len_; ++i) {
            const int v = entries_[i];
            if (v < 1 || v > len_ || seen[v])
                throw std::invalid_argument("entries are not a permutation of 1..n");
            seen[v] = true;
        }
    }

    std::uint8_t len_ = 0;
    std::array<std::uint8_t, max_pattern_len> entries_ = {};
};

namespace detail {

inline std::optional<std::vector<int>> parse_int_list(std::string_view text) {
    std::vector<int> out;
    std::size_t i = 0;
    const auto skip_ws = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    };
    skip_ws();
    bool parens = false;
    if (i < text.size() && text[i] == '(') {
        parens = true;
        ++i;
    }
    while (true) {
        skip_ws();
        std::size_t start = i;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
        if (i == start) return std::nullopt;
        int v = 0;
        for (std::size_t j = start; j < i; ++j) {
            v = v * 10 + (text[j] - '0');
            if (v > 1'000'000) return std::nullopt;
        }
        out.push_back(v);
        skip_ws();
        if (i < text.size() && text[i] == ',') {
            ++i;
            continue;
        }
        break;
    }
    if (parens) {
        if (i >= text.size() || text[i] != ')') return std::nullopt;
        ++i;
        skip_ws();
    }
    if (i != text.size()) return std::nullopt;
    return out;
}

// Lehmer rank of an n-tuple, or -1 if two coordinates coincide.
// Pairwise comparisons only; n stays <= 8 everywhere this runs.
inline int lehmer_index(const u128* x, int n) {
    int idx = 0;
    for (int i = 0; i < n; ++i) {
        int smaller_after = 0;
        for (int j = i + 1; j < n; ++j) {
            if (x[j] == x[i]) return -1;
            smaller_after += x[j] < x[i];
        }
        idx += smaller_after * factorial[n - 1 - i];
    }
    return idx;
}

}  // namespace detail

inline std::optional<PermPattern> PermPattern::parse(std::string_view text) {
    const auto vals = detail::parse_int_list(text);
    if (!vals || vals->size() < 1 || vals->size() > max_pattern_len) return std::nullopt;
    PermPattern p(static_cast<int>(vals->size()));
    for (std::size_t i = 0; i < vals->size(); ++i) {
        if ((*vals)[i] < 1 || (*vals)[i] > static_cast<int>(vals->size())) return std::nullopt;
        p.entries_[i] = static_cast<std::uint8_t>((*vals)[i]);
    }
    try {
        p.validate();
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
    return p;
}

/// Pattern of a tuple of distinct values: sigma(i) is the ascending rank
/// of coordinate i. Returns nullopt when two coordinates coincide; the
/// census counts such tuples instead of aborting on them.
inline std::optional<PermPattern> pattern_of(std::span<const u128> tuple) {
    const int n = static_cast<int>(tuple.size());
    if (n < 1 || n > max_pattern_len)
        throw std::invalid_argument("tuple length must be in [1, 8]");
    const int idx = detail::lehmer_index(tuple.data(), n);
    if (idx < 0) return std::nullopt;
    return PermPattern::from_index(n, idx);
}

inline std::optional<PermPattern> pattern_of(std::initializer_list<u128> tuple) {
    return pattern_of(std::span<const u128>(tuple.begin(), tuple.size()));
}

/// Pattern of (m, S(m), ..., S^{n-1}(m)).
inline std::optional<PermPattern> tuple_pattern(OddInt m, int n) {
    if (n < 1 || n > max_pattern_len)
        throw std::invalid_argument("tuple length must be in [1, 8]");
    u128 x[max_pattern_len];
    x[0] = m.value();
    for (int j = 1; j < n; ++j) x[j] = detail::syracuse_step_raw(x[j - 1]).next;
    return pattern_of(std::span<const u128>(x, static_cast<std::size_t>(n)));
}

/// Run lengths of strict rises and falls along a trajectory: runs[0]
/// rises, runs[1] falls, alternating.
struct IncDecPattern {
    std::vector<int> runs;

    explicit IncDecPattern(std::vector<int> r) : runs(std::move(r)) {
        if (runs.empty()) throw std::invalid_argument("empty run list");
        for (int v : runs)
            if (v < 1) throw std::invalid_argument("run lengths must be >= 1");
    }
    IncDecPattern(std::initializer_list<int> r) : IncDecPattern(std::vector<int>(r)) {}

    int total_steps() const {
        int s = 0;
        for (int v : runs) s += v;
        return s;
    }

    static std::optional<IncDecPattern> parse(std::string_view text) {
        const auto vals = detail::parse_int_list(text);
        if (!vals || vals->empty()) return std::nullopt;
        for (int v : *vals)
            if (v < 1) return std::nullopt;
        return IncDecPattern(*vals);
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < runs.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(runs[i]);
        }
        return s;
    }
};

/// True when the first 1 + sum(runs) iterates of m rise and fall in
/// exactly the given run lengths.
inline bool has_incdec_pattern(OddInt m, const IncDecPattern& shape) {
    u128 cur = m.value();
    bool rising = true;
    for (int run : shape.runs) {
        for (int s = 0; s < run; ++s) {
            const u128 next = detail::syracuse_step_raw(cur).next;
            if (rising ? next <= cur : next >= cur) return false;
            cur = next;
        }
        rising = !rising;
    }
    return true;
}

/// Smallest odd m <= bound realizing the rise/fall shape, if any.
inline std::optional<u128> search_incdec(const IncDecPattern& shape, u128 bound) {
    for (u128 m = 1; m <= bound; m += 2)
        if (has_incdec_pattern(OddInt(m), shape)) return m;
    return std::nullopt;
}

}  // namespace syra
