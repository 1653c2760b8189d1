#pragma once

// Reference implementations for the tests, kept deliberately on a
// different route than the library: halving loops instead of trailing-zero
// counts, argsort ranks instead of pairwise Lehmer ranks, one serial loop
// instead of the sharded sweep, and no residue classifier anywhere.
// Desk-scale bounds only; plain uint64 arithmetic is ample here.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace oracle {

inline std::uint64_t syracuse_next(std::uint64_t m) {
    std::uint64_t t = 3 * m + 1;
    while (t % 2 == 0) t /= 2;
    return t;
}

inline std::vector<std::uint64_t> iterates(std::uint64_t m, int n) {
    std::vector<std::uint64_t> xs{m};
    for (int j = 1; j < n; ++j) xs.push_back(syracuse_next(xs.back()));
    return xs;
}

// One-line pattern by sorting an index array; empty when coordinates repeat.
inline std::optional<std::vector<int>> sort_pattern(const std::vector<std::uint64_t>& xs) {
    const int n = static_cast<int>(xs.size());
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&xs](int a, int b) { return xs[static_cast<std::size_t>(a)] < xs[static_cast<std::size_t>(b)]; });
    for (int i = 1; i < n; ++i)
        if (xs[static_cast<std::size_t>(order[static_cast<std::size_t>(i - 1)])] ==
            xs[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])])
            return std::nullopt;
    std::vector<int> sigma(static_cast<std::size_t>(n));
    for (int rank = 0; rank < n; ++rank)
        sigma[static_cast<std::size_t>(order[static_cast<std::size_t>(rank)])] = rank + 1;
    return sigma;
}

inline std::string pattern_text(const std::vector<int>& sigma) {
    std::string s;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(sigma[i]);
    }
    return s;
}

struct Census {
    std::uint64_t repeated = 0;
    std::map<std::string, std::uint64_t> counts;
};

inline Census census(std::uint64_t limit, int n) {
    Census c;
    for (std::uint64_t m = 1; m <= limit; m += 2) {
        const auto sigma = sort_pattern(iterates(m, n));
        if (!sigma)
            ++c.repeated;
        else
            ++c.counts[pattern_text(*sigma)];
    }
    return c;
}

// First k <= cap with the k-th iterate below m, by direct scan.
inline std::optional<int> dropping_time(std::uint64_t m, int cap) {
    std::uint64_t cur = m;
    for (int k = 1; k <= cap; ++k) {
        cur = syracuse_next(cur);
        if (cur < m) return k;
    }
    return std::nullopt;
}

}  // namespace oracle
