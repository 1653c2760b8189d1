#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "syra/classify.hpp"
#include "syra/core.hpp"
#include "syra/int128.hpp"
#include "syra/pattern.hpp"

namespace syra {

inline unsigned default_workers() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Applies visit(acc, m) to every odd m in [1, limit], sharded into
/// contiguous subranges, one accumulator per worker. Merging is in worker
/// order and the accumulators are additive, so the result is identical
/// for every worker count. Exceptions from workers are rethrown.
template <typename Acc, typename Visit>
Acc sweep_odd(std::uint64_t limit, unsigned workers, Acc zero, Visit visit) {
    const std::uint64_t odd_count = (limit + 1) / 2;
    if (workers == 0) workers = default_workers();
    if (static_cast<std::uint64_t>(workers) > odd_count)
        workers = odd_count == 0 ? 1 : static_cast<unsigned>(odd_count);

    if (workers == 1 || odd_count < 2) {
        Acc acc = std::move(zero);
        for (std::uint64_t i = 0; i < odd_count; ++i) visit(acc, 2 * i + 1);
        return acc;
    }

    std::vector<Acc> parts(workers, zero);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&parts, &errors, odd_count, workers, visit, t] {
            const auto lo = static_cast<std::uint64_t>(
                static_cast<u128>(odd_count) * t / workers);
            const auto hi = static_cast<std::uint64_t>(
                static_cast<u128>(odd_count) * (t + 1) / workers);
            try {
                for (std::uint64_t i = lo; i < hi; ++i) visit(parts[t], 2 * i + 1);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    Acc acc = std::move(parts[0]);
    for (unsigned t = 1; t < workers; ++t) acc.merge(parts[t]);
    return acc;
}

/// Counts of n-tuple patterns over all odd m <= limit. Tuples with a
/// repeated coordinate (m = 1 always, the repunit family for n >= 3) are
/// tallied separately, never folded into a pattern bucket, so
/// sum(counts) + repeated == denominator holds exactly.
struct PatternCensus {
    int n = 1;
    std::uint64_t limit = 0;
    std::uint64_t denominator = 0;   // number of odd integers in [1, limit]
    std::uint64_t repeated = 0;
    std::map<PermPattern, std::uint64_t> counts;   // nonzero entries only

    std::uint64_t count(const PermPattern& sigma) const {
        const auto it = counts.find(sigma);
        return it == counts.end() ? 0 : it->second;
    }
    double ratio(const PermPattern& sigma) const {
        return denominator == 0 ? 0.0
                                : static_cast<double>(count(sigma)) / static_cast<double>(denominator);
    }
};

namespace detail {

struct SlotAcc {
    std::vector<std::uint64_t> slots;
    explicit SlotAcc(std::size_t size) : slots(size, 0) {}
    void merge(const SlotAcc& other) {
        for (std::size_t i = 0; i < slots.size(); ++i) slots[i] += other.slots[i];
    }
};

}  // namespace detail

inline PatternCensus pattern_census(std::uint64_t limit, int n, unsigned workers = 0) {
    if (limit < 1) throw std::invalid_argument("census bound must be >= 1");
    if (n < 1 || n > max_pattern_len)
        throw std::invalid_argument("tuple length must be in [1, 8]");

    const int nfact = factorial[n];
    auto acc = sweep_odd(
        limit, workers, detail::SlotAcc(static_cast<std::size_t>(nfact) + 1),
        [n, nfact](detail::SlotAcc& a, std::uint64_t m) {
            u128 x[max_pattern_len];
            x[0] = m;
            for (int j = 1; j < n; ++j) x[j] = detail::syracuse_step_raw(x[j - 1]).next;
            const int idx = detail::lehmer_index(x, n);
            ++a.slots[idx < 0 ? static_cast<std::size_t>(nfact)
                              : static_cast<std::size_t>(idx)];
        });

    PatternCensus census;
    census.n = n;
    census.limit = limit;
    census.denominator = (limit + 1) / 2;
    census.repeated = acc.slots[static_cast<std::size_t>(nfact)];
    for (int idx = 0; idx < nfact; ++idx)
        if (acc.slots[static_cast<std::size_t>(idx)] != 0)
            census.counts.emplace(PermPattern::from_index(n, idx),
                                  acc.slots[static_cast<std::size_t>(idx)]);
    return census;
}

struct DensityEstimate {
    std::uint64_t count = 0;
    double ratio = 0.0;
};

inline DensityEstimate density_estimate(const PatternCensus& census, const PermPattern& sigma) {
    if (sigma.size() != census.n)
        throw std::invalid_argument("pattern length does not match census tuple length");
    return {census.count(sigma), census.ratio(sigma)};
}

/// Patterns seen in a sweep versus the ones provably absent. For n = 4
/// the impossible set is the four proven patterns; longer lengths carry
/// them forward by appending n+1 (a pattern that never occurs stays
/// impossible under that lift).
struct FeasibilityReport {
    int n = 1;
    std::uint64_t limit = 0;
    std::set<PermPattern> observed;
    std::set<PermPattern> unobserved;
    std::set<PermPattern> proved_impossible;
};

inline std::set<PermPattern> proved_impossible_patterns(int n) {
    std::set<PermPattern> out;
    if (n < 4) return out;
    for (const auto& p : impossible_quad_patterns()) {
        PermPattern lifted = p;
        for (int len = 4; len < n; ++len) lifted = lifted.lifted();
        out.insert(lifted);
    }
    return out;
}

inline FeasibilityReport feasibility_report(std::uint64_t limit, int n, unsigned workers = 0) {
    const PatternCensus census = pattern_census(limit, n, workers);
    FeasibilityReport report;
    report.n = n;
    report.limit = limit;
    for (const auto& [sigma, cnt] : census.counts) report.observed.insert(sigma);
    for (int idx = 0; idx < factorial[n]; ++idx) {
        PermPattern sigma = PermPattern::from_index(n, idx);
        if (!report.observed.contains(sigma)) report.unobserved.insert(sigma);
    }
    report.proved_impossible = proved_impossible_patterns(n);
    return report;
}

/// Least k <= cap with S^k(m) < m, or nullopt for "no drop within cap"
/// (which is all the sweep can decide; it never claims the drop is infinite).
inline std::optional<int> dropping_time(OddInt m, int cap = 256) {
    if (m.value() == 1) throw std::domain_error("dropping time is defined for odd m > 1");
    if (cap < 1) throw std::invalid_argument("cap must be >= 1");
    u128 cur = m.value();
    for (int k = 1; k <= cap; ++k) {
        cur = detail::syracuse_step_raw(cur).next;
        if (cur < m.value()) return k;
    }
    return std::nullopt;
}

/// Counts of odd 1 < m <= limit by dropping time, tabulated to k_max;
/// everything that has not dropped by then is undecided, never dropped.
struct DroppingStats {
    std::uint64_t limit = 0;
    int k_max = 1;
    std::vector<std::uint64_t> by_dropping_time;   // index k in [1, k_max]
    std::uint64_t undecided = 0;

    std::uint64_t cumulative(int k) const {   // N_k
        std::uint64_t total = 0;
        for (int j = 1; j <= k; ++j) total += by_dropping_time[static_cast<std::size_t>(j)];
        return total;
    }
    // Ratios follow the x/2 denominator convention of the density limits.
    double ratio(int k) const {
        return static_cast<double>(cumulative(k)) / (static_cast<double>(limit) / 2.0);
    }
};

inline DroppingStats dropping_census(std::uint64_t limit, int k_max, unsigned workers = 0) {
    if (limit < 3) throw std::invalid_argument("dropping census needs limit >= 3");
    if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");

    auto acc = sweep_odd(
        limit, workers, detail::SlotAcc(static_cast<std::size_t>(k_max) + 2),
        [k_max](detail::SlotAcc& a, std::uint64_t m) {
            if (m == 1) return;
            u128 cur = m;
            for (int k = 1; k <= k_max; ++k) {
                cur = detail::syracuse_step_raw(cur).next;
                if (cur < m) {
                    ++a.slots[static_cast<std::size_t>(k)];
                    return;
                }
            }
            ++a.slots[static_cast<std::size_t>(k_max) + 1];
        });

    DroppingStats stats;
    stats.limit = limit;
    stats.k_max = k_max;
    stats.by_dropping_time.assign(acc.slots.begin(),
                                  acc.slots.begin() + k_max + 1);
    stats.undecided = acc.slots[static_cast<std::size_t>(k_max) + 1];
    return stats;
}

/// Joint counts of (triple pattern, quadruple pattern) over odd m <= limit,
/// the empirical refinement of each triple class into quadruple classes.
struct ConditionalQuadCensus {
    std::uint64_t limit = 0;
    std::uint64_t denominator = 0;
    std::map<std::pair<PermPattern, PermPattern>, std::uint64_t> counts;
    std::uint64_t triple_repeated = 0;   // repeats already within (m, S, S^2)
    std::uint64_t quad_repeated = 0;     // triple distinct, S^3 collides

    std::uint64_t count(const PermPattern& triple, const PermPattern& quad) const {
        const auto it = counts.find({triple, quad});
        return it == counts.end() ? 0 : it->second;
    }
    double ratio(const PermPattern& triple, const PermPattern& quad) const {
        return static_cast<double>(count(triple, quad)) / static_cast<double>(denominator);
    }
};

inline ConditionalQuadCensus conditional_quad_densities(std::uint64_t limit,
                                                        unsigned workers = 0) {
    if (limit < 1) throw std::invalid_argument("census bound must be >= 1");
    // slots: 6*24 joint buckets, then quad-repeated, then triple-repeated
    constexpr std::size_t joint = 6 * 24;
    auto acc = sweep_odd(
        limit, workers, detail::SlotAcc(joint + 2),
        [](detail::SlotAcc& a, std::uint64_t m) {
            u128 x[4];
            x[0] = m;
            for (int j = 1; j < 4; ++j) x[j] = detail::syracuse_step_raw(x[j - 1]).next;
            const int t = detail::lehmer_index(x, 3);
            if (t < 0) {
                ++a.slots[joint + 1];
                return;
            }
            const int q = detail::lehmer_index(x, 4);
            if (q < 0) {
                ++a.slots[joint];
                return;
            }
            ++a.slots[static_cast<std::size_t>(t) * 24 + static_cast<std::size_t>(q)];
        });

    ConditionalQuadCensus census;
    census.limit = limit;
    census.denominator = (limit + 1) / 2;
    census.quad_repeated = acc.slots[joint];
    census.triple_repeated = acc.slots[joint + 1];
    for (int t = 0; t < 6; ++t)
        for (int q = 0; q < 24; ++q) {
            const auto c = acc.slots[static_cast<std::size_t>(t) * 24 + static_cast<std::size_t>(q)];
            if (c != 0)
                census.counts.emplace(
                    std::pair{PermPattern::from_index(3, t), PermPattern::from_index(4, q)}, c);
        }
    return census;
}

}  // namespace syra
