#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "syra/census.hpp"
#include "syra/classify.hpp"
#include "syra/core.hpp"
#include "syra/pattern.hpp"
#include "syra/report.hpp"

namespace syra {

struct CheckResult {
    std::string name;
    bool ok = true;
    std::string detail;   // least counterexample, or a short note
};

struct SuiteReport {
    std::vector<CheckResult> checks;
    bool ok() const {
        for (const auto& c : checks)
            if (!c.ok) return false;
        return true;
    }
};

/// For k = 1..k_max and each of the four lemma families, the first
/// `members` elements must realize the family's triple pattern and the
/// classifier must fire that family at that depth; family members that
/// land in the repunit set must map to 1 instead.
inline SuiteReport verify_lemmas(int k_max = 8, int members = 1000) {
    SuiteReport report;
    for (int k = 1; k <= k_max; ++k) {
        for (int lemma = 1; lemma <= 4; ++lemma) {
            const ResidueClass cls = lemma_family_class(lemma, k);
            const PermPattern want = lemma_pattern(lemma);
            CheckResult check{std::string(lemma_rule_id(lemma)) + "(k=" + std::to_string(k) + ")",
                              true, ""};
            for (int i = 0; i < members; ++i) {
                const u128 m = cls.residue + cls.modulus * static_cast<u128>(i);
                const OddInt odd(m);
                if (repunit4_index(odd)) {
                    if (syracuse_step(odd).next.value() != 1) {
                        check = {check.name, false, "repunit member m=" + to_string(m) +
                                                        " does not map to 1"};
                        break;
                    }
                    continue;
                }
                const auto observed = tuple_pattern(odd, 3);
                const auto predicted = classify_triple(odd);
                if (!observed || *observed != want ||
                    predicted.outcome != TripleOutcome::Pattern || *predicted.pattern != want ||
                    std::string(predicted.rule) != lemma_rule_id(lemma) || predicted.k != k) {
                    check = {check.name, false, "m=" + to_string(m)};
                    break;
                }
            }
            report.checks.push_back(std::move(check));
        }
    }
    return report;
}

namespace detail {

struct NamedPartition {
    std::string name;
    ResidueClass parent;
    std::vector<ResidueClass> children;
};

inline std::vector<NamedPartition> standard_partitions(u128 bound) {
    std::vector<NamedPartition> parts;
    // Five fixed triple classes plus 5 (mod 8) tile the odd integers.
    parts.push_back({"odd-integers",
                     {1, 2},
                     {{7, 8}, {9, 16}, {11, 16}, {3, 16}, {1, 16}, {5, 8}}});
    // Recursive splits of the descending classes.
    parts.push_back({"5mod8",
                     {5, 8},
                     {{13, 32}, {5, 64}, {29, 32}, {37, 64}, {21, 32}}});
    parts.push_back({"21mod32",
                     {21, 32},
                     {{53, 128}, {21, 256}, {117, 128}, {149, 256}, {85, 128}}});
    // Quadruple refinements.
    parts.push_back({"7mod8", {7, 8}, {{15, 16}, {7, 32}, {23, 32}}});
    parts.push_back({"11mod16", {11, 16}, {{11, 32}, {27, 32}}});
    parts.push_back({"9mod16", {9, 16}, {{9, 32}, {25, 64}, {57, 64}}});
    // Generic depth-k splits, as deep as the bound allows.
    for (int k = 1; lemma_family_class(2, k).modulus <= bound; ++k) {
        parts.push_back({"family-depth-" + std::to_string(k),
                         continuation_class(k),
                         {lemma_family_class(1, k), lemma_family_class(2, k),
                          lemma_family_class(3, k), lemma_family_class(4, k),
                          continuation_class(k + 1)}});
    }
    return parts;
}

}  // namespace detail

/// Every congruence-class partition the classifier relies on, checked
/// exhaustively over [1, bound].
inline SuiteReport verify_partitions(u128 bound = 1'000'000) {
    SuiteReport report;
    for (const auto& part : detail::standard_partitions(bound)) {
        const auto result = verify_partition(part.parent, part.children, bound);
        report.checks.push_back(
            {"partition-" + part.name, result.ok,
             result.ok ? "" : "counterexample " + to_string(result.counterexample)});
    }
    return report;
}

namespace detail {

struct EquivAcc {
    std::uint64_t triple_bad = 0;       // least violating m, 0 = none
    std::uint64_t quad_bad = 0;
    std::uint64_t impossible_seen = 0;
    void merge(const EquivAcc& o) {
        const auto take = [](std::uint64_t& mine, std::uint64_t theirs) {
            if (theirs != 0 && (mine == 0 || theirs < mine)) mine = theirs;
        };
        take(triple_bad, o.triple_bad);
        take(quad_bad, o.quad_bad);
        take(impossible_seen, o.impossible_seen);
    }
};

}  // namespace detail

/// Element-by-element agreement between the residue classifiers and the
/// directly computed patterns, plus absence of the four impossible
/// quadruple patterns, for all odd m <= limit.
inline SuiteReport verify_classifier(std::uint64_t limit, unsigned workers = 0) {
    static const auto impossible = proved_impossible_patterns(4);
    const auto acc = sweep_odd(
        limit, workers, detail::EquivAcc{},
        [](detail::EquivAcc& a, std::uint64_t m) {
            const OddInt odd{m};
            const auto triple = tuple_pattern(odd, 3);
            const auto predicted3 = classify_triple(odd);
            const bool triple_ok =
                predicted3.outcome == TripleOutcome::Pattern
                    ? (triple && *triple == *predicted3.pattern)
                    : !triple;   // Unit and ReachesOne are exactly the repeats
            if (!triple_ok && (a.triple_bad == 0 || m < a.triple_bad)) a.triple_bad = m;

            const auto quad = tuple_pattern(odd, 4);
            const auto predicted4 = classify_quad(odd);
            bool quad_ok = true;
            if (predicted4.outcome == QuadOutcome::Pattern)
                quad_ok = quad && *quad == *predicted4.pattern;
            else if (predicted4.outcome != QuadOutcome::OutOfRuleDomain)
                quad_ok = !quad;
            if (!quad_ok && (a.quad_bad == 0 || m < a.quad_bad)) a.quad_bad = m;

            if (quad && impossible.contains(*quad) &&
                (a.impossible_seen == 0 || m < a.impossible_seen))
                a.impossible_seen = m;
        });

    SuiteReport report;
    report.checks.push_back({"triple-oracle-equivalence", acc.triple_bad == 0,
                             acc.triple_bad ? "counterexample " + std::to_string(acc.triple_bad)
                                            : ""});
    report.checks.push_back({"quad-oracle-equivalence", acc.quad_bad == 0,
                             acc.quad_bad ? "counterexample " + std::to_string(acc.quad_bad)
                                          : ""});
    report.checks.push_back(
        {"quad-impossibility", acc.impossible_seen == 0,
         acc.impossible_seen ? "counterexample " + std::to_string(acc.impossible_seen) : ""});
    return report;
}

inline constexpr std::uint64_t golden_limits[] = {100, 1000, 10000};
inline constexpr int golden_lengths[] = {2, 3, 4};

inline std::string golden_file_name(std::uint64_t limit, int n) {
    return "census_M" + std::to_string(limit) + "_n" + std::to_string(n) + ".csv";
}

/// Re-runs the small censuses and compares their CSV bodies byte for
/// byte against the committed golden files.
inline SuiteReport verify_goldens(const std::string& dir, unsigned workers = 0) {
    SuiteReport report;
    for (const auto limit : golden_limits) {
        for (const auto n : golden_lengths) {
            const std::string name = golden_file_name(limit, n);
            CheckResult check{"golden-" + name, true, ""};
            std::ifstream in(dir + "/" + name, std::ios::binary);
            if (!in) {
                check = {check.name, false, "missing file " + dir + "/" + name};
            } else {
                std::ostringstream want;
                want << in.rdbuf();
                const std::string got = census_csv(pattern_census(limit, n, workers));
                if (got != want.str()) check = {check.name, false, "census body differs"};
            }
            report.checks.push_back(std::move(check));
        }
    }
    return report;
}

}  // namespace syra
