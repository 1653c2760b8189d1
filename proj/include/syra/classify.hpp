#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "syra/core.hpp"
#include "syra/int128.hpp"
#include "syra/pattern.hpp"

namespace syra {

/// Congruence class r (mod M).
struct ResidueClass {
    u128 residue = 0;
    u128 modulus = 1;

    ResidueClass(u128 r, u128 m) : residue(r), modulus(m) {
        if (m < 1 || r >= m) throw std::invalid_argument("residue class requires 0 <= r < M");
    }

    bool contains(u128 v) const noexcept { return v % modulus == residue; }

    std::string to_string() const {
        return syra::to_string(residue) + " mod " + syra::to_string(modulus);
    }

    friend bool operator==(const ResidueClass&, const ResidueClass&) = default;
};

enum class TripleOutcome { Pattern, ReachesOne, Unit };

/// Predicted pattern of (m, S(m), S^2(m)) with the rule that fired.
/// ReachesOne marks the repunit family (S(m) = 1, so the triple repeats);
/// Unit marks m = 1.
struct TripleClassification {
    TripleOutcome outcome;
    std::optional<PermPattern> pattern;   // set iff outcome == Pattern
    const char* rule;
    int k = 0;                            // family depth, or repunit index for ReachesOne
};

enum class QuadOutcome { Pattern, OutOfRuleDomain, ReachesOne, Unit };

struct QuadClassification {
    QuadOutcome outcome;
    std::optional<PermPattern> pattern;
    const char* rule;
    int k = 0;
};

namespace detail {

// Family moduli grow to 4^{k+2} with 2*4^k < m; keeping m under 2^120
// guarantees every modulus the walk can need still fits in 128 bits.
inline constexpr u128 classify_m_limit = static_cast<u128>(1) << 120;

inline void check_classifiable(u128 m) {
    if (m >= classify_m_limit)
        throw std::overflow_error("classification supports m < 2^120, got m=" + to_string(m));
}

}  // namespace detail

/// The four congruence families, depth k >= 1, that partition the
/// descending part of 5 (mod 8):
///   lemma 1: repunit4(k)   + 2*4^k   (mod 2*4^{k+1})  -> (3,2,1)
///   lemma 2: repunit4(k)              (mod 4^{k+2})   -> (3,2,1)
///   lemma 3: repunit4(k+1) + 2*4^k   (mod 2*4^{k+1})  -> (3,1,2)
///   lemma 4: repunit4(k+1) + 4^{k+1} (mod 4^{k+2})    -> (3,1,2)
inline ResidueClass lemma_family_class(int lemma, int k) {
    if (lemma < 1 || lemma > 4) throw std::invalid_argument("lemma must be 1..4");
    if (k < 1 || k > 60) throw std::invalid_argument("family depth out of range");
    const u128 four_k = static_cast<u128>(1) << (2 * k);
    switch (lemma) {
        case 1: return {repunit4(k) + 2 * four_k, 8 * four_k};
        case 2: return {repunit4(k), 16 * four_k};
        case 3: return {repunit4(k + 1) + 2 * four_k, 8 * four_k};
        default: return {repunit4(k + 1) + 4 * four_k, 16 * four_k};
    }
}

/// The continuation class at depth k: repunit4(k) (mod 2*4^k). Depth k+1
/// of the walk applies exactly to its members.
inline ResidueClass continuation_class(int k) {
    if (k < 1 || k > 61) throw std::invalid_argument("family depth out of range");
    return {repunit4(k), static_cast<u128>(1) << (2 * k + 1)};
}

inline PermPattern lemma_pattern(int lemma) {
    return lemma <= 2 ? PermPattern{3, 2, 1} : PermPattern{3, 1, 2};
}

inline const char* lemma_rule_id(int lemma) {
    static constexpr const char* ids[4] = {"Lemma1", "Lemma2", "Lemma3", "Lemma4"};
    return ids[lemma - 1];
}

/// Pattern of (m, S(m), S^2(m)) predicted from the residue of m alone.
///
/// Outside 5 (mod 8) a fixed five-row table decides. Inside 5 (mod 8) the
/// classifier walks the recursive partition: at depth k it tries the four
/// lemma families, then descends into the continuation class; members of
/// the repunit family short-circuit to ReachesOne before the walk.
inline TripleClassification classify_triple(OddInt m) {
    const u128 v = m.value();
    detail::check_classifiable(v);
    if (v == 1) return {TripleOutcome::Unit, std::nullopt, "m=1", 0};
    if (const auto k = repunit4_index(m))
        return {TripleOutcome::ReachesOne, std::nullopt, "R0", *k};

    switch (static_cast<unsigned>(v & 15)) {
        case 7:
        case 15: return {TripleOutcome::Pattern, PermPattern{1, 2, 3}, "7mod8", 0};
        case 9:  return {TripleOutcome::Pattern, PermPattern{2, 1, 3}, "9mod16", 0};
        case 11: return {TripleOutcome::Pattern, PermPattern{1, 3, 2}, "11mod16", 0};
        case 3:  return {TripleOutcome::Pattern, PermPattern{2, 3, 1}, "3mod16", 0};
        case 1:  return {TripleOutcome::Pattern, PermPattern{3, 2, 1}, "1mod16", 0};
        default: break;   // 5 or 13: the 5 (mod 8) walk below
    }

    // Reaching depth k needs v > 2*4^k, so the cap never binds for a
    // sound walk; it turns a would-be infinite loop into a detectable bug.
    const int depth_cap = std::min(bit_width(v) / 2 + 3, 59);
    for (int k = 1; k <= depth_cap; ++k) {
        for (int lemma = 1; lemma <= 4; ++lemma) {
            if (lemma_family_class(lemma, k).contains(v))
                return {TripleOutcome::Pattern, lemma_pattern(lemma), lemma_rule_id(lemma), k};
        }
        if (!continuation_class(k + 1).contains(v)) break;
    }
    throw std::logic_error("triple classification partition violated at m=" + to_string(v));
}

namespace detail {

struct QuadRule {
    unsigned residue;
    unsigned modulus;
    PermPattern pattern;
    const char* id;
};

inline const std::vector<QuadRule>& quad_rules() {
    static const std::vector<QuadRule> rules = {
        {15, 16, {1, 2, 3, 4}, "15mod16"},
        {7, 32, {1, 2, 4, 3}, "7mod32"},
        {23, 32, {2, 3, 4, 1}, "23mod32"},
        {27, 32, {1, 3, 2, 4}, "27mod32"},
        {11, 32, {2, 4, 3, 1}, "11mod32"},
        {9, 32, {2, 1, 3, 4}, "9mod32"},
        {57, 64, {3, 1, 4, 2}, "57mod64"},
        {25, 64, {3, 2, 4, 1}, "25mod64"},
    };
    return rules;
}

}  // namespace detail

/// Pattern of (m, S(m), S^2(m), S^3(m)) predicted from the residue of m,
/// covering the classes that refine triple patterns (1,2,3), (1,3,2) and
/// (2,1,3). Everything else is OutOfRuleDomain: the prediction rules stop
/// there, and the census measures those residues empirically instead.
inline QuadClassification classify_quad(OddInt m) {
    const u128 v = m.value();
    detail::check_classifiable(v);
    if (v == 1) return {QuadOutcome::Unit, std::nullopt, "m=1", 0};
    if (const auto k = repunit4_index(m))
        return {QuadOutcome::ReachesOne, std::nullopt, "R0", *k};
    const unsigned low = static_cast<unsigned>(v & 63);
    for (const auto& r : detail::quad_rules())
        if (low % r.modulus == r.residue)
            return {QuadOutcome::Pattern, r.pattern, r.id, 0};
    return {QuadOutcome::OutOfRuleDomain, std::nullopt, "uncovered", 0};
}

/// Checks that the children tile the parent exactly over [1, bound]:
/// every member of the parent lies in exactly one child and no child
/// leaks outside the parent. Returns the least violating integer.
struct PartitionCheck {
    bool ok = true;
    u128 counterexample = 0;
};

inline PartitionCheck verify_partition(const ResidueClass& parent,
                                       const std::vector<ResidueClass>& children,
                                       u128 bound) {
    if (bound < parent.modulus)
        throw std::invalid_argument("bound must reach the parent modulus");
    for (const auto& ch : children)
        if (bound < ch.modulus)
            throw std::invalid_argument("bound must reach every child modulus");
    for (u128 v = 1; v <= bound; ++v) {
        int hits = 0;
        for (const auto& ch : children) hits += ch.contains(v);
        const int want = parent.contains(v) ? 1 : 0;
        if (hits != want) return {false, v};
    }
    return {true, 0};
}

/// One row of the classification tables, exported for docs and tests.
/// Family rows (the four lemmas) are instantiated per depth k.
struct ClassificationRule {
    std::string id;
    ResidueClass cls;
    PermPattern pattern;
    std::optional<int> k;   // set for family instances
};

inline std::vector<ClassificationRule> classification_rules(int level, int k_families = 4) {
    if (level != 3 && level != 4) throw std::invalid_argument("rule level must be 3 or 4");
    std::vector<ClassificationRule> out;
    if (level == 3) {
        out.push_back({"7mod8", {7, 8}, {1, 2, 3}, std::nullopt});
        out.push_back({"9mod16", {9, 16}, {2, 1, 3}, std::nullopt});
        out.push_back({"11mod16", {11, 16}, {1, 3, 2}, std::nullopt});
        out.push_back({"3mod16", {3, 16}, {2, 3, 1}, std::nullopt});
        out.push_back({"1mod16", {1, 16}, {3, 2, 1}, std::nullopt});
        for (int k = 1; k <= k_families; ++k)
            for (int lemma = 1; lemma <= 4; ++lemma)
                out.push_back({lemma_rule_id(lemma), lemma_family_class(lemma, k),
                               lemma_pattern(lemma), k});
    } else {
        for (const auto& r : detail::quad_rules())
            out.push_back({r.id, {r.residue, r.modulus}, r.pattern, std::nullopt});
    }
    return out;
}

/// The four length-4 patterns no Syracuse quadruple realizes.
inline const std::vector<PermPattern>& impossible_quad_patterns() {
    static const std::vector<PermPattern> patterns = {
        {1, 3, 4, 2}, {1, 4, 2, 3}, {1, 4, 3, 2}, {2, 1, 4, 3}};
    return patterns;
}

}  // namespace syra
