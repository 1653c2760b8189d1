#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <string>

#include "syra/classify.hpp"
#include "syra/pattern.hpp"
#include "syra/verify.hpp"

using namespace syra;

namespace {

void expect_pattern(std::uint64_t m, const PermPattern& want, const char* rule, int k = 0) {
    const auto got = classify_triple(OddInt(m));
    REQUIRE(got.outcome == TripleOutcome::Pattern);
    CHECK(*got.pattern == want);
    CHECK(std::string(got.rule) == rule);
    CHECK(got.k == k);
}

}  // namespace

TEST_CASE("residue classes") {
    const ResidueClass cls{5, 8};
    CHECK(cls.contains(5));
    CHECK(cls.contains(13));
    CHECK_FALSE(cls.contains(7));
    CHECK(cls.to_string() == "5 mod 8");
    CHECK_THROWS_AS(ResidueClass(8, 8), std::invalid_argument);
}

TEST_CASE("triple classification outside 5 mod 8") {
    expect_pattern(7, {1, 2, 3}, "7mod8");
    expect_pattern(15, {1, 2, 3}, "7mod8");
    expect_pattern(9, {2, 1, 3}, "9mod16");
    expect_pattern(11, {1, 3, 2}, "11mod16");
    expect_pattern(3, {2, 3, 1}, "3mod16");
    expect_pattern(17, {3, 2, 1}, "1mod16");
}

TEST_CASE("triple classification inside 5 mod 8") {
    expect_pattern(13, {3, 2, 1}, "Lemma1", 1);
    expect_pattern(29, {3, 1, 2}, "Lemma3", 1);
    expect_pattern(37, {3, 1, 2}, "Lemma4", 1);
    expect_pattern(69, {3, 2, 1}, "Lemma2", 1);    // 69 = 5 + 64
    expect_pattern(53, {3, 2, 1}, "Lemma1", 2);    // 53 mod 128
    expect_pattern(117, {3, 1, 2}, "Lemma3", 2);   // 117 mod 128
    expect_pattern(149, {3, 1, 2}, "Lemma4", 2);   // 149 mod 256
    expect_pattern(277, {3, 2, 1}, "Lemma2", 2);   // 277 = 21 + 256
    expect_pattern(661, {3, 1, 2}, "Lemma4", 2);   // 661 = 149 + 512
}

TEST_CASE("unit and repunit outcomes") {
    const auto unit = classify_triple(OddInt(1));
    CHECK(unit.outcome == TripleOutcome::Unit);

    const auto r1 = classify_triple(OddInt(5));
    CHECK(r1.outcome == TripleOutcome::ReachesOne);
    CHECK(r1.k == 1);

    const auto r3 = classify_triple(OddInt(85));
    CHECK(r3.outcome == TripleOutcome::ReachesOne);
    CHECK(r3.k == 3);

    CHECK(classify_triple(OddInt(21)).outcome == TripleOutcome::ReachesOne);
    CHECK(classify_triple(OddInt(341)).outcome == TripleOutcome::ReachesOne);
}

TEST_CASE("quadruple classification") {
    const auto check = [](std::uint64_t m, const PermPattern& want, const char* rule) {
        const auto got = classify_quad(OddInt(m));
        REQUIRE(got.outcome == QuadOutcome::Pattern);
        CHECK(*got.pattern == want);
        CHECK(std::string(got.rule) == rule);
    };
    check(15, {1, 2, 3, 4}, "15mod16");
    check(7, {1, 2, 4, 3}, "7mod32");
    check(23, {2, 3, 4, 1}, "23mod32");
    check(27, {1, 3, 2, 4}, "27mod32");
    check(11, {2, 4, 3, 1}, "11mod32");
    check(9, {2, 1, 3, 4}, "9mod32");
    check(57, {3, 1, 4, 2}, "57mod64");
    check(25, {3, 2, 4, 1}, "25mod64");

    CHECK(classify_quad(OddInt(3)).outcome == QuadOutcome::OutOfRuleDomain);
    CHECK(classify_quad(OddInt(13)).outcome == QuadOutcome::OutOfRuleDomain);
    CHECK(classify_quad(OddInt(1)).outcome == QuadOutcome::Unit);
    CHECK(classify_quad(OddInt(5)).outcome == QuadOutcome::ReachesOne);
}

TEST_CASE("lemma family classes at the first depths") {
    CHECK(lemma_family_class(1, 1) == ResidueClass{13, 32});
    CHECK(lemma_family_class(2, 1) == ResidueClass{5, 64});
    CHECK(lemma_family_class(3, 1) == ResidueClass{29, 32});
    CHECK(lemma_family_class(4, 1) == ResidueClass{37, 64});
    CHECK(lemma_family_class(1, 2) == ResidueClass{53, 128});
    CHECK(lemma_family_class(2, 2) == ResidueClass{21, 256});
    CHECK(lemma_family_class(3, 2) == ResidueClass{117, 128});
    CHECK(lemma_family_class(4, 2) == ResidueClass{149, 256});
    CHECK(continuation_class(1) == ResidueClass{5, 8});
    CHECK(continuation_class(2) == ResidueClass{21, 32});
    CHECK(continuation_class(3) == ResidueClass{85, 128});
}

TEST_CASE("partition verification") {
    CHECK(verify_partition({7, 8}, {{15, 16}, {7, 32}, {23, 32}}, 10'000).ok);
    CHECK(verify_partition({5, 8}, {{13, 32}, {5, 64}, {29, 32}, {37, 64}, {21, 32}}, 10'000).ok);

    const auto bad = verify_partition({5, 8}, {{13, 32}}, 100);
    CHECK_FALSE(bad.ok);
    CHECK(bad.counterexample == 5);

    // overlapping children are flagged at the first doubly covered value
    const auto overlap = verify_partition({1, 2}, {{1, 4}, {3, 4}, {5, 8}}, 100);
    CHECK_FALSE(overlap.ok);
    CHECK(overlap.counterexample == 5);

    CHECK_THROWS_AS(verify_partition({5, 8}, {{13, 32}}, 4), std::invalid_argument);
}

TEST_CASE("rule tables") {
    const auto triples = classification_rules(3);
    bool has_7mod8 = false, has_lemma1 = false;
    for (const auto& rule : triples) {
        if (rule.id == "7mod8" && rule.cls == ResidueClass{7, 8} &&
            rule.pattern == PermPattern{1, 2, 3})
            has_7mod8 = true;
        if (rule.id == "Lemma1" && rule.k == 1 && rule.cls == ResidueClass{13, 32})
            has_lemma1 = true;
    }
    CHECK(has_7mod8);
    CHECK(has_lemma1);
    CHECK(triples.size() == 5 + 4 * 4);

    const auto quads = classification_rules(4);
    bool has_25mod64 = false;
    for (const auto& rule : quads)
        if (rule.id == "25mod64" && rule.pattern == PermPattern{3, 2, 4, 1}) has_25mod64 = true;
    CHECK(has_25mod64);
    CHECK(quads.size() == 8);

    CHECK_THROWS_AS(classification_rules(5), std::invalid_argument);
}

TEST_CASE("every fired rule is consistent with its own class") {
    // the class named by the rule actually contains m
    for (std::uint64_t m = 1; m <= 100'001; m += 2) {
        const auto c = classify_triple(OddInt(m));
        if (c.outcome != TripleOutcome::Pattern) continue;
        const std::string rule = c.rule;
        if (rule.starts_with("Lemma")) {
            const int lemma = rule[5] - '0';
            REQUIRE(lemma_family_class(lemma, c.k).contains(m));
        }
    }
}

TEST_CASE("classifier agrees with direct iteration to one million") {
    const auto report = verify_classifier(1'000'000);
    for (const auto& check : report.checks) {
        INFO(check.name, " ", check.detail);
        REQUIRE(check.ok);
    }
}

TEST_CASE("walk depth is bounded by the magnitude of m") {
    for (std::uint64_t m = 5; m <= 200'005; m += 8) {
        const auto c = classify_triple(OddInt(m));
        if (c.outcome != TripleOutcome::Pattern) continue;
        REQUIRE((static_cast<u128>(2) << (2 * c.k)) <= 3 * static_cast<u128>(m));
    }
}

TEST_CASE("lemma families hold at moderate depth") {
    const auto report = verify_lemmas(4, 250);
    for (const auto& check : report.checks) {
        INFO(check.name, " ", check.detail);
        REQUIRE(check.ok);
    }
}

TEST_CASE("standard partitions hold to one hundred thousand") {
    const auto report = verify_partitions(100'000);
    for (const auto& check : report.checks) {
        INFO(check.name, " ", check.detail);
        REQUIRE(check.ok);
    }
}

TEST_CASE("classification rejects values past the supported width") {
    CHECK_THROWS_AS(classify_triple(OddInt((static_cast<u128>(1) << 121) + 1)),
                    std::overflow_error);
}

TEST_CASE("some rule fires for every odd m to one hundred million") {
    struct Acc {
        std::uint64_t classified = 0;
        void merge(const Acc& o) { classified += o.classified; }
    };
    const std::uint64_t limit = 100'000'000;
    const auto acc = sweep_odd(limit, 0, Acc{}, [](Acc& a, std::uint64_t m) {
        a.classified += classify_triple(OddInt(m)).outcome == TripleOutcome::Pattern ||
                        m == 1 || repunit4_index(OddInt(m)).has_value();
    });
    CHECK(acc.classified == (limit + 1) / 2);
}
