#include "ershov/restraint.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ershov;

namespace {

constexpr std::uint64_t kMaxLen = 12;

/// Least string by (length, lexicographic) satisfying the extension
/// conditions, searched by enumeration up to kMaxLen.
std::optional<Bits> brute_least(Bits const& base, std::map<std::uint64_t, bool> const& forced,
                                std::uint64_t min_len, std::uint64_t n)
{
    std::uint64_t start = std::max<std::uint64_t>(min_len, base.size());
    if (!forced.empty()) {
        start = std::max(start, forced.rbegin()->first + 1);
    }
    for (std::uint64_t len = start; len <= kMaxLen; ++len) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << len); ++mask) {
            Bits s(len);
            bool ok = true;
            for (std::uint64_t c = 0; c < len && ok; ++c) {
                s[c] = (mask >> (len - 1 - c)) & 1;
                auto const [x, y] = pair_decode(c);
                bool want_fixed = false;
                bool fixed = false;
                if (c < base.size()) {
                    want_fixed = true;
                    fixed = base[c] != 0;
                }
                if (auto it = forced.find(c); it != forced.end()) {
                    if (want_fixed && fixed != it->second) {
                        ok = false;
                    }
                    want_fixed = true;
                    fixed = it->second;
                }
                if (want_fixed) {
                    ok = ok && (s[c] != 0) == fixed;
                }
                else if (x == y) {
                    ok = ok && s[c] == 1;
                }
                if (x != y && s[c] && (x >= n || y >= n)) {
                    ok = false;
                }
            }
            if (ok && oracle::equivalence_string(s)) {
                return s;
            }
        }
    }
    return std::nullopt;
}

} // namespace

TEST(Restraint, CharPrefixAndPrefix)
{
    auto const p = Partition::from_blocks(3, {{0, 2}, {1}});
    Bits const s = char_prefix(p, 6);
    // codes 0..5 are (0,0),(1,0),(0,1),(2,0),(1,1),(0,2)
    EXPECT_EQ(to_string(s), "100111");
    EXPECT_TRUE(is_prefix(Bits{1, 0}, s));
    EXPECT_FALSE(is_prefix(Bits{1, 1}, s));
    EXPECT_FALSE(is_prefix(char_prefix(p, 7), s));
    EXPECT_TRUE(is_equivalence_string(s));
    EXPECT_EQ(string_relation(s, 3), p);
}

TEST(Restraint, CharPrefixesOfPartitionsAreEquivalenceStrings)
{
    for (auto const& p : oracle::all_partitions(5)) {
        for (std::uint64_t len : {0u, 3u, 10u, 15u}) {
            Bits const s = char_prefix(p, len);
            EXPECT_EQ(is_equivalence_string(s), oracle::equivalence_string(s)) << to_string(s);
        }
    }
}

TEST(Restraint, EquivalenceStringMatchesOracleOnAllShortStrings)
{
    for (std::uint64_t len = 0; len <= 12; ++len) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << len); ++mask) {
            Bits s(len);
            for (std::uint64_t c = 0; c < len; ++c) {
                s[c] = mask >> c & 1;
            }
            ASSERT_EQ(is_equivalence_string(s), oracle::equivalence_string(s)) << to_string(s);
        }
    }
}

TEST(Restraint, LeastExtensionMatchesBruteForce)
{
    std::mt19937_64 rng(21);
    int compared = 0;
    for (int trial = 0; trial < 120; ++trial) {
        std::uint64_t const n = 1 + rng() % 4;
        Partition p(n);
        for (int k = 0; k < 2; ++k) {
            std::uint64_t const x = rng() % n;
            std::uint64_t const y = rng() % n;
            if (!p.related(x, y)) {
                p.merge(x, y);
            }
        }
        Bits const base = char_prefix(p, rng() % 6);
        std::map<std::uint64_t, bool> forced;
        for (int k = 0; k < 2; ++k) {
            if (rng() % 2) {
                forced[rng() % 10] = rng() % 2;
            }
        }
        std::uint64_t const min_len = rng() % 9;
        auto const got = least_extension(base, forced, min_len, n);
        auto const want = brute_least(base, forced, min_len, n);
        if (got && got->size() > kMaxLen) {
            EXPECT_FALSE(want.has_value());
            continue;
        }
        ++compared;
        ASSERT_EQ(got, want) << "base " << to_string(base) << " min " << min_len << " n " << n;
        if (got) {
            EXPECT_TRUE(is_equivalence_string(*got));
            EXPECT_TRUE(is_prefix(base, *got));
        }
    }
    EXPECT_GT(compared, 60);
}

TEST(Restraint, LeastExtensionExamples)
{
    EXPECT_EQ(to_string(*least_extension({}, {}, 3, 4)), "100");
    // Forcing 0 ~ 1 also forces the symmetric bit.
    auto const s = least_extension({}, {{pair_code(0, 1), true}}, 0, 2);
    ASSERT_TRUE(s.has_value());
    EXPECT_EQ(to_string(*s), "111");
    EXPECT_FALSE(least_extension({}, {{pair_code(0, 1), true}}, 0, 1).has_value());
    EXPECT_FALSE(least_extension({1, 1}, {{pair_code(0, 1), false}}, 0, 3).has_value());
}

TEST(Restraint, BitsFromString)
{
    EXPECT_EQ(bits_from_string("1010"), (Bits{1, 0, 1, 0}));
    EXPECT_EQ(to_string(bits_from_string("")), "");
    EXPECT_THROW(bits_from_string("102"), std::invalid_argument);
}
