#pragma once

// Brute-force reference implementations used only by the tests.

#include "ershov/approximation.hpp"
#include "ershov/partition.hpp"
#include "ershov/restraint.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace oracle {

using ershov::Bits;
using ershov::FiniteMap;
using ershov::Partition;

/// Every partition of [0, n), via restricted growth strings.
inline std::vector<Partition> all_partitions(std::uint64_t n)
{
    std::vector<Partition> out;
    std::vector<std::uint64_t> rgs(n, 0);
    std::function<void(std::uint64_t, std::uint64_t)> go = [&](std::uint64_t i, std::uint64_t used) {
        if (i == n) {
            std::vector<std::vector<std::uint64_t>> blocks(used);
            for (std::uint64_t x = 0; x < n; ++x) {
                blocks[rgs[x]].push_back(x);
            }
            out.push_back(Partition::from_blocks(n, blocks));
            return;
        }
        for (std::uint64_t b = 0; b <= used && (i > 0 || b == 0); ++b) {
            rgs[i] = b;
            go(i + 1, std::max(used, b + 1));
        }
    };
    go(0, 0);
    return out;
}

/// x R y <=> f(x) S f(y) for all x, y < support(R), checked pair by pair.
inline bool is_reduction(FiniteMap const& f, Partition const& r, Partition const& s)
{
    for (std::uint64_t x = 0; x < r.support(); ++x) {
        for (std::uint64_t y = 0; y < r.support(); ++y) {
            if (r.related(x, y) != s.related(f[x], f[y])) {
                return false;
            }
        }
    }
    return true;
}

/// Least reduction in lexicographic order, by counting through every map
/// [0, sup R) -> [0, bound) in that order.
inline std::optional<FiniteMap> least_reduction(Partition const& r, Partition const& s, std::uint64_t bound)
{
    std::uint64_t const n = r.support();
    if (n == 0) {
        return FiniteMap{};
    }
    if (bound == 0) {
        return std::nullopt;
    }
    FiniteMap f(n, 0);
    while (true) {
        if (is_reduction(f, r, s)) {
            return f;
        }
        std::uint64_t i = n;
        while (i > 0) {
            --i;
            if (++f[i] < bound) {
                break;
            }
            f[i] = 0;
            if (i == 0) {
                return std::nullopt;
            }
        }
    }
}

/// Least reduction in lexicographic order by depth-first search over
/// f(0), f(1), ... with values tried in increasing order. A branch is cut
/// only when its prefix already violates the reduction condition, so the
/// first complete map found is the lexicographically least one.
inline std::optional<FiniteMap> least_reduction_dfs(Partition const& r, Partition const& s, std::uint64_t bound)
{
    std::uint64_t const n = r.support();
    FiniteMap f(n);
    std::function<bool(std::uint64_t)> go = [&](std::uint64_t x) {
        if (x == n) {
            return true;
        }
        for (std::uint64_t v = 0; v < bound; ++v) {
            bool ok = true;
            for (std::uint64_t w = 0; w < x && ok; ++w) {
                ok = r.related(x, w) == s.related(v, f[w]);
            }
            f[x] = v;
            if (ok && go(x + 1)) {
                return true;
            }
        }
        return false;
    };
    if (go(0)) {
        return f;
    }
    return std::nullopt;
}

/// Relation given by the 1-bits of s plus the identity, tested directly.
inline bool equivalence_string(Bits const& s)
{
    auto bit = [&](std::uint64_t x, std::uint64_t y) {
        if (x == y) {
            return true;
        }
        std::uint64_t const c = ershov::pair_code(x, y);
        return c < s.size() && s[c] == 1;
    };
    std::uint64_t n = 0;
    for (std::uint64_t c = 0; c < s.size(); ++c) {
        auto [x, y] = ershov::pair_decode(c);
        n = std::max({n, x + 1, y + 1});
    }
    for (std::uint64_t x = 0; x < n; ++x) {
        for (std::uint64_t y = 0; y < n; ++y) {
            if (bit(x, y) != bit(y, x)) {
                return false;
            }
            for (std::uint64_t z = 0; z < n; ++z) {
                if (bit(x, y) && bit(y, z) && !bit(x, z)) {
                    return false;
                }
            }
        }
    }
    return true;
}

} // namespace oracle
