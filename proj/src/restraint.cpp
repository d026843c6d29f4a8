#include "ershov/restraint.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace ershov {

namespace {

/// Union-find over [0, size) keeping the least element as root.
class DisjointSets {
public:
    explicit DisjointSets(std::uint64_t size)
        : parent_(size)
    {
        std::iota(parent_.begin(), parent_.end(), std::uint64_t{0});
    }

    std::uint64_t find(std::uint64_t x)
    {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::uint64_t x, std::uint64_t y)
    {
        x = find(x);
        y = find(y);
        if (x != y) {
            parent_[std::max(x, y)] = std::min(x, y);
        }
    }

private:
    std::vector<std::uint64_t> parent_;
};

std::uint64_t element_bound(std::uint64_t len)
{
    // Every code below len decodes to coordinates no larger than this.
    return len == 0 ? 0 : pair_decode(len - 1).first + pair_decode(len - 1).second + 1;
}

} // namespace

Bits char_prefix(Partition const& p, std::uint64_t len)
{
    Bits out(len);
    // walk the anti-diagonals x + y = d directly
    std::uint64_t c = 0;
    for (std::uint64_t d = 0; c < len; ++d) {
        for (std::uint64_t y = 0; y <= d && c < len; ++y, ++c) {
            out[c] = p.related(d - y, y) ? 1 : 0;
        }
    }
    return out;
}

bool is_prefix(Bits const& a, Bits const& b)
{
    return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

bool is_equivalence_string(Bits const& s)
{
    std::uint64_t const m = element_bound(s.size());
    DisjointSets ds(m);
    for (std::uint64_t c = 0; c < s.size(); ++c) {
        auto const [x, y] = pair_decode(c);
        if (x != y && s[c]) {
            ds.unite(x, y);
        }
    }
    for (std::uint64_t x = 0; x < m; ++x) {
        for (std::uint64_t y = 0; y < m; ++y) {
            if (x == y || ds.find(x) != ds.find(y)) {
                continue;
            }
            std::uint64_t const c = pair_code(x, y);
            if (c >= s.size() || !s[c]) {
                return false;
            }
        }
    }
    return true;
}

std::optional<Bits> least_extension(Bits const& base, std::map<std::uint64_t, bool> const& forced,
                                    std::uint64_t min_len, std::uint64_t n)
{
    std::uint64_t len = std::max<std::uint64_t>(min_len, base.size());
    if (!forced.empty()) {
        len = std::max(len, forced.rbegin()->first + 1);
    }
    std::uint64_t const m = std::max(element_bound(len), n);
    DisjointSets ds(m);
    for (std::uint64_t c = 0; c < base.size(); ++c) {
        auto const [x, y] = pair_decode(c);
        if (x != y && base[c]) {
            ds.unite(x, y);
        }
    }
    for (auto const& [c, bit] : forced) {
        auto const [x, y] = pair_decode(c);
        if (x != y && bit) {
            ds.unite(x, y);
        }
    }

    std::vector<std::vector<std::uint64_t>> classes(m);
    for (std::uint64_t x = 0; x < m; ++x) {
        classes[ds.find(x)].push_back(x);
    }
    for (auto const& cls : classes) {
        if (cls.size() < 2) {
            continue;
        }
        if (cls.back() >= n) {
            return std::nullopt;
        }
        for (std::uint64_t x : cls) {
            for (std::uint64_t y : cls) {
                if (x != y) {
                    len = std::max(len, pair_code(x, y) + 1);
                }
            }
        }
    }

    Bits out(len);
    for (std::uint64_t c = 0; c < len; ++c) {
        auto const [x, y] = pair_decode(c);
        bool const related = x == y || (x < m && y < m && ds.find(x) == ds.find(y));
        out[c] = related ? 1 : 0;
        if (c < base.size()) {
            if (x == y) {
                out[c] = base[c];
            }
            else if (out[c] != base[c]) {
                return std::nullopt;
            }
        }
        if (auto it = forced.find(c); it != forced.end()) {
            if (x == y) {
                if (c < base.size() && (base[c] != 0) != it->second) {
                    return std::nullopt;
                }
                out[c] = it->second ? 1 : 0;
            }
            else if ((out[c] != 0) != it->second) {
                return std::nullopt;
            }
        }
    }
    return out;
}

Partition string_relation(Bits const& s, std::uint64_t n)
{
    Partition p(n);
    for (std::uint64_t c = 0; c < s.size(); ++c) {
        if (!s[c]) {
            continue;
        }
        auto const [x, y] = pair_decode(c);
        if (x != y && x < n && y < n && !p.related(x, y)) {
            p.merge(x, y);
        }
    }
    return p;
}

std::string to_string(Bits const& s)
{
    std::string out(s.size(), '0');
    for (std::size_t i = 0; i < s.size(); ++i) {
        out[i] = s[i] ? '1' : '0';
    }
    return out;
}

Bits bits_from_string(std::string const& s)
{
    Bits out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '0' && s[i] != '1') {
            throw std::invalid_argument("bit string may only contain 0 and 1");
        }
        out[i] = s[i] == '1';
    }
    return out;
}

} // namespace ershov
