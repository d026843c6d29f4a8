#include "ershov/partition.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ershov {

Partition::Partition(std::uint64_t support)
    : rep_(support)
{
    std::iota(rep_.begin(), rep_.end(), std::uint64_t{0});
}

Partition Partition::from_blocks(std::uint64_t support,
                                 std::vector<std::vector<std::uint64_t>> const& blocks)
{
    Partition p(support);
    std::vector<bool> seen(support, false);
    for (auto const& block : blocks) {
        if (block.empty()) {
            throw std::invalid_argument("partition: empty block");
        }
        std::uint64_t const least = *std::min_element(block.begin(), block.end());
        for (std::uint64_t x : block) {
            if (x >= support || seen[x]) {
                throw std::invalid_argument("partition: blocks overlap or leave the support");
            }
            seen[x] = true;
            p.rep_[x] = least;
        }
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw std::invalid_argument("partition: blocks do not cover the support");
    }
    return p;
}

std::vector<std::uint64_t> Partition::class_of(std::uint64_t x) const
{
    if (x >= support()) {
        return {x};
    }
    std::vector<std::uint64_t> out;
    for (std::uint64_t y = rep_[x]; y < support(); ++y) {
        if (rep_[y] == rep_[x]) {
            out.push_back(y);
        }
    }
    return out;
}

std::vector<std::vector<std::uint64_t>> Partition::blocks() const
{
    std::vector<std::vector<std::uint64_t>> out;
    std::vector<std::size_t> slot(support());
    for (std::uint64_t x = 0; x < support(); ++x) {
        if (rep_[x] == x) {
            slot[x] = out.size();
            out.push_back({x});
        }
        else {
            out[slot[rep_[x]]].push_back(x);
        }
    }
    return out;
}

std::uint64_t Partition::class_count() const
{
    std::uint64_t n = 0;
    for (std::uint64_t x = 0; x < support(); ++x) {
        n += rep_[x] == x;
    }
    return n;
}

void Partition::merge(std::uint64_t x, std::uint64_t y)
{
    std::uint64_t const a = rep_[x];
    std::uint64_t const b = rep_[y];
    std::uint64_t const lo = std::min(a, b);
    std::uint64_t const hi = std::max(a, b);
    for (std::uint64_t z = hi; z < support(); ++z) {
        if (rep_[z] == hi) {
            rep_[z] = lo;
        }
    }
}

void Partition::isolate(std::uint64_t z)
{
    std::uint64_t const r = rep_[z];
    if (r != z) {
        rep_[z] = z;
        return;
    }
    std::optional<std::uint64_t> next;
    for (std::uint64_t y = z + 1; y < support(); ++y) {
        if (rep_[y] == z) {
            if (!next) {
                next = y;
            }
            rep_[y] = *next;
        }
    }
}

Partition id_rel(std::uint64_t n)
{
    return Partition(n);
}

Partition id_n(std::uint64_t k, std::uint64_t n)
{
    if (k == 0) {
        throw std::invalid_argument("id_n: modulus must be positive");
    }
    std::vector<std::vector<std::uint64_t>> blocks(std::min(k, n));
    for (std::uint64_t x = 0; x < n; ++x) {
        blocks[x % k].push_back(x);
    }
    return Partition::from_blocks(n, blocks);
}

Partition f_x(std::set<std::uint64_t> const& x, std::uint64_t n)
{
    std::vector<std::uint64_t> in;
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 0; i < n; ++i) {
        (x.count(i) ? in : out).push_back(i);
    }
    std::vector<std::vector<std::uint64_t>> blocks;
    for (auto* b : {&in, &out}) {
        if (!b->empty()) {
            blocks.push_back(std::move(*b));
        }
    }
    return Partition::from_blocks(n, blocks);
}

Partition q_from_set(std::set<std::uint64_t> const& a, std::uint64_t n)
{
    Partition p(n);
    for (std::uint64_t y : a) {
        if (2 * y + 1 < n) {
            p.merge(2 * y, 2 * y + 1);
        }
    }
    return p;
}

Partition direct_sum(Partition const& r, Partition const& s)
{
    std::uint64_t const half = std::max(r.support(), s.support());
    Partition p(2 * half);
    for (std::uint64_t x = 0; x < half; ++x) {
        p.merge(2 * x, 2 * r.rep(x));
        p.merge(2 * x + 1, 2 * s.rep(x) + 1);
    }
    return p;
}

Partition collapse(Partition const& r, std::uint64_t x, std::uint64_t y)
{
    if (x >= r.support() || y >= r.support()) {
        throw std::out_of_range("collapse: point outside the support");
    }
    if (r.related(x, y)) {
        throw std::invalid_argument("collapse: points are already equivalent");
    }
    Partition p = r;
    p.merge(x, y);
    return p;
}

Partition split(Partition const& r, std::uint64_t z)
{
    if (z >= r.support()) {
        throw std::out_of_range("split: point outside the support");
    }
    if (r.class_of(z).size() == 1) {
        throw std::invalid_argument("split: class is already a singleton");
    }
    Partition p = r;
    p.isolate(z);
    return p;
}

Partition plus_point(Partition const& r)
{
    return direct_sum(r, id_rel(r.support()));
}

SplitReductions build_split_reductions(Partition const& r, std::uint64_t z)
{
    SplitReductions out;
    out.split = split(r, z);
    std::uint64_t const n = r.support();
    out.target = direct_sum(r, id_n(1, n));

    std::uint64_t y = z;
    for (std::uint64_t w : r.class_of(z)) {
        if (w != z) {
            y = w;
            break;
        }
    }

    out.f.resize(n);
    for (std::uint64_t x = 0; x < n; ++x) {
        out.f[x] = x == z ? 1 : 2 * x;
    }
    out.g.resize(2 * n);
    for (std::uint64_t x = 0; x < 2 * n; ++x) {
        if (x % 2 == 1) {
            out.g[x] = z;
        }
        else {
            out.g[x] = x / 2 == z ? y : x / 2;
        }
    }
    return out;
}

bool rb_equiv(std::vector<std::set<std::uint64_t>> const& w, std::size_t i, std::uint64_t s,
              std::size_t j, std::uint64_t t)
{
    if (i >= w.size() || j >= w.size()) {
        throw std::out_of_range("rb_equiv: index outside the list");
    }
    auto upto = [](std::set<std::uint64_t> const& set, std::uint64_t bound) {
        return std::distance(set.begin(), set.upper_bound(bound));
    };
    return upto(w[i], s) == upto(w[j], t);
}

std::optional<FiniteMap> reduce_exists(Partition const& r, Partition const& s,
                                       std::uint64_t range_bound)
{
    std::uint64_t const n = r.support();
    FiniteMap f(n);
    if (n == 0) {
        return f;
    }

    // remaining[x]: number of R-classes whose least element is >= x.
    std::vector<std::uint64_t> remaining(n + 1, 0);
    for (std::uint64_t x = n; x-- > 0;) {
        remaining[x] = remaining[x + 1] + (r.rep(x) == x);
    }
    // Distinct R-classes need distinct S-classes meeting [0, range_bound).
    std::uint64_t s_classes = 0;
    for (std::uint64_t v = 0; v < range_bound; ++v) {
        s_classes += s.rep(v) == v;
    }
    std::uint64_t used = 0;

    std::function<bool(std::uint64_t)> search = [&](std::uint64_t x) -> bool {
        if (x == n) {
            return true;
        }
        for (std::uint64_t v = 0; v < range_bound; ++v) {
            bool ok = true;
            for (std::uint64_t w = 0; w < x && ok; ++w) {
                ok = r.related(x, w) == s.related(v, f[w]);
            }
            if (!ok) {
                continue;
            }
            f[x] = v;
            bool const fresh = r.rep(x) == x;
            if (fresh) {
                ++used;
            }
            if (remaining[x + 1] + used <= s_classes && search(x + 1)) {
                return true;
            }
            if (fresh) {
                --used;
            }
        }
        return false;
    };
    if (search(0)) {
        return f;
    }
    return std::nullopt;
}

bool verify_reduction(FiniteMap const& f, Partition const& r, Partition const& s)
{
    std::uint64_t const n = r.support();
    if (f.size() < n) {
        throw std::invalid_argument("verify_reduction: map does not cover the support");
    }
    for (std::uint64_t x = 0; x < n; ++x) {
        for (std::uint64_t y = x + 1; y < n; ++y) {
            if (r.related(x, y) != s.related(f[x], f[y])) {
                return false;
            }
        }
    }
    return true;
}

std::vector<std::uint64_t> orbit(std::map<std::uint64_t, std::uint64_t> const& h, std::uint64_t b,
                                 std::uint64_t budget)
{
    std::vector<std::uint64_t> out{b};
    std::set<std::uint64_t> seen{b};
    std::uint64_t cur = b;
    for (std::uint64_t k = 0; k < budget; ++k) {
        auto it = h.find(cur);
        if (it == h.end()) {
            throw std::out_of_range("orbit: map undefined at " + std::to_string(cur));
        }
        cur = it->second;
        if (!seen.insert(cur).second) {
            break;
        }
        out.push_back(cur);
    }
    return out;
}

std::vector<std::uint64_t> greedy_transversal(ApproxTrace const& trace, std::uint64_t k)
{
    if (trace.kind() != Kind::Pi || trace.domain() != Domain::Relation) {
        throw std::invalid_argument("greedy_transversal: needs a Pi relation trace");
    }
    for (std::uint64_t z : trace.touched_cells()) {
        bool f = true;
        for (Change const* c : trace.history(z)) {
            if (c->t > trace.budget()) {
                break;
            }
            if (!f && c->f) {
                throw std::domain_error("greedy_transversal: pair " + std::to_string(z) +
                                        " re-enters at stage " + std::to_string(c->t));
            }
            f = c->f;
        }
    }
    std::vector<std::uint64_t> out;
    std::uint64_t const n = trace.support();
    for (std::uint64_t z = 0; z < n && out.size() < k; ++z) {
        bool fresh = true;
        for (std::uint64_t x : out) {
            if (trace.related(x, z, trace.budget())) {
                fresh = false;
                break;
            }
        }
        if (fresh) {
            out.push_back(z);
        }
    }
    return out;
}

FiniteMap transversal_to_reduction(std::vector<std::uint64_t> const& g, Partition const& s)
{
    std::uint64_t const n = s.support();
    FiniteMap f(n);
    for (std::uint64_t x = 0; x < n; ++x) {
        std::uint64_t const i = s.rep(x);
        if (i < x) {
            f[x] = f[i];
            continue;
        }
        if (x >= g.size()) {
            throw std::out_of_range("transversal_to_reduction: transversal exhausted at " +
                                    std::to_string(x));
        }
        f[x] = g[x];
    }
    return f;
}

InfTriple build_inf_triple(std::set<std::uint64_t> const& x, std::set<std::uint64_t> const& y,
                           std::uint64_t n, Partition const& q)
{
    for (auto const* set : {&x, &y}) {
        if (f_x(*set, n).class_count() != 2) {
            throw std::invalid_argument("build_inf_triple: set must split the support in two");
        }
    }
    return {direct_sum(f_x(x, n), q), direct_sum(f_x(y, n), q), direct_sum(id_n(2, n), q)};
}

Poset poset(std::vector<Partition> const& catalog, std::uint64_t range_bound)
{
    Poset out;
    std::size_t const m = catalog.size();
    out.matrix.assign(m, std::vector<bool>(m, false));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            out.matrix[i][j] = reduce_exists(catalog[i], catalog[j], range_bound).has_value();
        }
    }

    out.degree_of.assign(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        if (out.degree_of[i] != m) {
            continue;
        }
        out.degree_of[i] = out.degrees.size();
        out.degrees.push_back({i});
        for (std::size_t j = i + 1; j < m; ++j) {
            if (out.degree_of[j] == m && out.matrix[i][j] && out.matrix[j][i]) {
                out.degree_of[j] = out.degree_of[i];
                out.degrees.back().push_back(j);
            }
        }
    }

    std::size_t const d = out.degrees.size();
    auto below = [&](std::size_t a, std::size_t b) {
        return a != b && out.matrix[out.degrees[a][0]][out.degrees[b][0]];
    };
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
            if (!below(a, b)) {
                continue;
            }
            bool covered = true;
            for (std::size_t c = 0; c < d && covered; ++c) {
                covered = !(below(a, c) && below(c, b));
            }
            if (covered) {
                out.hasse.emplace_back(a, b);
            }
        }
    }
    return out;
}

std::string Poset::to_dot() const
{
    std::ostringstream os;
    os << "digraph poset {\n  rankdir=BT;\n";
    for (std::size_t k = 0; k < degrees.size(); ++k) {
        os << "  d" << k << " [label=\"";
        for (std::size_t i = 0; i < degrees[k].size(); ++i) {
            os << (i ? "," : "") << degrees[k][i];
        }
        os << "\"];\n";
    }
    for (auto const& [a, b] : hasse) {
        os << "  d" << a << " -> d" << b << ";\n";
    }
    os << "}\n";
    return os.str();
}

namespace {

using Rows = std::vector<std::vector<std::uint64_t>>;

Rows slice_rows(ApproxTrace const& trace, std::uint64_t t)
{
    std::uint64_t const n = trace.support();
    std::size_t const words = (n + 63) / 64;
    Rows rows(n, std::vector<std::uint64_t>(words, 0));
    for (std::uint64_t x = 0; x < n; ++x) {
        rows[x][x / 64] |= std::uint64_t{1} << (x % 64);
        for (std::uint64_t y = x + 1; y < n; ++y) {
            if (trace.f(pair_code(x, y), t)) {
                rows[x][y / 64] |= std::uint64_t{1} << (y % 64);
                rows[y][x / 64] |= std::uint64_t{1} << (x % 64);
            }
        }
    }
    return rows;
}

bool bit(std::vector<std::uint64_t> const& row, std::uint64_t i)
{
    return (row[i / 64] >> (i % 64)) & 1U;
}

} // namespace

std::optional<std::array<std::uint64_t, 3>> transitivity_failure(ApproxTrace const& trace,
                                                                 std::uint64_t t)
{
    if (trace.domain() != Domain::Relation) {
        throw std::invalid_argument("transitivity_failure: needs a relation trace");
    }
    Rows const rows = slice_rows(trace, t);
    std::uint64_t const n = trace.support();
    for (std::uint64_t x = 0; x < n; ++x) {
        for (std::uint64_t y = x + 1; y < n; ++y) {
            if (!bit(rows[x], y) || rows[x] == rows[y]) {
                continue;
            }
            for (std::uint64_t z = 0; z < n; ++z) {
                if (bit(rows[x], z) != bit(rows[y], z)) {
                    std::array<std::uint64_t, 3> tri{x, y, z};
                    std::sort(tri.begin(), tri.end());
                    return tri;
                }
            }
        }
    }
    return std::nullopt;
}

Partition slice(ApproxTrace const& trace, std::uint64_t t)
{
    if (auto bad = transitivity_failure(trace, t)) {
        throw std::domain_error("slice: not an equivalence relation at stage " + std::to_string(t));
    }
    Partition p(trace.support());
    for (std::uint64_t x = 0; x < trace.support(); ++x) {
        for (std::uint64_t y = x + 1; y < trace.support(); ++y) {
            if (!p.related(x, y) && trace.f(pair_code(x, y), t)) {
                p.merge(x, y);
            }
        }
    }
    return p;
}

std::string to_string(Partition const& p)
{
    std::string out = "{";
    for (auto const& b : p.blocks()) {
        out += out.size() > 1 ? ",{" : "{";
        for (std::size_t i = 0; i < b.size(); ++i) {
            out += (i ? "," : "") + std::to_string(b[i]);
        }
        out += "}";
    }
    return out + "}";
}

} // namespace ershov
