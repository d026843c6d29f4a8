#include "ershov/approximation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace ershov {

std::string to_string(Kind k)
{
    return k == Kind::Sigma ? "sigma" : "pi";
}

std::string to_string(Domain d)
{
    return d == Domain::Set ? "set" : "relation";
}

std::uint64_t pair_code(std::uint64_t x, std::uint64_t y)
{
    std::uint64_t const s = x + y;
    return (s % 2 == 0 ? (s / 2) * (s + 1) : s * ((s + 1) / 2)) + y;
}

std::pair<std::uint64_t, std::uint64_t> pair_decode(std::uint64_t code)
{
    auto s = static_cast<std::uint64_t>((std::sqrt(8.0L * code + 1) - 1) / 2);
    while (s * (s + 1) / 2 > code) {
        --s;
    }
    while ((s + 1) * (s + 2) / 2 <= code) {
        ++s;
    }
    std::uint64_t const y = code - s * (s + 1) / 2;
    return {s - y, y};
}

ApproxTrace::ApproxTrace(Kind kind, Notation level, Domain domain, std::uint64_t support,
                         std::uint64_t budget, std::vector<Change> changes,
                         std::vector<std::uint64_t> checkpoints)
    : kind_(kind)
    , level_(std::move(level))
    , domain_(domain)
    , support_(support)
    , budget_(budget)
    , changes_(std::move(changes))
    , checkpoints_(std::move(checkpoints))
{
    std::stable_sort(changes_.begin(), changes_.end(), [](Change const& a, Change const& b) {
        return a.t < b.t;
    });
    for (std::size_t i = 0; i < changes_.size(); ++i) {
        by_cell_[changes_[i].z].push_back(i);
    }
}

Change const* ApproxTrace::last_change(std::uint64_t z, std::uint64_t t) const
{
    auto it = by_cell_.find(z);
    if (it == by_cell_.end()) {
        return nullptr;
    }
    Change const* found = nullptr;
    for (std::size_t idx : it->second) {
        if (changes_[idx].t > t) {
            break;
        }
        found = &changes_[idx];
    }
    return found;
}

bool ApproxTrace::f(std::uint64_t z, std::uint64_t t) const
{
    auto const* c = last_change(z, t);
    return c ? c->f : initial_value(kind_);
}

Notation const& ApproxTrace::gamma(std::uint64_t z, std::uint64_t t) const
{
    auto const* c = last_change(z, t);
    return c ? c->gamma : level_;
}

std::vector<Change const*> ApproxTrace::history(std::uint64_t z) const
{
    std::vector<Change const*> out;
    if (auto it = by_cell_.find(z); it != by_cell_.end()) {
        for (std::size_t idx : it->second) {
            out.push_back(&changes_[idx]);
        }
    }
    return out;
}

std::vector<std::uint64_t> ApproxTrace::touched_cells() const
{
    std::vector<std::uint64_t> out;
    out.reserve(by_cell_.size());
    for (auto const& [z, _] : by_cell_) {
        out.push_back(z);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool ApproxTrace::related(std::uint64_t x, std::uint64_t y, std::uint64_t t) const
{
    if (x == y) {
        return true;
    }
    return f(cell_of(x, y), t);
}

std::uint64_t cell_bound(ApproxTrace const& trace)
{
    if (trace.domain() == Domain::Set) {
        return trace.support();
    }
    std::uint64_t const n = trace.support();
    return n < 2 ? 0 : pair_code(n - 2, n - 1) + 1;
}

namespace {

bool cell_in_range(ApproxTrace const& trace, std::uint64_t z)
{
    if (trace.domain() == Domain::Set) {
        return z < trace.support();
    }
    auto const [x, y] = pair_decode(z);
    return x < y && y < trace.support();
}

} // namespace

ValidationReport validate(ApproxTrace const& trace)
{
    ValidationReport report;
    auto fail = [&](std::string inv, std::uint64_t t, std::uint64_t z, std::string detail) {
        report.pass = false;
        report.violations.push_back({std::move(inv), t, z, std::move(detail)});
    };

    std::map<std::uint64_t, std::uint64_t> flips_at;
    for (std::uint64_t z : trace.touched_cells()) {
        bool f = initial_value(trace.kind());
        Notation gamma = trace.level();
        std::optional<std::uint64_t> prev_t;
        for (Change const* c : trace.history(z)) {
            if (!cell_in_range(trace, z) || c->t > trace.budget()) {
                fail("out-of-range", c->t, z, "change outside support or budget");
            }
            if (c->t == 0) {
                fail("initial-value", 0, z, "stage 0 must carry the initial value and the level");
            }
            if (prev_t && *prev_t == c->t) {
                fail("duplicate", c->t, z, "two changes for one cell at one stage");
            }
            if (c->gamma > gamma) {
                fail("gamma-increase", c->t, z, gamma.to_string() + " -> " + c->gamma.to_string());
            }
            if (c->f != f) {
                if (!(c->gamma < gamma)) {
                    fail("change-without-descent", c->t, z,
                         "f changed while gamma stayed at " + gamma.to_string());
                }
                ++flips_at[c->t];
            }
            f = c->f;
            gamma = c->gamma;
            prev_t = c->t;
        }
    }
    for (auto const& [t, count] : flips_at) {
        if (count > 1) {
            fail("multiple-changes", t, count, std::to_string(count) + " cells changed at one stage");
        }
    }
    return report;
}

std::uint64_t mind_changes(ApproxTrace const& trace, std::uint64_t z)
{
    if (z >= cell_bound(trace)) {
        throw std::out_of_range("mind_changes: index outside support");
    }
    bool f = initial_value(trace.kind());
    std::uint64_t count = 0;
    for (Change const* c : trace.history(z)) {
        if (c->t > trace.budget()) {
            break;
        }
        if (c->f != f) {
            ++count;
        }
        f = c->f;
    }
    return count;
}

bool limit_value(ApproxTrace const& trace, std::uint64_t z)
{
    if (z >= cell_bound(trace)) {
        throw std::out_of_range("limit_value: index outside support");
    }
    return trace.f(z, trace.budget());
}

TraceBuilder::TraceBuilder(Kind kind, Notation level, Domain domain, std::uint64_t support)
    : kind_(kind)
    , level_(std::move(level))
    , domain_(domain)
    , support_(support)
{
}

bool TraceBuilder::f(std::uint64_t z) const
{
    auto it = cells_.find(z);
    return it == cells_.end() ? initial_value(kind_) : it->second.f;
}

Notation TraceBuilder::gamma(std::uint64_t z) const
{
    auto it = cells_.find(z);
    return it == cells_.end() ? level_ : it->second.gamma;
}

std::uint64_t TraceBuilder::flips(std::uint64_t z) const
{
    auto it = cells_.find(z);
    return it == cells_.end() ? 0 : it->second.flips;
}

void TraceBuilder::set(std::uint64_t z, bool f, Notation gamma)
{
    auto [it, inserted] = cells_.try_emplace(z, Cell{initial_value(kind_), level_, 0});
    Cell& cell = it->second;
    if (cell.f == f && cell.gamma == gamma) {
        return;
    }
    if (cell.f != f) {
        ++cell.flips;
    }
    cell.f = f;
    cell.gamma = gamma;
    ++clock_;
    changes_.push_back(Change{z, clock_, f, std::move(gamma)});
}

ApproxTrace TraceBuilder::build() const
{
    return ApproxTrace(kind_, level_, domain_, support_, clock_, changes_, checkpoints_);
}

std::optional<std::uint64_t> ClockedMachine::eval(std::uint64_t x, std::uint64_t stage) const
{
    auto it = entries.find(x);
    if (it == entries.end() || it->second.stage > stage) {
        return std::nullopt;
    }
    return it->second.output;
}

std::vector<std::uint64_t> ClockedMachine::domain_at(std::uint64_t stage) const
{
    std::vector<std::uint64_t> out;
    for (auto const& [x, e] : entries) {
        if (e.stage <= stage) {
            out.push_back(x);
        }
    }
    return out;
}

bool fires(OracleMachine::Entry const& entry, std::span<std::uint8_t const> sigma,
           std::uint64_t stage)
{
    if (entry.stage > stage) {
        return false;
    }
    for (auto const& [pos, bit] : entry.query) {
        if (pos >= sigma.size() || (sigma[pos] != 0) != bit) {
            return false;
        }
    }
    return true;
}

std::set<std::uint64_t> oracle_enumerate(OracleMachine const& m, std::span<std::uint8_t const> sigma,
                                         std::uint64_t stage)
{
    std::set<std::uint64_t> out;
    for (auto const& e : m.entries) {
        if (fires(e, sigma, stage)) {
            out.insert(e.element);
        }
    }
    return out;
}

std::vector<ApproxTrace> opponent_family(std::uint64_t seed, std::uint64_t count, Kind kind,
                                         Notation const& level, std::uint64_t support,
                                         std::uint64_t budget)
{
    std::vector<ApproxTrace> out;
    out.reserve(count);
    if (count == 0) {
        return out;
    }
    out.emplace_back(kind, level, Domain::Set, support, budget, std::vector<Change>{});

    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> witness_cells;
    for (std::uint64_t i = 0; pair_code(2 * i, 2 * i + 1) < support; ++i) {
        witness_cells.push_back(pair_code(2 * i, 2 * i + 1));
    }

    for (std::uint64_t k = 1; k < count; ++k) {
        std::vector<Change> changes;
        if (support > 0 && budget > 0) {
            std::uniform_int_distribution<std::uint64_t> pick_n(0, std::min<std::uint64_t>(budget, 3 * support));
            std::uint64_t const n = pick_n(rng);
            std::vector<std::uint64_t> times(budget);
            for (std::uint64_t t = 0; t < budget; ++t) {
                times[t] = t + 1;
            }
            std::shuffle(times.begin(), times.end(), rng);
            times.resize(n);
            std::sort(times.begin(), times.end());

            std::unordered_map<std::uint64_t, std::pair<bool, Notation>> state;
            std::vector<std::uint64_t> used;
            std::uniform_real_distribution<double> coin(0.0, 1.0);
            std::uniform_int_distribution<std::uint64_t> any_cell(0, support - 1);
            for (std::uint64_t t : times) {
                std::uint64_t z = 0;
                double const r = coin(rng);
                if (r < 0.5 && !witness_cells.empty()) {
                    std::uniform_int_distribution<std::size_t> pick(0, witness_cells.size() - 1);
                    z = witness_cells[pick(rng)];
                }
                else if (r < 0.75 && !used.empty()) {
                    std::uniform_int_distribution<std::size_t> pick(0, used.size() - 1);
                    z = used[pick(rng)];
                }
                else {
                    z = any_cell(rng);
                }
                auto [it, fresh] = state.try_emplace(z, initial_value(kind), level);
                auto lower = random_below(it->second.second, rng);
                if (!lower) {
                    continue;
                }
                it->second = {!it->second.first, *lower};
                changes.push_back(Change{z, t, it->second.first, *lower});
                if (fresh) {
                    used.push_back(z);
                }
            }
        }
        out.emplace_back(kind, level, Domain::Set, support, budget, std::move(changes));
    }
    return out;
}

std::vector<ClockedMachine> machine_family(std::uint64_t seed, std::uint64_t count,
                                           std::uint64_t inputs, double density,
                                           std::uint64_t max_output, std::uint64_t max_stage)
{
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution keep(density);
    std::uniform_int_distribution<std::uint64_t> out_d(0, max_output > 0 ? max_output - 1 : 0);
    std::uniform_int_distribution<std::uint64_t> stage_d(1, std::max<std::uint64_t>(1, max_stage));
    std::vector<ClockedMachine> out(count);
    for (auto& m : out) {
        for (std::uint64_t x = 0; x < inputs; ++x) {
            if (keep(rng)) {
                m.entries[x] = {out_d(rng), stage_d(rng)};
            }
        }
    }
    return out;
}

std::vector<OracleMachine> oracle_family(std::uint64_t seed, std::uint64_t count,
                                         std::uint64_t entries, std::uint64_t elements,
                                         std::uint64_t query_bound, std::uint64_t max_queries,
                                         std::uint64_t max_stage)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> elem_d(0, elements > 0 ? elements - 1 : 0);
    std::uniform_int_distribution<std::uint64_t> pos_d(0, query_bound > 0 ? query_bound - 1 : 0);
    std::uniform_int_distribution<std::uint64_t> nq_d(0, query_bound > 0 ? max_queries : 0);
    std::uniform_int_distribution<std::uint64_t> stage_d(1, std::max<std::uint64_t>(1, max_stage));
    std::bernoulli_distribution bit(0.3);
    std::vector<OracleMachine> out(count);
    for (auto& m : out) {
        for (std::uint64_t k = 0; k < entries; ++k) {
            OracleMachine::Entry e;
            std::uint64_t const nq = nq_d(rng);
            for (std::uint64_t q = 0; q < nq; ++q) {
                e.query[pos_d(rng)] = bit(rng);
            }
            e.element = elem_d(rng);
            e.stage = stage_d(rng);
            m.entries.push_back(std::move(e));
        }
    }
    return out;
}

} // namespace ershov
