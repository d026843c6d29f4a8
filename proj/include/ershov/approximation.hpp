#pragma once

#include "ershov/notation.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ershov {

/// Sigma traces start every cell at 0, Pi traces at 1.
enum class Kind { Sigma, Pi };
enum class Domain { Set, Relation };

inline Kind dual(Kind k) { return k == Kind::Sigma ? Kind::Pi : Kind::Sigma; }
inline bool initial_value(Kind k) { return k == Kind::Pi; }

std::string to_string(Kind k);
std::string to_string(Domain d);

/// Cantor pairing (x+y)(x+y+1)/2 + y.
std::uint64_t pair_code(std::uint64_t x, std::uint64_t y);
std::pair<std::uint64_t, std::uint64_t> pair_decode(std::uint64_t code);

/// Cell index of the unordered pair {x, y}, x != y, in a relation trace.
inline std::uint64_t cell_of(std::uint64_t x, std::uint64_t y)
{
    return x < y ? pair_code(x, y) : pair_code(y, x);
}

/// One recorded mind change: from stage t on, cell z has value f and
/// ordinal counter gamma.
struct Change {
    std::uint64_t z = 0;
    std::uint64_t t = 0;
    bool f = false;
    Notation gamma;

    bool operator==(Change const&) const = default;
};

/// Stage-indexed approximation <f, gamma> to a set or to an equivalence
/// relation.
///
/// Storage is sparse: a cell keeps its previous value until a Change
/// names it. For set traces cells are the indices z < support. For
/// relation traces `support` counts elements and cells are the codes
/// cell_of(x, y) with x < y < support; the diagonal is always related.
/// `checkpoints[k]` is the trace time at which construction stage k ends.
///
/// The constructor only sorts; it never rejects a trace, so corrupted
/// traces can be represented and audited.
class ApproxTrace {
public:
    ApproxTrace() = default;
    ApproxTrace(Kind kind, Notation level, Domain domain, std::uint64_t support,
                std::uint64_t budget, std::vector<Change> changes,
                std::vector<std::uint64_t> checkpoints = {});

    Kind kind() const noexcept { return kind_; }
    Notation const& level() const noexcept { return level_; }
    Domain domain() const noexcept { return domain_; }
    std::uint64_t support() const noexcept { return support_; }
    std::uint64_t budget() const noexcept { return budget_; }
    std::vector<Change> const& changes() const noexcept { return changes_; }
    std::vector<std::uint64_t> const& checkpoints() const noexcept { return checkpoints_; }

    bool f(std::uint64_t z, std::uint64_t t) const;
    Notation const& gamma(std::uint64_t z, std::uint64_t t) const;

    /// Changes touching cell z, in time order.
    std::vector<Change const*> history(std::uint64_t z) const;
    std::vector<std::uint64_t> touched_cells() const;

    /// Relation traces only: x ~ y at time t.
    bool related(std::uint64_t x, std::uint64_t y, std::uint64_t t) const;

    bool operator==(ApproxTrace const& o) const
    {
        return kind_ == o.kind_ && level_ == o.level_ && domain_ == o.domain_ &&
               support_ == o.support_ && budget_ == o.budget_ && changes_ == o.changes_ &&
               checkpoints_ == o.checkpoints_;
    }

private:
    Change const* last_change(std::uint64_t z, std::uint64_t t) const;

    Kind kind_ = Kind::Sigma;
    Notation level_;
    Domain domain_ = Domain::Set;
    std::uint64_t support_ = 0;
    std::uint64_t budget_ = 0;
    std::vector<Change> changes_;
    std::vector<std::uint64_t> checkpoints_;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_cell_;
};

struct Violation {
    std::string invariant;
    std::uint64_t stage = 0;
    std::uint64_t index = 0;
    std::string detail;
};

struct ValidationReport {
    bool pass = true;
    std::vector<Violation> violations;
};

/// Checks the approximating-pair conditions up to the budget: initial
/// values, non-increasing gamma bounded by the level, strict gamma descent
/// on every change of f, and at most one changing cell per stage.
ValidationReport validate(ApproxTrace const& trace);

/// Number of stages t < budget with f(z, t+1) != f(z, t).
std::uint64_t mind_changes(ApproxTrace const& trace, std::uint64_t z);
/// f(z, budget): the finite-run stand-in for the limit.
bool limit_value(ApproxTrace const& trace, std::uint64_t z);

/// Number of cells (set) or the pair-code bound covering all cells (relation).
std::uint64_t cell_bound(ApproxTrace const& trace);

/// Append-only builder used by the constructions. Every recorded change
/// gets its own trace time, so one changing cell per stage holds by
/// construction.
class TraceBuilder {
public:
    TraceBuilder(Kind kind, Notation level, Domain domain, std::uint64_t support);

    bool f(std::uint64_t z) const;
    Notation gamma(std::uint64_t z) const;
    /// Number of f-changes recorded so far for z.
    std::uint64_t flips(std::uint64_t z) const;

    /// Records (f, gamma) for z at the next time, unless nothing changes.
    void set(std::uint64_t z, bool f, Notation gamma);
    /// Marks the end of a construction stage.
    void checkpoint() { checkpoints_.push_back(clock_); }
    std::uint64_t clock() const noexcept { return clock_; }

    ApproxTrace build() const;

private:
    struct Cell {
        bool f;
        Notation gamma;
        std::uint64_t flips = 0;
    };

    Kind kind_;
    Notation level_;
    Domain domain_;
    std::uint64_t support_;
    std::uint64_t clock_ = 0;
    std::vector<Change> changes_;
    std::vector<std::uint64_t> checkpoints_;
    std::unordered_map<std::uint64_t, Cell> cells_;
};

/// Finite table standing in for a partial computable function phi_e, or
/// for the enumeration W_e = dom(phi_e).
struct ClockedMachine {
    struct Entry {
        std::uint64_t output = 0;
        std::uint64_t stage = 0;
        bool operator==(Entry const&) const = default;
    };
    std::map<std::uint64_t, Entry> entries;

    /// phi(x) if it has converged by `stage`.
    std::optional<std::uint64_t> eval(std::uint64_t x, std::uint64_t stage) const;
    /// W[stage]: inputs converged by `stage`, ascending.
    std::vector<std::uint64_t> domain_at(std::uint64_t stage) const;

    bool operator==(ClockedMachine const&) const = default;
};

/// Finite stand-in for an oracle enumeration W_e^X. An entry enumerates
/// its element once its stage has passed and the oracle string agrees
/// with every query (all queried positions must lie inside the string).
struct OracleMachine {
    struct Entry {
        std::map<std::uint64_t, bool> query;
        std::uint64_t element = 0;
        std::uint64_t stage = 0;
        bool operator==(Entry const&) const = default;
    };
    std::vector<Entry> entries;

    bool operator==(OracleMachine const&) const = default;
};

using Bits = std::vector<std::uint8_t>;

bool fires(OracleMachine::Entry const& entry, std::span<std::uint8_t const> sigma,
           std::uint64_t stage);
std::set<std::uint64_t> oracle_enumerate(OracleMachine const& m,
                                         std::span<std::uint8_t const> sigma,
                                         std::uint64_t stage);

/// Seed-deterministic family of valid set traces; the first trace never changes.
/// Changes favour cells cell_of(2i, 2i+1), where the constructions place
/// their diagonalization witnesses.
std::vector<ApproxTrace> opponent_family(std::uint64_t seed, std::uint64_t count, Kind kind,
                                         Notation const& level, std::uint64_t support,
                                         std::uint64_t budget);

/// Random enumerations: each input below `inputs` converges with
/// probability `density` at a stage in [1, max_stage], output below
/// `max_output`.
std::vector<ClockedMachine> machine_family(std::uint64_t seed, std::uint64_t count,
                                           std::uint64_t inputs, double density,
                                           std::uint64_t max_output, std::uint64_t max_stage);

/// Random oracle machines enumerating elements below `elements`, querying
/// at most `max_queries` positions below `query_bound`.
std::vector<OracleMachine> oracle_family(std::uint64_t seed, std::uint64_t count,
                                         std::uint64_t entries, std::uint64_t elements,
                                         std::uint64_t query_bound, std::uint64_t max_queries,
                                         std::uint64_t max_stage);

} // namespace ershov
