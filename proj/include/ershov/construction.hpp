#pragma once

#include "ershov/approximation.hpp"
#include "ershov/errors.hpp"
#include "ershov/notation.hpp"
#include "ershov/partition.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ershov {

struct Requirement {
    std::string kind;          ///< F, P, Q, I, or "stage" for scenario steps
    std::uint64_t index = 0;
    std::string side = "single";
    std::uint64_t position = 0;

    bool operator==(Requirement const&) const = default;
};

struct StageEvent {
    std::uint64_t stage = 0;
    Requirement requirement;
    /// appointed, diagonalized, collapsed, restrained, initialized-others,
    /// parked, waiting, idle, installed, scanned
    std::string action;
    nlohmann::json data;

    bool operator==(StageEvent const&) const = default;
};

/// Event log of one construction run.
struct StageTrace {
    std::string scenario;
    std::string config_digest;
    std::vector<std::string> notes;
    std::vector<StageEvent> events;
    nlohmann::json final;

    bool operator==(StageTrace const&) const = default;
};

struct ConstructionResult {
    StageTrace log;
    std::map<std::string, ApproxTrace> traces;
};

struct DarkConfig {
    Notation level = Notation::fin(2);
    Kind variant = Kind::Sigma;
    std::uint64_t support = 32;
    std::uint64_t stages = 200;
    /// Approximations of the dual kind at the same level; time = stage.
    std::vector<ApproxTrace> opponents;
    /// W_e = domain of machine e; convergence stage = construction stage.
    std::vector<ClockedMachine> machines;
};

struct MutualConfig {
    Notation level = Notation::fin(2);
    Kind variant = Kind::Sigma;
    std::uint64_t support = 32;
    std::uint64_t stages = 200;
    std::vector<ApproxTrace> opponents;
    std::vector<OracleMachine> machines_u;  ///< W_e^U, answered against V
    std::vector<OracleMachine> machines_v;  ///< W_e^V, answered against U
};

struct MinimalConfig {
    Partition base;
    /// Pairwise inequivalent points of the base; empty means least
    /// elements of the base classes in increasing order.
    std::vector<std::uint64_t> representatives;
    std::vector<ApproxTrace> opponents;
    std::uint64_t stages = 20;
};

struct OntoConfig {
    ApproxTrace r;
    Partition q;
    std::vector<ClockedMachine> machines;
    std::uint64_t stages = 10;
};

struct NoSupConfig {
    Partition r;
    Partition s;
    Partition t;
    std::vector<ClockedMachine> machines;
    std::uint64_t stages = 50;
    std::uint64_t pair_scan_budget = 64;
};

struct OmegaConfig {
    std::uint64_t support = 32;
    std::uint64_t stages = 200;
    std::vector<OracleMachine> machines_u;  ///< W_e^U: P^U, collapses V
    std::vector<OracleMachine> machines_v;  ///< W_e^V: P^V, collapses U
    std::vector<ClockedMachine> reductions;
};

/// Throws PreconditionError on level/variant/opponent mismatches.
ConstructionResult run_dark(DarkConfig const& cfg);
ConstructionResult run_mutually_dark(MutualConfig const& cfg);
ConstructionResult run_finitely_minimal(MinimalConfig const& cfg);
/// X must be a valid c.e. set trace at level 1; n a multiple of 4.
/// The reduction i -> a_i / b_i lands in log.final["reduction"].
ConstructionResult build_inversion_counterexample(ApproxTrace const& x, std::uint64_t n);
ConstructionResult run_onto_extension(OntoConfig const& cfg);
ConstructionResult run_no_sup(NoSupConfig const& cfg);
ConstructionResult run_omega_pair(OmegaConfig const& cfg);

/// Priority positions.
inline std::uint64_t dark_position(char kind, std::uint64_t e)
{
    return 3 * e + (kind == 'F' ? 0 : kind == 'Q' ? 1 : 2);
}
std::uint64_t mutual_position(char kind, char side, std::uint64_t e);
std::uint64_t omega_position(char kind, char side, std::uint64_t e);
/// Least F position above cell u in the omega-pair ordering.
std::uint64_t omega_f_bound(std::uint64_t u);
/// min(2^e, 2^62).
std::uint64_t capped_pow2(std::uint64_t e);
/// Number of requirement groups used by run_omega_pair on n points.
std::uint64_t omega_groups(std::uint64_t n);

nlohmann::json to_json(Requirement const& r);
nlohmann::json to_json(StageEvent const& e);
nlohmann::json to_json(StageTrace const& t);
Requirement requirement_from_json(nlohmann::json const& j);
StageTrace stage_trace_from_json(nlohmann::json const& j);

} // namespace ershov
