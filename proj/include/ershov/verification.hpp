#pragma once

#include "ershov/approximation.hpp"
#include "ershov/construction.hpp"
#include "ershov/partition.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace ershov {

struct AuditCheck {
    std::string claim;
    bool pass = true;
    /// Stage, cell and values for failures; status data otherwise.
    nlohmann::json witness;
};

struct AuditReport {
    std::string suite;
    bool pass = true;
    std::vector<AuditCheck> checks;
    nlohmann::json coverage = nlohmann::json::object();

    void add(std::string claim, bool ok, nlohmann::json witness = nlohmann::json::object());
};

nlohmann::json to_json(AuditReport const& r);

using TraceMap = std::map<std::string, ApproxTrace>;

/// validate, plus transitivity of every checkpoint slice for relation traces.
AuditReport audit_trace(ApproxTrace const& trace);

/// Final status of every requirement that appears in the log, plus the
/// action-count bound. Throws std::invalid_argument when the log does not
/// belong to the matching scenario or names an unknown requirement.
AuditReport audit_requirements(StageTrace const& log, TraceMap const& traces, DarkConfig const& cfg);
AuditReport audit_requirements(StageTrace const& log, TraceMap const& traces, MutualConfig const& cfg);
AuditReport audit_requirements(StageTrace const& log, TraceMap const& traces, OmegaConfig const& cfg);

/// Distinct equal-parity pairs change at most once after stage 1, and only 0 -> 1.
AuditReport audit_parity(StageTrace const& log, TraceMap const& traces);

/// Per cell u: number of changes <= 2^{e_R(u)}, e_R(u) the least F position above u.
AuditReport audit_change_bound(StageTrace const& log, TraceMap const& traces);

/// Parity reductions at every checkpoint, Z-injectivity and the
/// one-even-one-odd shape of every merged class.
AuditReport audit_no_sup(StageTrace const& log, Partition const& r, Partition const& s,
                         ApproxTrace const& u);

/// The displayed map reduces Id to the final slice and meets every class.
AuditReport audit_inversion(ConstructionResult const& res);

/// x -> 2x reduces the limit of R to the final S; every class left without
/// an even member belongs to an unprocessed Q-class.
AuditReport audit_onto(ConstructionResult const& res, OntoConfig const& cfg);

/// R contains the base and differs from E_k at each queried pair.
AuditReport audit_minimal(ConstructionResult const& res, MinimalConfig const& cfg);

} // namespace ershov
