#pragma once

#include "ershov/construction.hpp"
#include "ershov/verification.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace ershov {

struct InversionConfig {
    ApproxTrace x;
    std::uint64_t support = 16;
};

using ScenarioConfig = std::variant<DarkConfig, MutualConfig, MinimalConfig, InversionConfig,
                                    OntoConfig, NoSupConfig, OmegaConfig>;

struct RunConfig {
    std::string scenario;
    nlohmann::json source;  ///< the document as given, after overrides
    std::string digest;
    ScenarioConfig cfg;
};

/// FNV-1a 64 of the canonical dump (object keys sorted), as 16 hex digits.
std::string config_digest(nlohmann::json const& j);

/// Resolves inline data, {"file": path} references (relative to base_dir)
/// and {"generate": {...}} families. Throws ConfigError.
RunConfig parse_config(nlohmann::json const& j, std::filesystem::path const& base_dir = {});
RunConfig load_config(std::filesystem::path const& path);

/// Throws PreconditionError when the scenario rejects its parameters.
ConstructionResult run(RunConfig const& rc);

/// Every suite that applies to the scenario, trace audits first.
std::vector<AuditReport> audit_run(RunConfig const& rc, ConstructionResult const& res);

/// {"config", "log", "traces"}; the form written by `ershov construct`.
nlohmann::json result_to_json(RunConfig const& rc, ConstructionResult const& res);
ConstructionResult result_from_json(nlohmann::json const& j);

nlohmann::json read_json_file(std::filesystem::path const& path);

} // namespace ershov
