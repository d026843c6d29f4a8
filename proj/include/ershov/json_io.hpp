#pragma once

#include "ershov/approximation.hpp"
#include "ershov/notation.hpp"
#include "ershov/partition.hpp"

#include <json.hpp>

#include <string>

namespace ershov {

/// Reads the to_string() form ("w^2*3+w+4", "7", "0"). Throws
/// std::invalid_argument on anything else.
Notation parse_notation(std::string const& text);

// All *_from_json readers throw std::invalid_argument on malformed input.

nlohmann::json to_json(Notation const& a);
Notation notation_from_json(nlohmann::json const& j);

Kind kind_from_string(std::string const& s);
Domain domain_from_string(std::string const& s);

/// {"support": n, "blocks": [[...], ...]}; singleton blocks are omitted.
nlohmann::json to_json(Partition const& p);
/// Also accepts {"support": n, "mod": k} for Id_k.
Partition partition_from_json(nlohmann::json const& j);

/// Changes are [z, t, f, gamma] rows.
nlohmann::json to_json(ApproxTrace const& t);
ApproxTrace trace_from_json(nlohmann::json const& j);

/// {"entries": [[input, output, stage], ...]}
nlohmann::json to_json(ClockedMachine const& m);
ClockedMachine machine_from_json(nlohmann::json const& j);

/// {"entries": [{"query": [[pos, bit], ...], "element": x, "stage": s}, ...]}
nlohmann::json to_json(OracleMachine const& m);
OracleMachine oracle_machine_from_json(nlohmann::json const& j);

} // namespace ershov
