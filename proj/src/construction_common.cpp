#include "ershov/construction.hpp"

namespace ershov {

using nlohmann::json;

json to_json(Requirement const& r)
{
    return {{"kind", r.kind}, {"index", r.index}, {"side", r.side}, {"position", r.position}};
}

json to_json(StageEvent const& e)
{
    return {{"stage", e.stage}, {"requirement", to_json(e.requirement)}, {"action", e.action}, {"data", e.data}};
}

json to_json(StageTrace const& t)
{
    json events = json::array();
    for (auto const& e : t.events) {
        events.push_back(to_json(e));
    }
    return {{"scenario", t.scenario}, {"config_digest", t.config_digest}, {"notes", t.notes},
            {"events", events}, {"final", t.final}};
}

Requirement requirement_from_json(json const& j)
{
    return Requirement{j.at("kind").get<std::string>(), j.at("index").get<std::uint64_t>(),
                       j.value("side", std::string("single")), j.value("position", std::uint64_t{0})};
}

StageTrace stage_trace_from_json(json const& j)
{
    StageTrace t;
    t.scenario = j.at("scenario").get<std::string>();
    t.config_digest = j.value("config_digest", std::string());
    t.notes = j.value("notes", std::vector<std::string>{});
    for (auto const& e : j.at("events")) {
        t.events.push_back({e.at("stage").get<std::uint64_t>(), requirement_from_json(e.at("requirement")),
                            e.at("action").get<std::string>(), e.value("data", json::object())});
    }
    t.final = j.value("final", json::object());
    return t;
}

} // namespace ershov
