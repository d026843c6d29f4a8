#include "ershov/config.hpp"

#include "ershov/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <set>

namespace ershov {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::set<std::string> const scenarios = {"dark",           "mutually-dark", "finitely-minimal", "inversion-fail",
                                         "onto-extension", "no-sup",        "omega-pair"};

template <typename T>
T get_or(json const& j, char const* key, T fallback)
{
    if (!j.contains(key)) {
        return fallback;
    }
    try {
        return j.at(key).get<T>();
    }
    catch (json::exception const&) {
        throw ConfigError(std::string("field '") + key + "' has the wrong type");
    }
}

template <typename T>
T require(json const& j, char const* key)
{
    if (!j.contains(key)) {
        throw ConfigError(std::string("missing field '") + key + "'");
    }
    return get_or<T>(j, key, T{});
}

class Resolver {
public:
    Resolver(json const& doc, fs::path base) : doc_(doc), base_(std::move(base)) {}

    std::uint64_t seed() const { return get_or<std::uint64_t>(doc_, "seed", 0); }

    /// Inline value, or the contents of {"file": path}.
    json value(json const& v) const
    {
        if (v.is_object() && v.contains("file") && v.size() == 1) {
            fs::path p = v.at("file").get<std::string>();
            if (p.is_relative()) {
                p = base_ / p;
            }
            try {
                return read_json_file(p);
            }
            catch (std::exception const& ex) {
                throw ConfigError(ex.what());
            }
        }
        return v;
    }

    std::vector<ApproxTrace> traces(char const* key, Kind kind, Notation const& level, std::uint64_t support,
                                    std::uint64_t budget, std::uint64_t salt) const
    {
        if (!doc_.contains(key)) {
            return {};
        }
        json const v = value(doc_.at(key));
        if (v.is_object() && v.contains("generate")) {
            json const g = v.at("generate");
            return opponent_family(get_or<std::uint64_t>(g, "seed", seed() + salt),
                                   require<std::uint64_t>(g, "count"), kind,
                                   g.contains("level") ? notation_from_json(g.at("level")) : level,
                                   get_or<std::uint64_t>(g, "support", support),
                                   get_or<std::uint64_t>(g, "budget", budget));
        }
        std::vector<ApproxTrace> out;
        for (auto const& t : list(v, key)) {
            out.push_back(trace_from_json(value(t)));
        }
        return out;
    }

    std::vector<ClockedMachine> machines(char const* key, std::uint64_t support, std::uint64_t stages,
                                         std::uint64_t salt) const
    {
        if (!doc_.contains(key)) {
            return {};
        }
        json const v = value(doc_.at(key));
        if (v.is_object() && v.contains("generate")) {
            json const g = v.at("generate");
            return machine_family(get_or<std::uint64_t>(g, "seed", seed() + salt), require<std::uint64_t>(g, "count"),
                                  get_or<std::uint64_t>(g, "inputs", support), get_or<double>(g, "density", 0.3),
                                  get_or<std::uint64_t>(g, "max_output", support),
                                  get_or<std::uint64_t>(g, "max_stage", std::max<std::uint64_t>(1, stages / 4)));
        }
        std::vector<ClockedMachine> out;
        for (auto const& m : list(v, key)) {
            out.push_back(machine_from_json(value(m)));
        }
        return out;
    }

    std::vector<OracleMachine> oracles(char const* key, std::uint64_t support, std::uint64_t stages,
                                       std::uint64_t salt) const
    {
        if (!doc_.contains(key)) {
            return {};
        }
        json const v = value(doc_.at(key));
        if (v.is_object() && v.contains("generate")) {
            json const g = v.at("generate");
            return oracle_family(get_or<std::uint64_t>(g, "seed", seed() + salt), require<std::uint64_t>(g, "count"),
                                 get_or<std::uint64_t>(g, "entries", 8), get_or<std::uint64_t>(g, "elements", support),
                                 get_or<std::uint64_t>(g, "query_bound", 2 * support),
                                 get_or<std::uint64_t>(g, "max_queries", 2),
                                 get_or<std::uint64_t>(g, "max_stage", std::max<std::uint64_t>(1, stages / 4)));
        }
        std::vector<OracleMachine> out;
        for (auto const& m : list(v, key)) {
            out.push_back(oracle_machine_from_json(value(m)));
        }
        return out;
    }

    Partition partition(char const* key) const
    {
        if (!doc_.contains(key)) {
            throw ConfigError(std::string("missing field '") + key + "'");
        }
        json const v = value(doc_.at(key));
        if (v.is_object() && v.contains("trace")) {
            ApproxTrace const t = trace_from_json(value(v.at("trace")));
            try {
                return slice(t, t.budget());
            }
            catch (std::domain_error const& ex) {
                throw ConfigError(std::string(key) + ": " + ex.what());
            }
        }
        return partition_from_json(v);
    }

    json const& doc() const { return doc_; }

private:
    static json const& list(json const& v, char const* key)
    {
        if (!v.is_array()) {
            throw ConfigError(std::string("'") + key + "' must be an array, a file reference or a generator");
        }
        return v;
    }

    json const& doc_;
    fs::path base_;
};

Kind variant_of(json const& j)
{
    return kind_from_string(get_or<std::string>(j, "variant", "sigma"));
}

Notation level_of(json const& j, Notation fallback)
{
    return j.contains("level") ? notation_from_json(j.at("level")) : fallback;
}

ScenarioConfig resolve(std::string const& scenario, Resolver const& r)
{
    json const& j = r.doc();
    std::uint64_t const support = get_or<std::uint64_t>(j, "support", 32);
    std::uint64_t const stages = get_or<std::uint64_t>(j, "stages", 200);

    if (scenario == "dark") {
        DarkConfig c;
        c.level = level_of(j, Notation::fin(2));
        c.variant = variant_of(j);
        c.support = support;
        c.stages = stages;
        c.opponents = r.traces("opponents", dual(c.variant), c.level, support, stages / 2, 1);
        c.machines = r.machines("machines", support, stages, 2);
        return c;
    }
    if (scenario == "mutually-dark") {
        MutualConfig c;
        c.level = level_of(j, Notation::fin(2));
        c.variant = variant_of(j);
        c.support = support;
        c.stages = stages;
        c.opponents = r.traces("opponents", dual(c.variant), c.level, support, stages / 2, 1);
        c.machines_u = r.oracles("machines_u", support, stages, 2);
        c.machines_v = r.oracles("machines_v", support, stages, 3);
        return c;
    }
    if (scenario == "finitely-minimal") {
        MinimalConfig c;
        c.base = j.contains("base") ? r.partition("base") : id_rel(support);
        c.representatives = get_or<std::vector<std::uint64_t>>(j, "representatives", {});
        c.stages = get_or<std::uint64_t>(j, "stages", 20);
        std::uint64_t const n = c.base.support();
        std::uint64_t const cells = n < 2 ? 1 : pair_code(n - 2, n - 1) + 1;
        c.opponents = r.traces("opponents", Kind::Sigma, level_of(j, Notation::fin(1)), cells, c.stages, 1);
        return c;
    }
    if (scenario == "inversion-fail") {
        InversionConfig c;
        c.support = get_or<std::uint64_t>(j, "support", 16);
        if (j.contains("enumerate")) {
            // [[element, stage], ...] as a c.e. set trace
            auto rows = get_or<std::vector<std::vector<std::uint64_t>>>(j, "enumerate", {});
            std::vector<Change> changes;
            std::uint64_t budget = 0;
            std::uint64_t bound = c.support / 4;
            for (auto const& row : rows) {
                if (row.size() != 2) {
                    throw ConfigError("enumerate rows are [element, stage]");
                }
                changes.push_back({row[0], row[1], true, Notation()});
                budget = std::max(budget, row[1]);
                bound = std::max(bound, row[0] + 1);
            }
            c.x = ApproxTrace(Kind::Sigma, Notation::fin(1), Domain::Set, bound, budget, std::move(changes));
        }
        else {
            c.x = trace_from_json(r.value(require<json>(j, "x")));
        }
        return c;
    }
    if (scenario == "onto-extension") {
        OntoConfig c;
        c.r = trace_from_json(r.value(require<json>(j, "r")));
        c.q = r.partition("q");
        c.stages = get_or<std::uint64_t>(j, "stages", 10);
        c.machines = r.machines("machines", 2 * std::max(c.r.support(), c.q.support()), c.stages, 2);
        return c;
    }
    if (scenario == "no-sup") {
        NoSupConfig c;
        c.r = r.partition("r");
        c.s = r.partition("s");
        c.t = r.partition("t");
        c.stages = get_or<std::uint64_t>(j, "stages", 50);
        c.pair_scan_budget = get_or<std::uint64_t>(j, "pair_scan_budget", 64);
        c.machines = r.machines("machines", 2 * std::max(c.r.support(), c.s.support()), c.stages, 2);
        return c;
    }
    OmegaConfig c;
    c.support = support;
    c.stages = stages;
    c.machines_u = r.oracles("machines_u", support, stages, 2);
    c.machines_v = r.oracles("machines_v", support, stages, 3);
    c.reductions = r.machines("reductions", support, stages, 4);
    return c;
}

} // namespace

std::string config_digest(json const& j)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : j.dump()) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json read_json_file(fs::path const& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read " + path.string());
    }
    try {
        return json::parse(in);
    }
    catch (json::parse_error const& ex) {
        throw std::runtime_error(path.string() + ": " + ex.what());
    }
}

RunConfig parse_config(json const& j, fs::path const& base_dir)
{
    if (!j.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    RunConfig rc;
    rc.scenario = require<std::string>(j, "scenario");
    if (scenarios.count(rc.scenario) == 0) {
        throw ConfigError("unknown scenario '" + rc.scenario + "'");
    }
    rc.source = j;
    rc.digest = config_digest(j);
    try {
        rc.cfg = resolve(rc.scenario, Resolver(j, base_dir));
    }
    catch (ConfigError const&) {
        throw;
    }
    catch (std::invalid_argument const& ex) {
        throw ConfigError(ex.what());
    }
    catch (std::out_of_range const& ex) {
        throw ConfigError(ex.what());
    }
    catch (json::exception const& ex) {
        throw ConfigError(ex.what());
    }
    return rc;
}

RunConfig load_config(fs::path const& path)
{
    json j;
    try {
        j = read_json_file(path);
    }
    catch (std::exception const& ex) {
        throw ConfigError(ex.what());
    }
    return parse_config(j, path.parent_path());
}

ConstructionResult run(RunConfig const& rc)
{
    ConstructionResult res = std::visit(
        [](auto const& c) -> ConstructionResult {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, DarkConfig>) {
                return run_dark(c);
            }
            else if constexpr (std::is_same_v<T, MutualConfig>) {
                return run_mutually_dark(c);
            }
            else if constexpr (std::is_same_v<T, MinimalConfig>) {
                return run_finitely_minimal(c);
            }
            else if constexpr (std::is_same_v<T, InversionConfig>) {
                try {
                    return build_inversion_counterexample(c.x, c.support);
                }
                catch (std::invalid_argument const& ex) {
                    throw PreconditionError(ex.what());
                }
            }
            else if constexpr (std::is_same_v<T, OntoConfig>) {
                return run_onto_extension(c);
            }
            else if constexpr (std::is_same_v<T, NoSupConfig>) {
                return run_no_sup(c);
            }
            else {
                return run_omega_pair(c);
            }
        },
        rc.cfg);
    res.log.config_digest = rc.digest;
    return res;
}

std::vector<AuditReport> audit_run(RunConfig const& rc, ConstructionResult const& res)
{
    std::vector<AuditReport> out;
    for (auto const& [name, t] : res.traces) {
        AuditReport a = audit_trace(t);
        a.suite += ":" + name;
        out.push_back(std::move(a));
    }
    std::visit(
        [&](auto const& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, DarkConfig> || std::is_same_v<T, MutualConfig>) {
                out.push_back(audit_requirements(res.log, res.traces, c));
                out.push_back(audit_parity(res.log, res.traces));
            }
            else if constexpr (std::is_same_v<T, OmegaConfig>) {
                out.push_back(audit_requirements(res.log, res.traces, c));
                out.push_back(audit_change_bound(res.log, res.traces));
            }
            else if constexpr (std::is_same_v<T, NoSupConfig>) {
                out.push_back(audit_no_sup(res.log, c.r, c.s, res.traces.at("U")));
            }
            else if constexpr (std::is_same_v<T, InversionConfig>) {
                out.push_back(audit_inversion(res));
            }
            else if constexpr (std::is_same_v<T, OntoConfig>) {
                out.push_back(audit_onto(res, c));
            }
            else {
                out.push_back(audit_minimal(res, c));
            }
        },
        rc.cfg);
    return out;
}

json result_to_json(RunConfig const& rc, ConstructionResult const& res)
{
    json traces = json::object();
    for (auto const& [name, t] : res.traces) {
        traces[name] = to_json(t);
    }
    return {{"config", rc.source}, {"log", to_json(res.log)}, {"traces", traces}};
}

ConstructionResult result_from_json(json const& j)
{
    ConstructionResult res;
    res.log = stage_trace_from_json(j.at("log"));
    for (auto const& [name, t] : j.at("traces").items()) {
        res.traces.emplace(name, trace_from_json(t));
    }
    return res;
}

} // namespace ershov
