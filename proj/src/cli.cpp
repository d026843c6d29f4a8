#include "ershov/cli.hpp"

#include "ershov/config.hpp"
#include "ershov/json_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

namespace ershov {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json load(std::string const& path)
{
    try {
        return read_json_file(path);
    }
    catch (std::exception const& ex) {
        throw InputError(ex.what());
    }
}

void write(std::string const& path, std::string const& text, std::ostream& out)
{
    if (path.empty() || path == "-") {
        out << text << '\n';
        return;
    }
    std::ofstream f(path);
    if (!f) {
        throw InputError("cannot write " + path);
    }
    f << text << '\n';
}

int cmd_construct(std::string const& config, std::string const& out_path, std::optional<std::uint64_t> stages,
                  std::optional<std::uint64_t> seed, bool audit, std::ostream& out, std::ostream& err)
{
    json doc = load(config);
    if (stages) {
        doc["stages"] = *stages;
    }
    if (seed) {
        doc["seed"] = *seed;
    }
    RunConfig const rc = parse_config(doc, fs::path(config).parent_path());
    ConstructionResult const res = run(rc);
    write(out_path, result_to_json(rc, res).dump(1), out);
    if (!audit) {
        return 0;
    }
    bool pass = true;
    for (auto const& a : audit_run(rc, res)) {
        pass = pass && a.pass;
        if (!a.pass) {
            err << to_json(a).dump() << '\n';
        }
    }
    return pass ? 0 : 1;
}

int cmd_audit(std::string const& in_path, std::string const& trace_path, std::string const& log_path,
              std::ostream& out)
{
    std::vector<AuditReport> reports;
    if (!in_path.empty()) {
        json const bundle = load(in_path);
        RunConfig rc;
        ConstructionResult res;
        try {
            rc = parse_config(bundle.at("config"), fs::path(in_path).parent_path());
            res = result_from_json(bundle);
        }
        catch (json::exception const& ex) {
            throw InputError(ex.what());
        }
        reports = audit_run(rc, res);
    }
    else {
        ApproxTrace t;
        try {
            t = trace_from_json(load(trace_path));
            if (!log_path.empty()) {
                // A bare log is only checked for being well formed.
                stage_trace_from_json(load(log_path));
            }
        }
        catch (json::exception const& ex) {
            throw InputError(ex.what());
        }
        reports.push_back(audit_trace(t));
    }
    bool pass = true;
    json suites = json::array();
    for (auto const& r : reports) {
        pass = pass && r.pass;
        suites.push_back(to_json(r));
    }
    out << json{{"pass", pass}, {"suites", suites}}.dump(1) << '\n';
    return pass ? 0 : 1;
}

int cmd_reduce(std::string const& r_path, std::string const& s_path, std::optional<std::uint64_t> range,
               std::ostream& out)
{
    Partition const r = partition_from_json(load(r_path));
    Partition const s = partition_from_json(load(s_path));
    auto f = reduce_exists(r, s, range.value_or(s.support()));
    if (!f) {
        out << "none\n";
        return 1;
    }
    out << json{{"reduction", *f}}.dump() << '\n';
    return 0;
}

int cmd_poset(std::string const& catalog_path, std::string const& dot_path, std::optional<std::uint64_t> range,
              std::ostream& out)
{
    json const doc = load(catalog_path);
    if (!doc.is_array()) {
        throw InputError("catalog must be an array of partitions");
    }
    std::vector<Partition> catalog;
    std::uint64_t bound = 0;
    for (auto const& p : doc) {
        catalog.push_back(partition_from_json(p));
        bound = std::max(bound, catalog.back().support());
    }
    Poset const ps = poset(catalog, range.value_or(bound));
    json matrix = json::array();
    for (auto const& row : ps.matrix) {
        json r = json::array();
        for (bool b : row) {
            r.push_back(b ? 1 : 0);
        }
        matrix.push_back(r);
    }
    std::string const dot = ps.to_dot();
    out << json{{"matrix", matrix}, {"degrees", ps.degrees}, {"hasse", ps.hasse}}.dump() << '\n';
    if (!dot_path.empty()) {
        write(dot_path, dot, out);
    }
    else {
        out << dot;
    }
    return 0;
}

int cmd_validate(std::string const& trace_path, std::ostream& out)
{
    ApproxTrace t;
    try {
        t = trace_from_json(load(trace_path));
    }
    catch (json::exception const& ex) {
        throw InputError(ex.what());
    }
    auto const rep = validate(t);
    json v = json::array();
    for (auto const& x : rep.violations) {
        v.push_back({{"invariant", x.invariant}, {"stage", x.stage}, {"index", x.index}, {"detail", x.detail}});
    }
    out << json{{"pass", rep.pass}, {"violations", v}}.dump(1) << '\n';
    return rep.pass ? 0 : 1;
}

} // namespace

int run_cli(int argc, char const* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Finite-stage simulator for Ershov-hierarchy equivalence relations"};
    app.require_subcommand(1);

    std::string config, out_path, in_path, trace_path, log_path, r_path, s_path, catalog, dot_path;
    std::optional<std::uint64_t> stages, seed, range;
    bool audit = false;

    auto* construct = app.add_subcommand("construct", "Run a scenario and write its log and traces");
    construct->add_option("--config", config, "Scenario config (JSON)")->required();
    construct->add_option("--out", out_path, "Output file, stdout when omitted");
    construct->add_option("--stages", stages, "Override the stage budget");
    construct->add_option("--seed", seed, "Override the generator seed");
    construct->add_flag("--audit", audit, "Run the audits; exit 1 if any fails");

    auto* aud = app.add_subcommand("audit", "Audit a construct output, or a bare trace");
    auto* in_opt = aud->add_option("--in", in_path, "Output of construct");
    auto* trace_opt = aud->add_option("--trace", trace_path, "A single ApproxTrace");
    aud->add_option("--log", log_path, "StageTrace accompanying --trace")->needs(trace_opt);
    in_opt->excludes(trace_opt);

    auto* red = app.add_subcommand("reduce", "Search for a computable reduction between finite partitions");
    red->add_option("--r", r_path, "Source partition")->required();
    red->add_option("--s", s_path, "Target partition")->required();
    red->add_option("--range", range, "Range bound, defaults to the target support");

    auto* pos = app.add_subcommand("poset", "Reducibility preorder of a catalog of partitions");
    pos->add_option("--catalog", catalog, "JSON array of partitions")->required();
    pos->add_option("--dot", dot_path, "Write the Hasse diagram here instead of stdout");
    pos->add_option("--range", range, "Range bound, defaults to the largest support");

    auto* val = app.add_subcommand("validate-trace", "Check the approximating-pair conditions");
    val->add_option("--trace", trace_path, "ApproxTrace JSON")->required();

    try {
        app.parse(argc, argv);
    }
    catch (CLI::CallForHelp const& e) {
        out << app.help();
        return 0;
    }
    catch (CLI::ParseError const& e) {
        err << e.what() << '\n';
        return 2;
    }

    try {
        if (construct->parsed()) {
            return cmd_construct(config, out_path, stages, seed, audit, out, err);
        }
        if (aud->parsed()) {
            if (in_path.empty() && trace_path.empty()) {
                err << "audit needs --in or --trace\n";
                return 2;
            }
            return cmd_audit(in_path, trace_path, log_path, out);
        }
        if (red->parsed()) {
            return cmd_reduce(r_path, s_path, range, out);
        }
        if (pos->parsed()) {
            return cmd_poset(catalog, dot_path, range, out);
        }
        return cmd_validate(trace_path, out);
    }
    catch (PreconditionError const& ex) {
        err << "precondition: " << ex.what() << '\n';
        return 3;
    }
    catch (ConfigError const& ex) {
        err << "config: " << ex.what() << '\n';
        return 2;
    }
    catch (InputError const& ex) {
        err << "input: " << ex.what() << '\n';
        return 2;
    }
    catch (std::invalid_argument const& ex) {
        err << "input: " << ex.what() << '\n';
        return 2;
    }
    catch (nlohmann::json::exception const& ex) {
        err << "input: " << ex.what() << '\n';
        return 2;
    }
}

} // namespace ershov
