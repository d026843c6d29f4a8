#include "ershov/json_io.hpp"

#include <cctype>
#include <stdexcept>

namespace ershov {

using nlohmann::json;

namespace {

[[noreturn]] void bad(std::string const& what)
{
    throw std::invalid_argument(what);
}

bool is_natural(json const& j)
{
    return j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0);
}

std::uint64_t read_number(std::string const& s, std::size_t& i)
{
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) {
        bad("notation: digit expected at offset " + std::to_string(i) + " in '" + s + "'");
    }
    std::uint64_t v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        v = v * 10 + static_cast<std::uint64_t>(s[i] - '0');
        ++i;
    }
    return v;
}

template <typename T>
T field(json const& j, char const* key)
{
    if (!j.is_object() || !j.contains(key)) {
        bad(std::string("missing field '") + key + "'");
    }
    try {
        return j.at(key).get<T>();
    }
    catch (json::exception const&) {
        bad(std::string("field '") + key + "' has the wrong type");
    }
}

} // namespace

Notation parse_notation(std::string const& text)
{
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            s.push_back(c);
        }
    }
    if (s.empty()) {
        bad("notation: empty string");
    }
    if (s == "0") {
        return Notation();
    }
    std::vector<Term> terms;
    std::size_t i = 0;
    while (true) {
        Term t;
        if (s[i] == 'w') {
            ++i;
            t.exponent = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                t.exponent = read_number(s, i);
            }
            if (i < s.size() && s[i] == '*') {
                ++i;
                t.coefficient = read_number(s, i);
            }
        }
        else {
            t.exponent = 0;
            t.coefficient = read_number(s, i);
        }
        terms.push_back(t);
        if (i == s.size()) {
            break;
        }
        if (s[i] != '+' || ++i == s.size()) {
            bad("notation: unexpected text in '" + text + "'");
        }
    }
    try {
        return Notation(std::move(terms));
    }
    catch (std::invalid_argument const&) {
        bad("notation: '" + text + "' is not in normal form");
    }
}

json to_json(Notation const& a)
{
    return a.to_string();
}

Notation notation_from_json(json const& j)
{
    if (is_natural(j)) {
        return Notation::fin(j.get<std::uint64_t>());
    }
    if (j.is_string()) {
        return parse_notation(j.get<std::string>());
    }
    bad("notation must be a string or a natural number");
}

Kind kind_from_string(std::string const& s)
{
    if (s == "sigma" || s == "Sigma") {
        return Kind::Sigma;
    }
    if (s == "pi" || s == "Pi") {
        return Kind::Pi;
    }
    bad("unknown kind '" + s + "'");
}

Domain domain_from_string(std::string const& s)
{
    if (s == "set") {
        return Domain::Set;
    }
    if (s == "relation") {
        return Domain::Relation;
    }
    bad("unknown domain '" + s + "'");
}

json to_json(Partition const& p)
{
    json blocks = json::array();
    for (auto const& b : p.blocks()) {
        if (b.size() > 1) {
            blocks.push_back(b);
        }
    }
    return {{"support", p.support()}, {"blocks", blocks}};
}

Partition partition_from_json(json const& j)
{
    auto const n = field<std::uint64_t>(j, "support");
    if (j.contains("mod")) {
        return id_n(field<std::uint64_t>(j, "mod"), n);
    }
    auto blocks = j.contains("blocks") ? field<std::vector<std::vector<std::uint64_t>>>(j, "blocks")
                                       : std::vector<std::vector<std::uint64_t>>{};
    std::vector<bool> seen(n, false);
    for (auto const& b : blocks) {
        for (std::uint64_t x : b) {
            if (x < n) {
                seen[x] = true;
            }
        }
    }
    for (std::uint64_t x = 0; x < n; ++x) {
        if (!seen[x]) {
            blocks.push_back({x});
        }
    }
    return Partition::from_blocks(n, blocks);
}

json to_json(ApproxTrace const& t)
{
    json changes = json::array();
    for (auto const& c : t.changes()) {
        changes.push_back({c.z, c.t, c.f ? 1 : 0, c.gamma.to_string()});
    }
    return {{"kind", to_string(t.kind())},       {"level", t.level().to_string()},
            {"domain", to_string(t.domain())},   {"support", t.support()},
            {"budget", t.budget()},              {"changes", changes},
            {"checkpoints", t.checkpoints()}};
}

ApproxTrace trace_from_json(json const& j)
{
    std::vector<Change> changes;
    if (j.contains("changes")) {
        if (!j.at("changes").is_array()) {
            bad("changes must be an array");
        }
        for (auto const& row : j.at("changes")) {
            if (!row.is_array() || row.size() != 4 || !is_natural(row[0]) || !is_natural(row[1]) ||
                !is_natural(row[2])) {
                bad("change rows are [z, t, f, gamma]");
            }
            changes.push_back({row[0].get<std::uint64_t>(), row[1].get<std::uint64_t>(),
                               row[2].get<std::uint64_t>() != 0, notation_from_json(row[3])});
        }
    }
    auto checkpoints = j.contains("checkpoints") ? field<std::vector<std::uint64_t>>(j, "checkpoints")
                                                 : std::vector<std::uint64_t>{};
    return ApproxTrace(kind_from_string(field<std::string>(j, "kind")), notation_from_json(j.at("level")),
                       domain_from_string(field<std::string>(j, "domain")), field<std::uint64_t>(j, "support"),
                       field<std::uint64_t>(j, "budget"), std::move(changes), std::move(checkpoints));
}

json to_json(ClockedMachine const& m)
{
    json rows = json::array();
    for (auto const& [x, e] : m.entries) {
        rows.push_back({x, e.output, e.stage});
    }
    return {{"entries", rows}};
}

ClockedMachine machine_from_json(json const& j)
{
    ClockedMachine m;
    for (auto const& row : field<std::vector<std::vector<std::uint64_t>>>(j, "entries")) {
        if (row.size() != 3) {
            bad("machine rows are [input, output, stage]");
        }
        if (!m.entries.emplace(row[0], ClockedMachine::Entry{row[1], row[2]}).second) {
            bad("machine input " + std::to_string(row[0]) + " listed twice");
        }
    }
    return m;
}

json to_json(OracleMachine const& m)
{
    json rows = json::array();
    for (auto const& e : m.entries) {
        json q = json::array();
        for (auto const& [pos, bit] : e.query) {
            q.push_back({pos, bit ? 1 : 0});
        }
        rows.push_back({{"query", q}, {"element", e.element}, {"stage", e.stage}});
    }
    return {{"entries", rows}};
}

OracleMachine oracle_machine_from_json(json const& j)
{
    OracleMachine m;
    if (!j.is_object() || !j.contains("entries") || !j.at("entries").is_array()) {
        bad("oracle machine needs an entries array");
    }
    for (auto const& row : j.at("entries")) {
        OracleMachine::Entry e;
        e.element = field<std::uint64_t>(row, "element");
        e.stage = row.contains("stage") ? field<std::uint64_t>(row, "stage") : 0;
        if (row.contains("query")) {
            for (auto const& q : field<std::vector<std::vector<std::uint64_t>>>(row, "query")) {
                if (q.size() != 2 || q[1] > 1) {
                    bad("query rows are [position, bit]");
                }
                e.query[q[0]] = q[1] == 1;
            }
        }
        m.entries.push_back(std::move(e));
    }
    return m;
}

} // namespace ershov
