#include "ershov/verification.hpp"

#include "ershov/restraint.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>

namespace ershov {

using nlohmann::json;

void AuditReport::add(std::string claim, bool ok, json witness)
{
    pass = pass && ok;
    checks.push_back({std::move(claim), ok, std::move(witness)});
}

json to_json(AuditReport const& r)
{
    json checks = json::array();
    for (auto const& c : r.checks) {
        checks.push_back({{"claim", c.claim}, {"pass", c.pass}, {"witness", c.witness}});
    }
    return {{"suite", r.suite}, {"pass", r.pass}, {"checks", checks}, {"coverage", r.coverage}};
}

namespace {

std::vector<std::uint64_t> distinct_checkpoints(ApproxTrace const& t)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t c : t.checkpoints()) {
        if (out.empty() || out.back() != c) {
            out.push_back(c);
        }
    }
    return out;
}

/// Trace time at the end of `stage`.
std::uint64_t time_of_stage(ApproxTrace const& t, std::uint64_t stage)
{
    auto const& cps = t.checkpoints();
    if (cps.empty()) {
        return t.budget();
    }
    return cps[std::min<std::uint64_t>(stage, cps.size() - 1)];
}

bool subset(std::vector<std::uint64_t> const& a, std::vector<std::uint64_t> const& b)
{
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/// What the event log says about each requirement, independent of log.final.
struct Replay {
    std::map<std::uint64_t, Requirement> requirement;
    std::map<std::uint64_t, std::uint64_t> actions;  // excluding diagonalizations
    std::map<std::uint64_t, std::uint64_t> last_action_stage;
    std::map<std::uint64_t, std::string> last_action;
    std::map<std::uint64_t, json> witness;        // current appointment data
    std::map<std::uint64_t, json> outcome;        // collapse or diagonalization since last init
    std::map<std::uint64_t, std::uint64_t> diagonalizations;  // in the current witness epoch
    std::vector<std::pair<std::uint64_t, std::uint64_t>> action_log;  // (stage, position)
};

Replay replay(StageTrace const& log, std::set<std::string> const& acting)
{
    Replay r;
    for (auto const& ev : log.events) {
        if (ev.requirement.kind == "stage") {
            continue;
        }
        std::uint64_t const p = ev.requirement.position;
        if (ev.action == "initialized-others") {
            for (std::uint64_t q : ev.data.at("positions")) {
                r.witness.erase(q);
                r.outcome.erase(q);
                r.diagonalizations.erase(q);
            }
            continue;
        }
        r.requirement[p] = ev.requirement;
        r.last_action[p] = ev.action;
        if (ev.action == "appointed") {
            r.witness[p] = ev.data;
            r.outcome.erase(p);
            r.diagonalizations.erase(p);
        }
        if (ev.action == "diagonalized") {
            ++r.diagonalizations[p];
            r.outcome[p] = ev.data;
        }
        else if (ev.action == "collapsed") {
            r.outcome[p] = ev.data;
        }
        if (acting.count(ev.action) > 0) {
            r.last_action_stage[p] = ev.stage;
            if (ev.action != "diagonalized") {
                ++r.actions[p];
            }
            r.action_log.emplace_back(ev.stage, p);
        }
    }
    return r;
}

/// Actions other than diagonalizations stay within 2H + 2, H the number of
/// higher-priority actions over the whole run.
void check_action_bound(AuditReport& rep, Replay const& r)
{
    std::map<std::uint64_t, std::uint64_t> per_position;
    for (auto const& [s, p] : r.action_log) {
        ++per_position[p];
    }
    std::uint64_t higher = 0;
    for (auto const& [p, total] : per_position) {
        auto it = r.actions.find(p);
        std::uint64_t const own = it == r.actions.end() ? 0 : it->second;
        bool const ok = own <= 2 * higher + 2;
        if (!ok) {
            rep.add("action-bound", false, {{"position", p}, {"actions", own}, {"higher", higher}});
        }
        higher += total;
    }
    rep.add("action-bound", true, {{"positions", per_position.size()}});
}

std::uint64_t settlement_stage(Replay const& r, std::uint64_t p)
{
    std::uint64_t s = 1;
    for (auto const& [stage, q] : r.action_log) {
        if (q < p) {
            s = std::max(s, stage);
        }
    }
    return s;
}

void check_f(AuditReport& rep, Replay const& r, ApproxTrace const& trace, Partition const& fin,
             std::uint64_t e, std::uint64_t p, std::string const& side, bool exempt_zero)
{
    json w = {{"index", e}, {"side", side}, {"position", p}};
    if (exempt_zero && fin.related(e, 0)) {
        w["status"] = "in [0]";
        rep.add("F", true, w);
        return;
    }
    std::uint64_t const settle = settlement_stage(r, p);
    auto const before = slice(trace, time_of_stage(trace, settle)).class_of(e);
    auto const after = fin.class_of(e);
    w["settled_at"] = settle;
    if (!subset(after, before)) {
        w["class_at_settlement"] = before;
        w["final_class"] = after;
        rep.add("F", false, w);
        return;
    }
    w["status"] = "respected";
    rep.add("F", true, w);
}

void check_q(AuditReport& rep, Replay const& r, ApproxTrace const& trace, ApproxTrace const& opp,
             std::uint64_t e, std::uint64_t p, std::string const& side)
{
    json w = {{"index", e}, {"side", side}, {"position", p}};
    auto it = r.witness.find(p);
    if (it == r.witness.end()) {
        auto la = r.last_action.find(p);
        w["status"] = la != r.last_action.end() && la->second == "parked" ? "parked" : "unreached";
        rep.add("Q", true, w);
        return;
    }
    std::uint64_t const x = it->second.at("x");
    std::uint64_t const y = it->second.at("y");
    std::uint64_t const cell = cell_of(x, y);
    bool const ours = trace.f(cell, trace.budget());
    bool const theirs = opp.f(cell, opp.budget());
    w.update({{"x", x}, {"y", y}, {"cell", cell}, {"f", ours}, {"opponent_limit", theirs}});
    w["status"] = ours != theirs ? "diagonalized" : "agrees";
    rep.add("Q", ours != theirs, w);

    std::uint64_t opp_changes = 0;
    for (Change const* c : opp.history(cell)) {
        opp_changes += c->t < trace.checkpoints().size();
    }
    auto d = r.diagonalizations.find(p);
    std::uint64_t const diags = d == r.diagonalizations.end() ? 0 : d->second;
    rep.add("Q-diagonalization-count", diags <= opp_changes,
            {{"position", p}, {"diagonalizations", diags}, {"opponent_changes", opp_changes}});
}

Partition final_slice(ApproxTrace const& t) { return slice(t, t.budget()); }

std::uint64_t query_length(OracleMachine const& m)
{
    std::uint64_t len = 0;
    for (auto const& e : m.entries) {
        for (auto const& [pos, bit] : e.query) {
            len = std::max(len, pos + 1);
        }
    }
    return len;
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> related_pair(std::set<std::uint64_t> const& w,
                                                                    Partition const& rel)
{
    for (auto a = w.begin(); a != w.end(); ++a) {
        for (auto b = std::next(a); b != w.end(); ++b) {
            if (rel.related(*a, *b)) {
                return std::make_pair(*a, *b);
            }
        }
    }
    return std::nullopt;
}

/// Logged, uncleared collapse whose pair is no longer related.
void check_collapse_kept(AuditReport& rep, Replay const& r, std::uint64_t p, Partition const& target,
                         char const* ukey, char const* vkey)
{
    auto it = r.outcome.find(p);
    if (it == r.outcome.end() || !it->second.contains(ukey)) {
        return;
    }
    std::uint64_t const u = it->second.at(ukey);
    std::uint64_t const v = it->second.at(vkey);
    rep.add("P-collapse-kept", target.related(u, v), {{"position", p}, {"u", u}, {"v", v}});
}

template <typename F>
AuditReport guarded(std::string suite, F&& body)
{
    AuditReport rep;
    rep.suite = std::move(suite);
    try {
        body(rep);
    }
    catch (std::domain_error const& ex) {
        rep.add("slice", false, {{"detail", ex.what()}});
    }
    return rep;
}

void expect_scenario(StageTrace const& log, std::string const& s)
{
    if (log.scenario != s) {
        throw std::invalid_argument("audit expects a " + s + " log, got " + log.scenario);
    }
}

} // namespace

AuditReport audit_trace(ApproxTrace const& trace)
{
    AuditReport rep;
    rep.suite = "trace";
    auto const v = validate(trace);
    for (auto const& x : v.violations) {
        rep.add(x.invariant, false, {{"stage", x.stage}, {"index", x.index}, {"detail", x.detail}});
    }
    if (v.violations.empty()) {
        rep.add("approximating-pair", true, {{"changes", trace.changes().size()}});
    }
    auto const cps = distinct_checkpoints(trace);
    if (trace.domain() == Domain::Relation) {
        bool all = true;
        for (std::uint64_t t : cps) {
            if (auto bad = transitivity_failure(trace, t)) {
                all = false;
                rep.add("equivalence-slice", false, {{"stage", t}, {"triple", *bad}});
                break;
            }
        }
        if (all) {
            rep.add("equivalence-slice", true, {{"checkpoints", cps.size()}});
        }
    }
    rep.coverage = {{"budget", trace.budget()}, {"checkpoints", cps.size()}, {"cells", trace.touched_cells().size()}};
    return rep;
}

AuditReport audit_requirements(StageTrace const& log, TraceMap const& traces, DarkConfig const& cfg)
{
    expect_scenario(log, "dark");
    return guarded("requirements", [&](AuditReport& rep) {
        Replay const r = replay(log, {"appointed", "diagonalized", "collapsed"});
        ApproxTrace const& tr = traces.at("R");
        Partition const fin = final_slice(tr);
        std::uint64_t const n = tr.support();
        std::uint64_t const groups = std::max(cfg.opponents.size(), cfg.machines.size());

        std::map<std::uint64_t, std::uint64_t> witness_sum;
        for (std::uint64_t e = 0; e < cfg.opponents.size(); ++e) {
            std::uint64_t const p = dark_position('Q', e);
            check_q(rep, r, tr, cfg.opponents[e], e, p, "single");
            if (auto it = r.witness.find(p); it != r.witness.end()) {
                witness_sum[e] = it->second.at("x").get<std::uint64_t>() + it->second.at("y").get<std::uint64_t>();
            }
        }
        for (std::uint64_t e = 0; e < cfg.machines.size(); ++e) {
            std::uint64_t const p = dark_position('P', e);
            json w = {{"index", e}, {"position", p}};
            std::set<std::uint64_t> dom;
            for (std::uint64_t u : cfg.machines[e].domain_at(cfg.stages)) {
                if (u < n) {
                    dom.insert(u);
                }
            }
            if (auto pr = related_pair(dom, fin)) {
                w.update({{"status", "defeated"}, {"u", pr->first}, {"v", pr->second},
                          {"logged", r.outcome.count(p) > 0}});
                rep.add("P", true, w);
                continue;
            }
            // Eligibility read off the final state.
            std::uint64_t bound = e;
            for (auto const& [j, s] : witness_sum) {
                if (j <= e) {
                    bound = std::max(bound, s);
                }
            }
            std::uint64_t floor = bound + 1;
            for (std::uint64_t i = 0; i <= bound && i < n; ++i) {
                floor = std::max(floor, fin.class_of(i).back() + 1);
            }
            std::optional<std::pair<std::uint64_t, std::uint64_t>> open;
            for (auto a = dom.lower_bound(floor); a != dom.end() && !open; ++a) {
                for (auto b = std::next(a); b != dom.end() && !open; ++b) {
                    if (*a % 2 != *b % 2) {
                        continue;
                    }
                    bool locked = false;
                    for (std::uint64_t x : fin.class_of(*a)) {
                        for (std::uint64_t y : fin.class_of(*b)) {
                            std::uint64_t const c = cell_of(x, y);
                            locked = locked || (!tr.f(c, tr.budget()) && tr.gamma(c, tr.budget()).is_zero());
                        }
                    }
                    if (!locked) {
                        open = std::make_pair(*a, *b);
                    }
                }
            }
            if (open) {
                w.update({{"status", "pending"}, {"u", open->first}, {"v", open->second}});
                rep.add("P", false, w);
            }
            else {
                w.update({{"status", "starved"}, {"fresh_from", floor}});
                rep.add("P", true, w);
            }
        }
        for (std::uint64_t e = 0; e < groups && e < n; ++e) {
            check_f(rep, r, tr, fin, e, dark_position('F', e), "single", false);
        }
        check_action_bound(rep, r);
        rep.coverage = {{"stages", cfg.stages}, {"requirements", 3 * groups}};
    });
}

AuditReport audit_requirements(StageTrace const& log, TraceMap const& traces, MutualConfig const& cfg)
{
    expect_scenario(log, "mutually-dark");
    return guarded("requirements", [&](AuditReport& rep) {
        Replay const r = replay(log, {"appointed", "diagonalized", "collapsed"});
        std::array<ApproxTrace const*, 2> const tr{&traces.at("U"), &traces.at("V")};
        std::array<Partition, 2> const fin{final_slice(*tr[0]), final_slice(*tr[1])};
        std::array<std::vector<OracleMachine> const*, 2> const machines{&cfg.machines_u, &cfg.machines_v};
        std::uint64_t const n = tr[0]->support();
        std::uint64_t const groups =
            std::max({cfg.opponents.size(), cfg.machines_u.size(), cfg.machines_v.size()});
        char const names[2] = {'U', 'V'};

        for (int s = 0; s < 2; ++s) {
            std::string const side(1, names[s]);
            for (std::uint64_t e = 0; e < cfg.opponents.size(); ++e) {
                check_q(rep, r, *tr[s], cfg.opponents[e], e, mutual_position('Q', names[s], e), side);
            }
            for (std::uint64_t e = 0; e < machines[s]->size(); ++e) {
                std::uint64_t const p = mutual_position('P', names[s], e);
                auto const& m = (*machines[s])[e];
                Bits const oracle = char_prefix(fin[s], query_length(m));
                std::set<std::uint64_t> dom;
                for (std::uint64_t u : oracle_enumerate(m, oracle, cfg.stages)) {
                    if (u < n) {
                        dom.insert(u);
                    }
                }
                json w = {{"index", e}, {"side", side}, {"position", p}};
                if (auto pr = related_pair(dom, fin[1 - s])) {
                    w.update({{"status", "defeated"}, {"u", pr->first}, {"v", pr->second},
                              {"logged", r.outcome.count(p) > 0}});
                }
                else {
                    w["status"] = "starved";
                }
                rep.add("P", true, w);
                check_collapse_kept(rep, r, p, fin[1 - s], "u", "v");
            }
            for (std::uint64_t e = 0; e < groups && e < n; ++e) {
                check_f(rep, r, *tr[s], fin[s], e, mutual_position('F', names[s], e), side, false);
            }
        }
        check_action_bound(rep, r);
        rep.coverage = {{"stages", cfg.stages}, {"requirements", 6 * groups}};
    });
}

AuditReport audit_requirements(StageTrace const& log, TraceMap const& traces, OmegaConfig const& cfg)
{
    expect_scenario(log, "omega-pair");
    return guarded("requirements", [&](AuditReport& rep) {
        Replay const r = replay(log, {"appointed", "diagonalized", "collapsed", "restrained", "waiting", "parked"});
        std::array<ApproxTrace const*, 2> const tr{&traces.at("U"), &traces.at("V")};
        std::array<Partition, 2> const fin{final_slice(*tr[0]), final_slice(*tr[1])};
        std::array<std::vector<OracleMachine> const*, 2> const machines{&cfg.machines_u, &cfg.machines_v};
        std::uint64_t const n = cfg.support;
        auto side_index = [](std::string const& s) { return s == "U" ? 0 : 1; };

        for (auto const& [p, req] : r.requirement) {
            int const s = side_index(req.side);
            int const o = 1 - s;
            json w = {{"index", req.index}, {"side", req.side}, {"position", p}};
            if (req.kind == "P") {
                std::set<std::uint64_t> dom;
                if (req.index < machines[s]->size()) {
                    auto const& m = (*machines[s])[req.index];
                    for (std::uint64_t u : oracle_enumerate(m, char_prefix(fin[s], query_length(m)), cfg.stages)) {
                        if (u < n) {
                            dom.insert(u);
                        }
                    }
                }
                if (auto pr = related_pair(dom, fin[o])) {
                    w.update({{"status", "defeated"}, {"u", pr->first}, {"v", pr->second},
                              {"logged", r.outcome.count(p) > 0}});
                }
                else {
                    w["status"] = "starved";
                }
                rep.add("P", true, w);
                check_collapse_kept(rep, r, p, fin[o], "a", "b");
            }
            else if (req.kind == "I") {
                auto it = r.outcome.find(p);
                if (it == r.outcome.end()) {
                    auto la = r.last_action.find(p);
                    w["status"] = la != r.last_action.end() && la->second == "parked" ? "parked" : "waiting";
                    rep.add("I", true, w);
                    continue;
                }
                std::uint64_t const x = it->second.at("x");
                std::uint64_t const y = it->second.at("y");
                bool const in_x = fin[s].related(0, x);
                bool const in_y = y < n && fin[o].related(0, y);
                w.update({{"x", x}, {"y", y}, {"x_in_0", in_x}, {"y_in_0", in_y}});
                w["status"] = in_x != in_y ? "diagonalized" : "reduces";
                rep.add("I", in_x != in_y, w);
            }
        }
        for (std::uint64_t e = 0; e < n; ++e) {
            for (int s = 0; s < 2; ++s) {
                char const name = s == 0 ? 'U' : 'V';
                std::uint64_t const p = omega_position('F', name, e);
                if (r.requirement.count(p) > 0) {
                    check_f(rep, r, *tr[s], fin[s], e, p, std::string(1, name), true);
                }
            }
        }
        check_action_bound(rep, r);
        rep.coverage = {{"stages", cfg.stages}, {"requirements", r.requirement.size()}};
    });
}

AuditReport audit_parity(StageTrace const& log, TraceMap const& traces)
{
    AuditReport rep;
    rep.suite = "parity";
    std::uint64_t cells = 0;
    for (auto const& [name, tr] : traces) {
        std::uint64_t const start = tr.checkpoints().size() > 1 ? tr.checkpoints()[1] : 0;
        bool ok = true;
        for (std::uint64_t c : tr.touched_cells()) {
            auto const [x, y] = pair_decode(c);
            if (x == y || x % 2 != y % 2) {
                continue;
            }
            ++cells;
            std::vector<Change const*> late;
            for (Change const* ch : tr.history(c)) {
                if (ch->t > start) {
                    late.push_back(ch);
                }
            }
            bool const good = late.empty() || (late.size() == 1 && late[0]->f && !tr.f(c, late[0]->t - 1));
            if (!good) {
                ok = false;
                rep.add("equal-parity-monotone", false,
                        {{"relation", name}, {"cell", c}, {"x", x}, {"y", y}, {"stage", late.back()->t},
                         {"changes", late.size()}});
            }
        }
        if (ok) {
            rep.add("equal-parity-monotone", true, {{"relation", name}});
        }
    }
    rep.coverage = {{"scenario", log.scenario}, {"cells", cells}};
    return rep;
}

AuditReport audit_change_bound(StageTrace const& log, TraceMap const& traces)
{
    AuditReport rep;
    rep.suite = "change-bound";
    std::uint64_t cells = 0;
    for (auto const& [name, tr] : traces) {
        bool ok = true;
        for (std::uint64_t c : tr.touched_cells()) {
            ++cells;
            std::uint64_t const changes = tr.history(c).size();
            std::uint64_t const e_r = omega_f_bound(c);
            std::uint64_t const bound = capped_pow2(e_r);
            if (changes > bound) {
                ok = false;
                rep.add("change-bound", false,
                        {{"relation", name}, {"cell", c}, {"changes", changes}, {"e_R", e_r}, {"bound", bound},
                         {"stage", tr.history(c).back()->t}});
            }
        }
        if (ok) {
            rep.add("change-bound", true, {{"relation", name}});
        }
    }
    rep.coverage = {{"scenario", log.scenario}, {"cells", cells}};
    return rep;
}

AuditReport audit_no_sup(StageTrace const& log, Partition const& r, Partition const& s, ApproxTrace const& u)
{
    return guarded("no-sup", [&](AuditReport& rep) {
        Partition const u0 = direct_sum(r, s);
        FiniteMap even(r.support()), odd(s.support());
        for (std::uint64_t x = 0; x < even.size(); ++x) {
            even[x] = 2 * x;
        }
        for (std::uint64_t x = 0; x < odd.size(); ++x) {
            odd[x] = 2 * x + 1;
        }
        auto const cps = distinct_checkpoints(u);
        bool ok = true;
        for (std::uint64_t t : cps) {
            Partition const sl = slice(u, t);
            bool const a = verify_reduction(even, r, sl);
            bool const b = verify_reduction(odd, s, sl);
            if (!a || !b) {
                ok = false;
                rep.add("parity-reductions", false, {{"stage", t}, {"even", a}, {"odd", b}});
                break;
            }
        }
        if (ok) {
            rep.add("parity-reductions", true, {{"checkpoints", cps.size()}});
        }

        std::vector<std::uint64_t> z = log.final.value("Z", std::vector<std::uint64_t>{});
        std::set<std::uint64_t> const zs(z.begin(), z.end());
        bool inj = zs.size() == z.size();
        for (std::uint64_t x : z) {
            inj = inj && x < u0.support() && u0.rep(x) == x;
        }
        rep.add("Z-injective", inj, {{"Z", z}});

        Partition const fin = slice(u, u.budget());
        bool shape = true;
        for (auto const& block : fin.blocks()) {
            std::set<std::uint64_t> reps;
            for (std::uint64_t x : block) {
                reps.insert(u0.rep(x));
            }
            if (reps.size() == 1) {
                continue;
            }
            bool good = reps.size() == 2 && (*reps.begin() % 2) != (*reps.rbegin() % 2);
            for (std::uint64_t x : reps) {
                good = good && zs.count(x) > 0;
            }
            if (!good) {
                shape = false;
                rep.add("merged-class-shape", false, {{"block", block}, {"parts", reps}});
            }
        }
        if (shape) {
            rep.add("merged-class-shape", true, json::object());
        }
        rep.coverage = {{"checkpoints", cps.size()}, {"support", u.support()}};
    });
}

AuditReport audit_inversion(ConstructionResult const& res)
{
    return guarded("inversion", [&](AuditReport& rep) {
        ApproxTrace const& tr = res.traces.at("R");
        Partition const fin = final_slice(tr);
        FiniteMap const f = res.log.final.at("reduction").get<FiniteMap>();
        bool const reduces = verify_reduction(f, id_rel(f.size()), fin);
        rep.add("reduces-Id", reduces, {{"domain", f.size()}});
        std::set<std::uint64_t> hit;
        for (std::uint64_t y : f) {
            hit.insert(fin.rep(y));
        }
        std::vector<std::uint64_t> missed;
        for (auto const& b : fin.blocks()) {
            if (hit.count(b.front()) == 0) {
                missed.push_back(b.front());
            }
        }
        rep.add("hits-all-classes", missed.empty(), {{"missed", missed}, {"classes", fin.class_count()}});
        rep.add("level", tr.level() == Notation::fin(2), {{"level", tr.level().to_string()}});
    });
}

AuditReport audit_onto(ConstructionResult const& res, OntoConfig const& cfg)
{
    return guarded("onto", [&](AuditReport& rep) {
        Partition const r = slice(cfg.r, cfg.r.budget());
        Partition const fin = final_slice(res.traces.at("S"));
        FiniteMap f(r.support());
        for (std::uint64_t x = 0; x < f.size(); ++x) {
            f[x] = 2 * x;
        }
        rep.add("reduces-R", verify_reduction(f, r, fin), {{"domain", f.size()}});
        std::uint64_t const processed = res.log.final.value("processed_q_classes", std::uint64_t{0});
        std::map<std::uint64_t, std::uint64_t> q_index;
        for (auto const& b : cfg.q.blocks()) {
            q_index.emplace(b.front(), q_index.size());
        }
        std::vector<std::uint64_t> missed;
        for (auto const& b : fin.blocks()) {
            bool even = false;
            for (std::uint64_t x : b) {
                even = even || x % 2 == 0;
            }
            if (!even) {
                std::uint64_t const q = (b.front() - 1) / 2;
                if (q < cfg.q.support() && q_index.at(cfg.q.rep(q)) < processed) {
                    missed.push_back(b.front());
                }
            }
        }
        rep.add("hits-processed-classes", missed.empty(), {{"missed", missed}, {"processed", processed}});
    });
}

AuditReport audit_minimal(ConstructionResult const& res, MinimalConfig const& cfg)
{
    return guarded("finitely-minimal", [&](AuditReport& rep) {
        Partition const fin = final_slice(res.traces.at("R"));
        bool contains = true;
        for (auto const& b : cfg.base.blocks()) {
            for (std::uint64_t x : b) {
                contains = contains && fin.related(b.front(), x);
            }
        }
        rep.add("contains-base", contains);
        std::vector<std::uint64_t> reps = cfg.representatives;
        if (reps.empty()) {
            for (auto const& b : cfg.base.blocks()) {
                reps.push_back(b.front());
            }
        }
        for (std::uint64_t k = 0; k + 1 < cfg.stages && k < cfg.opponents.size(); ++k) {
            std::uint64_t const x = reps.at(2 * k);
            std::uint64_t const y = reps.at(2 * k + 1);
            auto const& e = cfg.opponents[k];
            bool const theirs = e.f(cell_of(x, y), e.budget());
            bool const ours = fin.related(x, y);
            rep.add("differs-from-E", ours != theirs, {{"k", k}, {"x", x}, {"y", y}, {"R", ours}, {"E", theirs}});
        }
    });
}

} // namespace ershov
