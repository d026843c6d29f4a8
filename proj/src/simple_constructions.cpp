#include "ershov/construction.hpp"

#include "engine_util.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace ershov {

using nlohmann::json;
using namespace detail;

namespace {

std::vector<std::uint64_t> least_elements(Partition const& p)
{
    std::vector<std::uint64_t> out;
    for (auto const& b : p.blocks()) {
        out.push_back(b.front());
    }
    return out;
}

/// Writes every related pair of p into tb as (1, gamma).
void install(TraceBuilder& tb, Partition const& p, Notation const& gamma)
{
    for (auto const& b : p.blocks()) {
        for (std::size_t i = 0; i < b.size(); ++i) {
            for (std::size_t j = i + 1; j < b.size(); ++j) {
                tb.set(cell_of(b[i], b[j]), true, gamma);
            }
        }
    }
}

} // namespace

ConstructionResult run_finitely_minimal(MinimalConfig const& cfg)
{
    std::uint64_t const n = cfg.base.support();
    std::vector<std::uint64_t> reps =
        cfg.representatives.empty() ? least_elements(cfg.base) : cfg.representatives;
    for (std::size_t i = 0; i < reps.size(); ++i) {
        if (reps[i] >= n) {
            throw PreconditionError("finitely-minimal: representative outside the support");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (cfg.base.related(reps[i], reps[j])) {
                throw PreconditionError("finitely-minimal: representatives must be pairwise inequivalent");
            }
        }
    }
    for (auto const& e : cfg.opponents) {
        if (e.kind() != Kind::Sigma) {
            throw PreconditionError("finitely-minimal: opponents must be Sigma traces");
        }
    }

    ConstructionResult out;
    StageTrace& log = out.log;
    log.scenario = "finitely-minimal";
    log.notes.push_back(limit_note);

    Notation const zero;
    TraceBuilder tb(Kind::Sigma, Notation::fin(1), Domain::Relation, n);
    Partition rel = cfg.base;
    if (cfg.stages > 0) {
        install(tb, cfg.base, zero);
        tb.checkpoint();
        log.events.push_back({0, stage_step(0), "installed", {{"relation", "base"}}});
    }
    for (std::uint64_t k = 0; k + 1 < cfg.stages; ++k) {
        std::uint64_t const stage = k + 1;
        if (k >= cfg.opponents.size()) {
            log.events.push_back({stage, stage_step(stage), "idle", json::object()});
            tb.checkpoint();
            continue;
        }
        if (2 * k + 1 >= reps.size()) {
            throw PreconditionError("finitely-minimal: representative stream exhausted at stage " +
                                    std::to_string(stage));
        }
        std::uint64_t const x = reps[2 * k];
        std::uint64_t const y = reps[2 * k + 1];
        auto const& opp = cfg.opponents[k];
        std::uint64_t const z = cell_of(x, y);
        bool const e_related = opp.f(z, opp.budget());
        Requirement const r = req("Q", k, "single", k);
        if (!e_related) {
            auto cells = collapse_into(tb, rel, x, y, zero);
            log.events.push_back({stage, r, "collapsed", {{"u", x}, {"v", y}, {"cells", cells}, {"opponent_f", false}}});
        }
        else {
            log.events.push_back({stage, r, "scanned", {{"u", x}, {"v", y}, {"opponent_f", true}}});
        }
        tb.checkpoint();
    }
    log.final = {{"relations", {{"R", blocks_json(rel)}}}};
    out.traces.emplace("R", tb.build());
    return out;
}

ConstructionResult build_inversion_counterexample(ApproxTrace const& x, std::uint64_t n)
{
    if (n % 4 != 0) {
        throw std::invalid_argument("inversion: support must be a multiple of 4");
    }
    if (x.kind() != Kind::Sigma || x.level() != Notation::fin(1) || x.domain() != Domain::Set ||
        !validate(x).pass) {
        throw std::invalid_argument("inversion: X must be a valid c.e. set trace");
    }
    std::uint64_t const m = n / 4;
    Notation const zero;
    Notation const one = Notation::fin(1);

    ConstructionResult out;
    StageTrace& log = out.log;
    log.scenario = "inversion-fail";
    TraceBuilder tb(Kind::Sigma, Notation::fin(2), Domain::Relation, n);
    Partition rel(n);
    for (std::uint64_t i = 0; i < m; ++i) {
        collapse_into(tb, rel, 4 * i, 4 * i + 2, one);
        collapse_into(tb, rel, 4 * i + 1, 4 * i + 3, one);
    }
    tb.checkpoint();
    log.events.push_back({0, stage_step(0), "installed", {{"classes", "{4i,4i+2}, {4i+1,4i+3}"}}});

    std::map<std::uint64_t, std::vector<std::uint64_t>> enumerated;
    for (std::uint64_t z : x.touched_cells()) {
        for (Change const* c : x.history(z)) {
            if (c->f && z < m) {
                enumerated[c->t].push_back(z);
            }
        }
    }
    for (std::uint64_t t = 1; t <= x.budget(); ++t) {
        auto it = enumerated.find(t);
        if (it != enumerated.end()) {
            for (std::uint64_t i : it->second) {
                std::uint64_t const a = 4 * i, b = a + 1, c = a + 2, d = a + 3;
                tb.set(cell_of(a, c), false, zero);
                tb.set(cell_of(b, d), false, zero);
                rel.isolate(c);
                rel.isolate(d);
                collapse_into(tb, rel, a, d, one);
                collapse_into(tb, rel, b, c, one);
                log.events.push_back({t, req("stage", i, "single", 0), "collapsed",
                                      {{"i", i}, {"classes", {{a, d}, {b, c}}}}});
            }
        }
        tb.checkpoint();
    }

    FiniteMap f(2 * m);
    for (std::uint64_t i = 0; i < m; ++i) {
        f[2 * i] = 4 * i;
        f[2 * i + 1] = 4 * i + 1;
    }
    log.final = {{"relations", {{"R", blocks_json(rel)}}}, {"reduction", f}};
    out.traces.emplace("R", tb.build());
    return out;
}

ConstructionResult run_onto_extension(OntoConfig const& cfg)
{
    Partition const r_lim = slice(cfg.r, cfg.r.budget());
    Partition s0 = direct_sum(r_lim, cfg.q);
    std::uint64_t const n = s0.support();
    auto const r_reps = least_elements(r_lim);
    auto const q_reps = least_elements(cfg.q);
    Notation const zero;

    ConstructionResult out;
    StageTrace& log = out.log;
    log.scenario = "onto-extension";
    log.notes.push_back(limit_note);
    log.notes.push_back("convergence of phi_e is read at the stage budget");

    TraceBuilder tb(Kind::Sigma, Notation::fin(1), Domain::Relation, n);
    Partition rel = s0;
    if (cfg.stages > 0) {
        install(tb, s0, zero);
        tb.checkpoint();
        log.events.push_back({0, stage_step(0), "installed", {{"relation", "R (+) Q"}}});
    }
    std::uint64_t processed = 0;
    for (std::uint64_t e = 0; e + 1 < cfg.stages; ++e) {
        std::uint64_t const stage = e + 1;
        if (e >= r_reps.size() || e >= q_reps.size()) {
            throw PreconditionError("onto-extension: representative stream exhausted at stage " +
                                    std::to_string(stage));
        }
        std::uint64_t const even = 2 * r_reps[e];
        std::uint64_t const odd = 2 * q_reps[e] + 1;
        std::optional<std::uint64_t> a, b;
        if (e < cfg.machines.size()) {
            a = cfg.machines[e].eval(even, cfg.stages);
            b = cfg.machines[e].eval(odd, cfg.stages);
        }
        bool const guard = a && b && !r_lim.related(*a, *b);
        std::uint64_t const u = guard ? even : 0;
        std::vector<std::uint64_t> cells;
        if (!rel.related(u, odd)) {
            cells = collapse_into(tb, rel, u, odd, zero);
        }
        log.events.push_back({stage, req("P", e, "single", e), "collapsed",
                              {{"u", u}, {"v", odd}, {"guard", guard}, {"cells", cells}}});
        processed = e + 1;
        tb.checkpoint();
    }
    log.final = {{"relations", {{"S", blocks_json(rel)}}}, {"processed_q_classes", processed}};
    out.traces.emplace("S", tb.build());
    return out;
}

ConstructionResult run_no_sup(NoSupConfig const& cfg)
{
    Partition const u0 = direct_sum(cfg.r, cfg.s);
    std::uint64_t const n = u0.support();
    std::uint64_t const t_sup = cfg.t.support();
    std::uint64_t const code_end = t_sup == 0 ? 0 : pair_code(t_sup - 1, t_sup - 1) + 1;
    Notation const zero;

    ConstructionResult out;
    StageTrace& log = out.log;
    log.scenario = "no-sup";
    log.notes.push_back(limit_note);
    log.notes.push_back("convergence of phi_e is read at the stage budget; the pair scan is capped "
                        "per stage and resumes at its cursor");

    TraceBuilder tb(Kind::Sigma, Notation::fin(1), Domain::Relation, n);
    Partition rel = u0;
    std::set<std::uint64_t> z_set;  // R (+) S representatives
    auto in_z = [&](std::uint64_t x) { return x < n && z_set.count(u0.rep(x)) > 0; };
    auto merge = [&](std::uint64_t x, std::uint64_t y) {
        auto cells = collapse_into(tb, rel, x, y, zero);
        z_set.insert(u0.rep(x));
        z_set.insert(u0.rep(y));
        return cells;
    };

    struct Pending {
        std::uint64_t e;
        std::uint64_t cursor;
    };
    std::deque<Pending> queue;

    auto scan = [&](std::uint64_t stage) {
        std::uint64_t budget = cfg.pair_scan_budget;
        while (!queue.empty() && budget > 0) {
            Pending& p = queue.front();
            auto const& phi = cfg.machines[p.e];
            Requirement const r = req("P", p.e, "single", p.e);
            bool done = false;
            for (; p.cursor < code_end && budget > 0 && !done; ++p.cursor, --budget) {
                auto const [u, v] = pair_decode(p.cursor);
                if (u == v || u >= t_sup || v >= t_sup) {
                    continue;
                }
                auto const x = phi.eval(u, cfg.stages);
                auto const y = phi.eval(v, cfg.stages);
                if (!x || !y) {
                    log.events.push_back({stage, r, "scanned", {{"outcome", "2"}, {"u", u}, {"v", v}}});
                    done = true;
                }
                else if (cfg.t.related(u, v) != rel.related(*x, *y)) {
                    log.events.push_back({stage, r, "scanned",
                                          {{"outcome", "1a"}, {"u", u}, {"v", v}, {"x", *x}, {"y", *y}}});
                    done = true;
                }
                else if (*x % 2 != *y % 2 && *x < n && *y < n && !in_z(*x) && !in_z(*y)) {
                    auto cells = merge(*x, *y);
                    log.events.push_back({stage, r, "collapsed",
                                          {{"outcome", "1b"}, {"u", u}, {"v", v}, {"x", *x}, {"y", *y},
                                           {"cells", cells}}});
                    done = true;
                }
            }
            if (done) {
                queue.pop_front();
            }
            else if (p.cursor >= code_end) {
                log.events.push_back({stage, r, "scanned", {{"outcome", "exhausted"}}});
                queue.pop_front();
            }
            else {
                log.events.push_back({stage, r, "waiting", {{"cursor", p.cursor}}});
            }
        }
    };

    for (std::uint64_t stage = 0; stage < cfg.stages; ++stage) {
        if (stage == 0) {
            install(tb, u0, zero);
            log.events.push_back({0, stage_step(0), "installed", {{"relation", "R (+) S"}}});
        }
        if (stage % 2 == 0) {
            std::uint64_t const e = stage / 2;
            if (e < cfg.machines.size()) {
                queue.push_back({e, 0});
            }
            scan(stage);
        }
        else {
            std::optional<std::uint64_t> ev, od;
            for (std::uint64_t x = 0; x < n && (!ev || !od); ++x) {
                if (in_z(x)) {
                    continue;
                }
                auto& slot = x % 2 == 0 ? ev : od;
                if (!slot) {
                    slot = x;
                }
            }
            if (ev && od) {
                auto cells = merge(*ev, *od);
                log.events.push_back({stage, stage_step(stage), "collapsed",
                                      {{"u", *ev}, {"v", *od}, {"cells", cells}}});
            }
            else {
                log.events.push_back({stage, stage_step(stage), "idle", {{"reason", "no fresh class"}}});
            }
        }
        tb.checkpoint();
    }
    log.final = {{"relations", {{"U", blocks_json(rel)}}},
                 {"Z", std::vector<std::uint64_t>(z_set.begin(), z_set.end())}};
    out.traces.emplace("U", tb.build());
    return out;
}

} // namespace ershov
