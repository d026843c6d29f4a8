#include "ershov/construction.hpp"

#include "engine_util.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace ershov {

using nlohmann::json;
using namespace detail;

namespace {

void check_opponents(std::vector<ApproxTrace> const& opponents, Kind variant,
                     Notation const& level)
{
    for (std::size_t e = 0; e < opponents.size(); ++e) {
        auto const& o = opponents[e];
        if (o.kind() != dual(variant) || o.level() != level || o.domain() != Domain::Set) {
            throw PreconditionError("opponent " + std::to_string(e) +
                                    " must be a " + to_string(dual(variant)) +
                                    " set trace at level " + level.to_string());
        }
    }
}

} // namespace

namespace detail {

void check_dark_level(Kind variant, Notation const& level)
{
    if (variant == Kind::Sigma && level < Notation::fin(1)) {
        throw PreconditionError("the sigma variant needs a level of at least 1");
    }
    if (variant == Kind::Pi && level <= Notation::fin(1)) {
        throw PreconditionError("the pi variant needs a level above 1");
    }
}

void check_dark_opponents(std::vector<ApproxTrace> const& opponents, Kind variant,
                          Notation const& level)
{
    check_opponents(opponents, variant, level);
}

} // namespace detail

ConstructionResult run_dark(DarkConfig const& cfg)
{
    check_dark_level(cfg.variant, cfg.level);
    check_opponents(cfg.opponents, cfg.variant, cfg.level);

    std::uint64_t const n = cfg.support;
    std::uint64_t const n_q = cfg.opponents.size();
    std::uint64_t const n_p = cfg.machines.size();
    std::uint64_t const groups = std::max(n_q, n_p);
    Notation const zero;
    Notation const one = Notation::fin(1);

    ConstructionResult out;
    StageTrace& log = out.log;
    log.scenario = "dark";
    log.notes.push_back(limit_note);
    log.notes.push_back("requirements without a program are absent; a stage where nothing "
                        "requires attention is logged as idle");

    TraceBuilder tb(cfg.variant, cfg.level, Domain::Relation, n);
    Partition rel(n);
    std::vector<std::optional<Witness>> witness(n_q);
    std::vector<bool> parked(n_q, false);
    std::uint64_t floor = 0;

    auto emit = [&](std::uint64_t stage, Requirement r, std::string action, json data) {
        log.events.push_back({stage, std::move(r), std::move(action), std::move(data)});
    };

    if (cfg.stages > 0) {
        emit(0, stage_step(0), "installed", {{"relation", "R[0]"}});
        tb.checkpoint();
    }
    if (cfg.stages > 1) {
        if (cfg.variant == Kind::Pi) {
            for (std::uint64_t y = 1; y < n; ++y) {
                for (std::uint64_t x = 0; x < y; ++x) {
                    if (!(x % 2 == 0 && y == x + 1)) {
                        tb.set(cell_of(x, y), false, one);
                    }
                }
            }
            for (std::uint64_t i = 0; 2 * i + 1 < n; ++i) {
                rel.merge(2 * i, 2 * i + 1);
            }
        }
        emit(1, stage_step(1), "installed", {{"relation", cfg.variant == Kind::Pi ? "Id + {2i,2i+1}" : "Id"}});
        tb.checkpoint();
    }

    auto bound_for = [&](std::uint64_t e) {
        std::uint64_t b = e;
        for (std::uint64_t j = 0; j <= e && j < n_q; ++j) {
            if (witness[j]) {
                b = std::max(b, witness[j]->x + witness[j]->y);
            }
        }
        return b;
    };

    auto inactive = [&](std::uint64_t e, std::uint64_t stage) {
        auto const dom = cfg.machines[e].domain_at(stage);
        for (std::size_t a = 0; a < dom.size(); ++a) {
            for (std::size_t b = a + 1; b < dom.size(); ++b) {
                if (dom[b] < n && rel.related(dom[a], dom[b])) {
                    return true;
                }
            }
        }
        return false;
    };

    auto eligible_pair = [&](std::uint64_t e, std::uint64_t stage)
        -> std::optional<std::pair<std::uint64_t, std::uint64_t>> {
        std::uint64_t const b = bound_for(e);
        std::uint64_t floor_p = 0;
        for (std::uint64_t i = 0; i <= b && i < n; ++i) {
            floor_p = std::max(floor_p, class_max(rel, i) + 1);
        }
        if (b >= n) {
            floor_p = std::max(floor_p, b + 1);
        }
        std::vector<std::uint64_t> cand;
        for (std::uint64_t u : cfg.machines[e].domain_at(stage)) {
            if (u < n && u >= floor_p) {
                cand.push_back(u);
            }
        }
        std::optional<std::pair<std::uint64_t, std::uint64_t>> best;
        for (std::size_t a = 0; a < cand.size(); ++a) {
            for (std::size_t c = a + 1; c < cand.size(); ++c) {
                std::uint64_t const u = cand[a];
                std::uint64_t const v = cand[c];
                if (u % 2 != v % 2 || rel.related(u, v)) {
                    continue;
                }
                if (best && pair_code(u, v) >= pair_code(best->first, best->second)) {
                    continue;
                }
                bool locked = false;
                for (std::uint64_t cell : cross_cells(rel, u, v)) {
                    if (!tb.f(cell) && tb.gamma(cell).is_zero()) {
                        locked = true;
                        break;
                    }
                }
                if (!locked) {
                    best = std::make_pair(u, v);
                }
            }
        }
        return best;
    };

    auto find_witness = [&](std::uint64_t e, std::uint64_t stage) -> std::optional<Witness> {
        auto const& opp = cfg.opponents[e];
        std::uint64_t i = (std::max(floor, e + 1) + 1) / 2;
        for (; 2 * i + 1 < n; ++i) {
            Witness w{2 * i, 2 * i + 1};
            bool const pristine_opp =
                opp.f(w.cell(), stage) == initial_value(opp.kind()) && opp.gamma(w.cell(), stage) == cfg.level;
            bool const pristine_own =
                tb.f(w.cell()) == initial_value(cfg.variant) && tb.gamma(w.cell()) == cfg.level;
            if (pristine_opp && pristine_own) {
                return w;
            }
        }
        return std::nullopt;
    };

    for (std::uint64_t stage = 2; stage < cfg.stages; ++stage) {
        std::optional<std::uint64_t> acted_position;
        for (std::uint64_t e = 0; e < groups && !acted_position; ++e) {
            if (e < n_q) {
                Requirement const r = req("Q", e, "single", dark_position('Q', e));
                auto const& opp = cfg.opponents[e];
                if (!witness[e]) {
                    if (auto w = find_witness(e, stage)) {
                        witness[e] = w;
                        parked[e] = false;
                        floor = std::max(floor, w->y + 1);
                        emit(stage, r, "appointed", {{"x", w->x}, {"y", w->y}, {"cell", w->cell()}});
                        acted_position = r.position;
                    }
                    else if (!parked[e]) {
                        parked[e] = true;
                        emit(stage, r, "parked", {{"reason", "no fresh witness inside the support"}});
                    }
                }
                else if (tb.f(witness[e]->cell()) == opp.f(witness[e]->cell(), stage)) {
                    Witness const w = *witness[e];
                    bool const value = !opp.f(w.cell(), stage);
                    Notation const gamma = opp.gamma(w.cell(), stage);
                    for (std::uint64_t z : {w.x, w.y}) {
                        for (std::uint64_t m : rel.class_of(z)) {
                            if (m != w.x && m != w.y) {
                                throw std::logic_error("dark: witness class was modified");
                            }
                        }
                    }
                    tb.set(w.cell(), value, gamma);
                    if (value) {
                        rel.merge(w.x, w.y);
                    }
                    else {
                        rel.isolate(w.y);
                    }
                    emit(stage, r, "diagonalized",
                         {{"cell", w.cell()}, {"f", value}, {"gamma", gamma.to_string()},
                          {"opponent_f", !value}});
                    acted_position = r.position;
                }
            }
            if (!acted_position && e < n_p && !inactive(e, stage - 1)) {
                if (auto pr = eligible_pair(e, stage)) {
                    Requirement const r = req("P", e, "single", dark_position('P', e));
                    auto const [u, v] = *pr;
                    auto cells = collapse_into(tb, rel, u, v, zero);
                    floor = std::max(floor, class_max(rel, u) + 1);
                    emit(stage, r, "collapsed", {{"u", u}, {"v", v}, {"cells", cells}});
                    acted_position = r.position;
                }
            }
        }
        if (!acted_position) {
            emit(stage, stage_step(stage), "idle", json::object());
        }
        else {
            std::vector<std::uint64_t> cleared;
            for (std::uint64_t k = 0; k < n_q; ++k) {
                if (dark_position('Q', k) > *acted_position && witness[k]) {
                    witness[k].reset();
                    cleared.push_back(dark_position('Q', k));
                }
            }
            if (!cleared.empty()) {
                Requirement r = log.events.back().requirement;
                emit(stage, r, "initialized-others", {{"positions", cleared}});
            }
        }
        tb.checkpoint();
    }

    json reqs = json::array();
    for (std::uint64_t e = 0; e < groups; ++e) {
        if (e < n_q) {
            json q = {{"kind", "Q"}, {"index", e}, {"position", dark_position('Q', e)}};
            if (witness[e]) {
                q["witness"] = {witness[e]->x, witness[e]->y};
            }
            q["parked"] = parked[e] && !witness[e];
            reqs.push_back(q);
        }
        if (e < n_p) {
            reqs.push_back({{"kind", "P"}, {"index", e}, {"position", dark_position('P', e)},
                            {"inactive", inactive(e, cfg.stages)}});
        }
    }
    log.final = {{"relations", {{"R", blocks_json(rel)}}}, {"requirements", reqs}};
    out.traces.emplace("R", tb.build());
    return out;
}

} // namespace ershov
