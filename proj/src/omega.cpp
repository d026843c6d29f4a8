#include "ershov/construction.hpp"
#include "ershov/restraint.hpp"

#include "engine_util.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <tuple>

namespace ershov {

using nlohmann::json;
using namespace detail;

std::uint64_t omega_position(char kind, char side, std::uint64_t e)
{
    bool const u = side == 'U';
    switch (kind) {
    case 'F': return 6 * e + (u ? 1 : 0);
    case 'P': return 6 * e + (u ? 3 : 2);
    default: return 6 * e + (u ? 4 : 5);
    }
}

std::uint64_t omega_f_bound(std::uint64_t u)
{
    std::uint64_t const v = u + 1;
    return v % 6 <= 1 ? v : (v / 6 + 1) * 6;
}

std::uint64_t capped_pow2(std::uint64_t e)
{
    return e >= 62 ? std::uint64_t{1} << 62 : std::uint64_t{1} << e;
}

std::uint64_t omega_groups(std::uint64_t n)
{
    std::uint64_t const maxcode = n == 0 ? 0 : pair_code(n - 1, n - 1);
    return maxcode / 6 + 2;
}

namespace {

using StringPair = std::array<Bits, 2>;  // U, V
char const side_name[2] = {'U', 'V'};

enum class Phase { Initialized, Waiting, Done, Parked };

std::string phase_name(Phase p)
{
    switch (p) {
    case Phase::Initialized: return "initialized";
    case Phase::Waiting: return "waiting";
    case Phase::Parked: return "parked";
    default: return "done";
    }
}

struct Slot {
    char kind = 'F';
    int side = 0;  // F, P: the side named in the requirement; I: the witness side
    std::uint64_t e = 0;
};

Slot slot_of(std::uint64_t p)
{
    std::uint64_t const e = p / 6;
    switch (p % 6) {
    case 0: return {'F', 1, e};
    case 1: return {'F', 0, e};
    case 2: return {'P', 1, e};
    case 3: return {'P', 0, e};
    case 4: return {'I', 0, e};
    default: return {'I', 1, e};
    }
}

} // namespace

ConstructionResult run_omega_pair(OmegaConfig const& cfg)
{
    std::uint64_t const n = cfg.support;
    std::uint64_t const positions = 6 * omega_groups(n);
    std::array<std::vector<OracleMachine> const*, 2> const machines{&cfg.machines_u, &cfg.machines_v};

    ConstructionResult out;
    StageTrace& log = out.log;
    log.scenario = "omega-pair";
    log.notes.push_back("gamma of a cell starts at 2^e_R on its first change (capped at 2^62) "
                        "and drops by one on each later change");
    log.notes.push_back("restraint strings are least equivalence strings with diagonal bits set");

    std::array<TraceBuilder, 2> tb{TraceBuilder(Kind::Sigma, Notation::omega(), Domain::Relation, n),
                                   TraceBuilder(Kind::Sigma, Notation::omega(), Domain::Relation, n)};
    std::array<Partition, 2> rel{Partition(n), Partition(n)};
    std::vector<std::optional<StringPair>> own(positions);
    std::vector<Phase> phase(positions, Phase::Initialized);
    std::vector<std::uint64_t> witness(positions, 0);
    std::vector<std::size_t> seen_entries(positions, 0);
    std::uint64_t floor = 1;

    auto emit = [&](std::uint64_t stage, Requirement r, std::string action, json data) {
        log.events.push_back({stage, std::move(r), std::move(action), std::move(data)});
    };
    auto req_of = [&](std::uint64_t p) {
        Slot const s = slot_of(p);
        return req(std::string(1, s.kind), s.e, std::string(1, side_name[s.side]), p);
    };
    auto strings_json = [](StringPair const& r) {
        return json{{"r_U", to_string(r[0])}, {"r_V", to_string(r[1])}};
    };
    auto extend = [&](Bits const& base, std::map<std::uint64_t, bool> const& forced, std::uint64_t len) {
        auto s = least_extension(base, forced, len, n);
        if (!s) {
            throw std::logic_error("omega-pair: restraint has no equivalence extension");
        }
        return *s;
    };

    auto apply = [&](int side, Bits const& r) {
        Partition const next = string_relation(r, n);
        for (std::uint64_t y = 1; y < n; ++y) {
            for (std::uint64_t x = 0; x < y; ++x) {
                bool const v = next.related(x, y);
                if (v == rel[side].related(x, y)) {
                    continue;
                }
                std::uint64_t const c = cell_of(x, y);
                Notation g;
                if (tb[side].flips(c) == 0) {
                    g = Notation::fin(capped_pow2(omega_f_bound(c)));
                }
                else {
                    std::uint64_t const k = tb[side].gamma(c).finite_value().value_or(0);
                    g = Notation::fin(k == 0 ? 0 : k - 1);
                }
                tb[side].set(c, v, g);
            }
        }
        rel[side] = next;
    };

    struct PChoice {
        std::uint64_t a;
        std::uint64_t b;
        Bits sigma;
        auto key() const { return std::make_tuple(a, b, sigma.size(), std::cref(sigma)); }
    };

    // P^T: W^T_e with oracle T must not be an infinite transversal for the other side.
    auto p_choice = [&](std::uint64_t p, Slot const& s, StringPair const& rm,
                        std::vector<OracleMachine::Entry> const& entries) -> std::optional<PChoice> {
        int const t = s.side;
        int const o = 1 - t;
        Partition const other = string_relation(rm[o], n);
        std::vector<bool> blocked(n, false);
        for (std::uint64_t i = 0; i <= p && i < n; ++i) {
            for (std::uint64_t z : other.class_of(i)) {
                if (z < n) {
                    blocked[z] = true;
                }
            }
        }
        std::optional<PChoice> best;
        for (auto const& ea : entries) {
            for (auto const& eb : entries) {
                std::uint64_t const a = ea.element;
                std::uint64_t const b = eb.element;
                if (a >= b || b >= n || blocked[a] || blocked[b]) {
                    continue;
                }
                if (best && std::tie(a, b) > std::tie(best->a, best->b)) {
                    continue;
                }
                std::map<std::uint64_t, bool> forced(ea.query.begin(), ea.query.end());
                bool clash = false;
                for (auto const& [pos, bit] : eb.query) {
                    auto [it, fresh] = forced.emplace(pos, bit);
                    clash = clash || (!fresh && it->second != bit);
                }
                if (clash) {
                    continue;
                }
                auto sigma = least_extension(rm[t], forced, 0, n);
                if (!sigma || !least_extension(rm[o], {{pair_code(a, b), true}}, 0, n)) {
                    continue;
                }
                PChoice c{a, b, std::move(*sigma)};
                if (!best || c.key() < best->key()) {
                    best = std::move(c);
                }
            }
        }
        return best;
    };

    auto visible_entries = [&](Slot const& s, std::uint64_t stage) {
        std::vector<OracleMachine::Entry> out;
        if (s.e < machines[s.side]->size()) {
            for (auto const& en : (*machines[s.side])[s.e].entries) {
                if (en.stage <= stage) {
                    out.push_back(en);
                }
            }
        }
        return out;
    };

    if (cfg.stages > 0) {
        emit(0, stage_step(0), "installed", {{"relation", "U[0] = V[0] = Id"}});
        tb[0].checkpoint();
        tb[1].checkpoint();
    }

    for (std::uint64_t stage = 1; stage < cfg.stages; ++stage) {
        std::optional<std::uint64_t> actor;
        StringPair mine;
        for (std::uint64_t p = 0; p < positions && !actor; ++p) {
            Slot const s = slot_of(p);
            StringPair const rm = p == 0 ? StringPair{} : own[p - 1].value_or(StringPair{});
            Requirement const r = req_of(p);
            if (s.kind == 'F') {
                if (phase[p] != Phase::Initialized) {
                    continue;
                }
                mine = {extend(rm[0], {}, p), extend(rm[1], {}, p)};
                phase[p] = Phase::Done;
                emit(stage, r, "restrained", strings_json(mine));
                actor = p;
            }
            else if (s.kind == 'P') {
                if (phase[p] == Phase::Initialized) {
                    mine = rm;
                    phase[p] = Phase::Waiting;
                    seen_entries[p] = 0;
                    emit(stage, r, "waiting", strings_json(mine));
                    actor = p;
                    continue;
                }
                if (phase[p] != Phase::Waiting) {
                    continue;
                }
                // Readiness can only change when new entries show up.
                auto const vis = visible_entries(s, stage);
                if (vis.size() == seen_entries[p]) {
                    continue;
                }
                seen_entries[p] = vis.size();
                auto choice = p_choice(p, s, rm, vis);
                if (!choice) {
                    continue;
                }
                int const t = s.side;
                int const o = 1 - t;
                mine[t] = choice->sigma;
                mine[o] = extend(rm[o], {{pair_code(choice->a, choice->b), true}}, 0);
                floor = std::max(floor, choice->b + 1);
                phase[p] = Phase::Done;
                json d = strings_json(mine);
                d["a"] = choice->a;
                d["b"] = choice->b;
                d["relation"] = std::string(1, side_name[o]);
                emit(stage, r, "collapsed", d);
                actor = p;
            }
            else {
                int const w = s.side;  // witness side
                int const o = 1 - w;
                if (phase[p] == Phase::Initialized) {
                    std::uint64_t x = floor;
                    while (x < n && pair_code(x, 0) < rm[w].size()) {
                        ++x;
                    }
                    if (x >= n) {
                        mine = rm;
                        phase[p] = Phase::Parked;
                        emit(stage, r, "parked", {{"reason", "no fresh witness inside the support"}});
                    }
                    else {
                        witness[p] = x;
                        floor = x + 1;
                        mine = rm;
                        mine[w] = extend(rm[w], {{pair_code(0, x), false}}, 0);
                        phase[p] = Phase::Waiting;
                        json d = strings_json(mine);
                        d["x"] = x;
                        emit(stage, r, "appointed", d);
                    }
                    actor = p;
                    continue;
                }
                if (phase[p] != Phase::Waiting || s.e >= cfg.reductions.size()) {
                    continue;
                }
                auto const y = cfg.reductions[s.e].eval(witness[p], stage);
                if (!y) {
                    continue;
                }
                std::uint64_t const x = witness[p];
                floor = std::max(floor, *y + 1);
                bool const inside = *y == 0 || (*y < n && string_relation(rm[o], n).related(0, *y));
                json d;
                if (inside) {
                    mine = *own[p];
                    mine[o] = rm[o];
                }
                else {
                    mine[w] = extend(rm[w], {{pair_code(0, x), true}}, 0);
                    mine[o] = *y < n ? extend(rm[o], {{pair_code(0, *y), false}}, 0) : rm[o];
                }
                d = strings_json(mine);
                d["x"] = x;
                d["y"] = *y;
                d["collapsed"] = !inside;
                phase[p] = Phase::Done;
                emit(stage, r, "diagonalized", d);
                actor = p;
            }
        }

        if (!actor) {
            emit(stage, stage_step(stage), "idle", json::object());
        }
        else {
            own[*actor] = mine;
            std::vector<std::uint64_t> cleared;
            for (std::uint64_t q = *actor + 1; q < positions; ++q) {
                if (own[q] || phase[q] != Phase::Initialized) {
                    cleared.push_back(q);
                }
                own[q].reset();
                phase[q] = Phase::Initialized;
            }
            if (!cleared.empty()) {
                emit(stage, req_of(*actor), "initialized-others", {{"positions", cleared}});
            }
            apply(0, mine[0]);
            apply(1, mine[1]);
        }
        tb[0].checkpoint();
        tb[1].checkpoint();
    }

    json reqs = json::array();
    for (std::uint64_t p = 0; p < positions; ++p) {
        if (phase[p] == Phase::Initialized) {
            break;
        }
        Slot const s = slot_of(p);
        json j = {{"position", p}, {"kind", std::string(1, s.kind)}, {"index", s.e},
                  {"side", std::string(1, side_name[s.side])}, {"status", phase_name(phase[p])}};
        if (s.kind == 'I' && phase[p] != Phase::Parked) {
            j["witness"] = witness[p];
        }
        if (own[p]) {
            j.update(strings_json(*own[p]));
        }
        reqs.push_back(j);
    }
    log.final = {{"relations", {{"U", blocks_json(rel[0])}, {"V", blocks_json(rel[1])}}},
                 {"requirements", reqs}};
    out.traces.emplace("U", tb[0].build());
    out.traces.emplace("V", tb[1].build());
    return out;
}

} // namespace ershov
