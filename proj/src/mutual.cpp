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

std::uint64_t mutual_position(char kind, char side, std::uint64_t e)
{
    std::uint64_t const s = side == 'V' ? 1 : 0;
    switch (kind) {
    case 'F': return 6 * e + s;
    case 'Q': return 6 * e + 2 + s;
    default: return 6 * e + 4 + s;
    }
}

namespace {

using StringPair = std::array<Bits, 2>;
char const side_name[2] = {'U', 'V'};

} // namespace

ConstructionResult run_mutually_dark(MutualConfig const& cfg)
{
    check_dark_level(cfg.variant, cfg.level);
    check_dark_opponents(cfg.opponents, cfg.variant, cfg.level);

    std::uint64_t const n = cfg.support;
    std::uint64_t const n_q = cfg.opponents.size();
    std::array<std::vector<OracleMachine> const*, 2> const machines{&cfg.machines_u, &cfg.machines_v};
    std::uint64_t const groups =
        std::max({n_q, std::uint64_t{cfg.machines_u.size()}, std::uint64_t{cfg.machines_v.size()}});
    std::uint64_t const positions = 6 * groups;
    Notation const zero;
    Notation const one = Notation::fin(1);

    ConstructionResult out;
    StageTrace& log = out.log;
    log.scenario = "mutually-dark";
    log.notes.push_back(limit_note);
    log.notes.push_back("protection clause: i < e_R ranges over priority positions, both for "
                        "points and for the witnesses of Q-requirements on the collapsed side");
    log.notes.push_back("restraint strings are initial segments of the current characteristic "
                        "functions over ordered pair codes");

    std::array<TraceBuilder, 2> tb{TraceBuilder(cfg.variant, cfg.level, Domain::Relation, n),
                                   TraceBuilder(cfg.variant, cfg.level, Domain::Relation, n)};
    std::array<Partition, 2> rel{Partition(n), Partition(n)};
    std::array<std::vector<std::optional<Witness>>, 2> witness{
        std::vector<std::optional<Witness>>(n_q), std::vector<std::optional<Witness>>(n_q)};
    std::array<std::vector<bool>, 2> parked{std::vector<bool>(n_q, false), std::vector<bool>(n_q, false)};
    std::array<std::vector<bool>, 2> inactive{std::vector<bool>(groups, false),
                                              std::vector<bool>(groups, false)};
    std::vector<std::optional<StringPair>> own(positions);
    std::uint64_t floor = 0;

    auto emit = [&](std::uint64_t stage, Requirement r, std::string action, json data) {
        log.events.push_back({stage, std::move(r), std::move(action), std::move(data)});
    };

    if (cfg.stages > 0) {
        emit(0, stage_step(0), "installed", {{"relation", "U[0], V[0]"}});
        tb[0].checkpoint();
        tb[1].checkpoint();
    }
    if (cfg.stages > 1) {
        for (int side = 0; side < 2; ++side) {
            if (cfg.variant == Kind::Pi) {
                for (std::uint64_t y = 1; y < n; ++y) {
                    for (std::uint64_t x = 0; x < y; ++x) {
                        if (!(x % 2 == 0 && y == x + 1)) {
                            tb[side].set(cell_of(x, y), false, one);
                        }
                    }
                }
                for (std::uint64_t i = 0; 2 * i + 1 < n; ++i) {
                    rel[side].merge(2 * i, 2 * i + 1);
                }
            }
            tb[side].checkpoint();
        }
        emit(1, stage_step(1), "installed",
             {{"relation", cfg.variant == Kind::Pi ? "Id + {2i,2i+1}" : "Id"}});
    }

    auto r_minus = [&](std::uint64_t p) {
        StringPair cur;
        for (std::uint64_t q = 0; q < p; ++q) {
            if (own[q]) {
                cur = *own[q];
            }
        }
        return cur;
    };
    auto consistent = [&](StringPair const& r) {
        for (int side = 0; side < 2; ++side) {
            Bits const& str = r[side];
            std::uint64_t c = 0;
            for (std::uint64_t d = 0; c < str.size(); ++d) {
                for (std::uint64_t y = 0; y <= d && c < str.size(); ++y, ++c) {
                    if ((str[c] != 0) != rel[side].related(d - y, y)) {
                        return false;
                    }
                }
            }
        }
        return true;
    };

    auto find_witness = [&](int side, std::uint64_t e, std::uint64_t p, std::uint64_t stage,
                            Bits const& rm) -> std::optional<Witness> {
        auto const& opp = cfg.opponents[e];
        for (std::uint64_t i = (std::max(floor, p + 1) + 1) / 2; 2 * i + 1 < n; ++i) {
            Witness w{2 * i, 2 * i + 1};
            if (pair_code(w.y, w.x) < rm.size()) {
                continue;
            }
            bool const pristine_opp = opp.f(w.cell(), stage) == initial_value(opp.kind()) &&
                                      opp.gamma(w.cell(), stage) == cfg.level;
            bool const pristine_own = tb[side].f(w.cell()) == initial_value(cfg.variant) &&
                                      tb[side].gamma(w.cell()) == cfg.level;
            if (pristine_opp && pristine_own) {
                return w;
            }
        }
        return std::nullopt;
    };

    struct Choice {
        std::uint64_t sigma_len;
        std::uint64_t tau_len;
        std::uint64_t u;
        std::uint64_t v;
        auto key() const { return std::tie(sigma_len, tau_len, u, v); }
    };

    // P^S_e: W_e^S (oracle S) must not be a transversal for the other side O.
    auto p_choice = [&](int s, std::uint64_t e, std::uint64_t p, std::uint64_t stage,
                        StringPair const& rm) -> std::optional<Choice> {
        int const o = 1 - s;
        auto const& m = (*machines[s])[e];
        // Earliest sigma length at which each point is enumerated.
        std::map<std::uint64_t, std::uint64_t> len;
        for (auto const& entry : m.entries) {
            if (entry.stage > stage) {
                continue;
            }
            std::uint64_t need = rm[s].size();
            bool ok = true;
            for (auto const& [pos, bit] : entry.query) {
                auto const [a, b] = pair_decode(pos);
                ok = ok && rel[s].related(a, b) == bit;
                need = std::max(need, pos + 1);
            }
            if (!ok) {
                continue;
            }
            auto [it, fresh] = len.try_emplace(entry.element, need);
            if (!fresh) {
                it->second = std::min(it->second, need);
            }
        }

        std::vector<std::uint64_t> guarded;
        for (std::uint64_t i = 0; i < p && i < n; ++i) {
            guarded.push_back(i);
        }
        for (std::uint64_t j = 0; j < n_q; ++j) {
            if (mutual_position('Q', side_name[o], j) < p && witness[o][j]) {
                guarded.push_back(witness[o][j]->x);
                guarded.push_back(witness[o][j]->y);
            }
        }
        std::vector<bool> blocked(n, false);
        for (std::uint64_t g : guarded) {
            for (std::uint64_t m2 : rel[o].class_of(g)) {
                if (m2 < n) {
                    blocked[m2] = true;
                }
            }
        }

        std::optional<Choice> best;
        for (auto const& [u, lu] : len) {
            if (u >= n || blocked[u]) {
                continue;
            }
            for (auto it = len.upper_bound(u); it != len.end(); ++it) {
                std::uint64_t const v = it->first;
                if (v >= n || blocked[v] || u % 2 != v % 2) {
                    continue;
                }
                Choice c{std::max(lu, it->second), std::max<std::uint64_t>(rm[o].size(), pair_code(u, v) + 1), u, v};
                if (best && !(c.key() < best->key())) {
                    continue;
                }
                bool ok = true;
                if (!rel[o].related(u, v)) {
                    for (std::uint64_t cell : cross_cells(rel[o], u, v)) {
                        auto const [a, b] = pair_decode(cell);
                        bool const frozen = !tb[o].f(cell) && tb[o].gamma(cell).is_zero();
                        if (pair_code(b, a) < rm[o].size() || frozen) {
                            ok = false;
                            break;
                        }
                    }
                }
                if (ok) {
                    best = c;
                }
            }
        }
        return best;
    };

    auto p_satisfied = [&](int s, std::uint64_t e, std::uint64_t stage, StringPair const& rm) {
        int const o = 1 - s;
        auto const w = oracle_enumerate((*machines[s])[e], rm[s], stage);
        for (auto a = w.begin(); a != w.end(); ++a) {
            for (auto b = std::next(a); b != w.end(); ++b) {
                for (std::uint64_t c : {pair_code(*a, *b), pair_code(*b, *a)}) {
                    if (c < rm[o].size() && rm[o][c]) {
                        return true;
                    }
                }
            }
        }
        return false;
    };

    for (std::uint64_t stage = 2; stage < cfg.stages; ++stage) {
        std::optional<std::uint64_t> acted;
        for (std::uint64_t p = 0; p < positions && !acted; ++p) {
            std::uint64_t const e = p / 6;
            std::uint64_t const slot = p % 6;
            int const s = static_cast<int>(slot % 2);
            if (slot < 2) {
                continue;
            }
            StringPair const rm = r_minus(p);
            if (!consistent(rm)) {
                continue;
            }
            char const sn = side_name[s];
            if (slot < 4) {
                if (e >= n_q) {
                    continue;
                }
                Requirement const r = req("Q", e, std::string(1, sn), p);
                auto const& opp = cfg.opponents[e];
                auto& wit = witness[s][e];
                if (!wit) {
                    if (auto w = find_witness(s, e, p, stage, rm[s])) {
                        wit = w;
                        parked[s][e] = false;
                        floor = std::max(floor, w->y + 1);
                        StringPair mine = rm;
                        mine[s] = char_prefix(rel[s], std::max<std::uint64_t>(rm[s].size(), w->cell() + 1));
                        own[p] = mine;
                        emit(stage, r, "appointed", {{"x", w->x}, {"y", w->y}, {"cell", w->cell()},
                                                     {"r_U", to_string(mine[0])}, {"r_V", to_string(mine[1])}});
                        acted = p;
                    }
                    else if (!parked[s][e]) {
                        parked[s][e] = true;
                        emit(stage, r, "parked", {{"reason", "no fresh witness inside the support"}});
                    }
                }
                else if (tb[s].f(wit->cell()) == opp.f(wit->cell(), stage)) {
                    Witness const w = *wit;
                    bool const value = !opp.f(w.cell(), stage);
                    Notation const gamma = opp.gamma(w.cell(), stage);
                    for (std::uint64_t z : {w.x, w.y}) {
                        for (std::uint64_t m : rel[s].class_of(z)) {
                            if (m != w.x && m != w.y) {
                                throw std::logic_error("mutually-dark: witness class was modified");
                            }
                        }
                    }
                    tb[s].set(w.cell(), value, gamma);
                    if (value) {
                        rel[s].merge(w.x, w.y);
                    }
                    else {
                        rel[s].isolate(w.y);
                    }
                    StringPair mine = rm;
                    mine[s] = char_prefix(rel[s], std::max<std::uint64_t>(rm[s].size(), w.cell() + 1));
                    own[p] = mine;
                    emit(stage, r, "diagonalized",
                         {{"cell", w.cell()}, {"f", value}, {"gamma", gamma.to_string()},
                          {"opponent_f", !value}, {"r_U", to_string(mine[0])}, {"r_V", to_string(mine[1])}});
                    acted = p;
                }
                continue;
            }
            if (e >= machines[s]->size() || inactive[s][e] || p_satisfied(s, e, stage, rm)) {
                continue;
            }
            if (auto c = p_choice(s, e, p, stage, rm)) {
                int const o = 1 - s;
                Requirement const r = req("P", e, std::string(1, sn), p);
                std::vector<std::uint64_t> cells;
                if (!rel[o].related(c->u, c->v)) {
                    cells = collapse_into(tb[o], rel[o], c->u, c->v, zero);
                    floor = std::max(floor, class_max(rel[o], c->u) + 1);
                }
                StringPair mine;
                mine[s] = char_prefix(rel[s], c->sigma_len);
                mine[o] = char_prefix(rel[o], c->tau_len);
                own[p] = mine;
                inactive[s][e] = true;
                emit(stage, r, "collapsed",
                     {{"u", c->u}, {"v", c->v}, {"relation", std::string(1, side_name[o])}, {"cells", cells},
                      {"sigma", to_string(mine[s])}, {"tau", to_string(mine[o])}});
                acted = p;
            }
        }

        if (!acted) {
            emit(stage, stage_step(stage), "idle", json::object());
        }
        else {
            std::vector<std::uint64_t> cleared;
            for (std::uint64_t q = *acted + 1; q < positions; ++q) {
                bool had = own[q].has_value();
                own[q].reset();
                std::uint64_t const e = q / 6;
                std::uint64_t const slot = q % 6;
                int const s = static_cast<int>(slot % 2);
                if (slot >= 2 && slot < 4 && e < n_q && witness[s][e]) {
                    witness[s][e].reset();
                    had = true;
                }
                if (slot >= 4 && e < groups && inactive[s][e]) {
                    inactive[s][e] = false;
                    had = true;
                }
                if (had) {
                    cleared.push_back(q);
                }
            }
            if (!cleared.empty()) {
                Requirement r = log.events.back().requirement;
                emit(stage, r, "initialized-others", {{"positions", cleared}});
            }
        }
        tb[0].checkpoint();
        tb[1].checkpoint();
    }

    json reqs = json::array();
    for (std::uint64_t p = 0; p < positions; ++p) {
        std::uint64_t const e = p / 6;
        std::uint64_t const slot = p % 6;
        int const s = static_cast<int>(slot % 2);
        std::string const sn(1, side_name[s]);
        json j = {{"position", p}, {"index", e}, {"side", sn}};
        if (slot < 2) {
            j["kind"] = "F";
        }
        else if (slot < 4) {
            if (e >= n_q) {
                continue;
            }
            j["kind"] = "Q";
            if (witness[s][e]) {
                j["witness"] = {witness[s][e]->x, witness[s][e]->y};
            }
            j["parked"] = parked[s][e] && !witness[s][e];
        }
        else {
            if (e >= machines[s]->size()) {
                continue;
            }
            j["kind"] = "P";
            j["inactive"] = static_cast<bool>(inactive[s][e]);
        }
        if (own[p]) {
            j["r_U"] = to_string((*own[p])[0]);
            j["r_V"] = to_string((*own[p])[1]);
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
