#include "ershov/config.hpp"
#include "ershov/construction.hpp"
#include "ershov/json_io.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace ershov;
using nlohmann::json;

namespace {

Partition final_slice(ConstructionResult const& res, std::string const& name)
{
    ApproxTrace const& t = res.traces.at(name);
    return slice(t, t.budget());
}

std::vector<StageEvent> events_with(ConstructionResult const& res, std::string const& action)
{
    std::vector<StageEvent> out;
    for (auto const& e : res.log.events) {
        if (e.action == action) {
            out.push_back(e);
        }
    }
    return out;
}

ClockedMachine enumerates(std::vector<std::uint64_t> const& xs, std::uint64_t stage = 1)
{
    ClockedMachine m;
    for (auto x : xs) {
        m.entries[x] = {0, stage};
    }
    return m;
}

ApproxTrace set_trace(Kind kind, Notation level, std::uint64_t support, std::uint64_t budget,
                      std::vector<Change> changes = {})
{
    return ApproxTrace(kind, level, Domain::Set, support, budget, std::move(changes));
}

} // namespace

TEST(Dark, NothingToDoLeavesIdentity)
{
    DarkConfig cfg;
    cfg.support = 16;
    cfg.stages = 10;
    auto const res = run_dark(cfg);
    EXPECT_EQ(final_slice(res, "R"), id_rel(16));
    EXPECT_TRUE(validate(res.traces.at("R")).pass);
    EXPECT_EQ(res.log.scenario, "dark");
}

TEST(Dark, PiOpponentConstantOneIsBeatenByAppointment)
{
    DarkConfig cfg;
    cfg.support = 16;
    cfg.stages = 50;
    cfg.opponents = {set_trace(Kind::Pi, Notation::fin(2), 200, 50)};
    auto const res = run_dark(cfg);
    auto const& q = res.log.final["requirements"][0];
    ASSERT_EQ(q["kind"], "Q");
    ASSERT_TRUE(q.contains("witness"));
    std::uint64_t const x = q["witness"][0];
    std::uint64_t const y = q["witness"][1];
    EXPECT_EQ(x % 2, 0u);
    EXPECT_EQ(y % 2, 1u);
    EXPECT_FALSE(final_slice(res, "R").related(x, y));
    EXPECT_TRUE(events_with(res, "diagonalized").empty());
    auto const audit = audit_requirements(res.log, res.traces, cfg);
    EXPECT_TRUE(audit.pass) << to_json(audit).dump();
}

TEST(Dark, EvenPairInEnumerationIsCollapsed)
{
    DarkConfig cfg;
    cfg.support = 16;
    cfg.stages = 50;
    cfg.machines = {enumerates({4, 6})};
    auto const res = run_dark(cfg);
    EXPECT_TRUE(final_slice(res, "R").related(4, 6));
    auto const& p = res.log.final["requirements"][0];
    EXPECT_EQ(p["kind"], "P");
    EXPECT_TRUE(p["inactive"].get<bool>());
    auto const collapsed = events_with(res, "collapsed");
    ASSERT_EQ(collapsed.size(), 1u);
    EXPECT_EQ(collapsed[0].data["u"], 4);
    EXPECT_EQ(collapsed[0].data["v"], 6);
}

TEST(Dark, PiVariantNeedsLevelAboveOne)
{
    DarkConfig cfg;
    cfg.variant = Kind::Pi;
    cfg.level = Notation::fin(1);
    EXPECT_THROW(run_dark(cfg), PreconditionError);
    cfg.level = Notation::fin(2);
    cfg.stages = 30;
    auto const res = run_dark(cfg);
    auto const& r = res.traces.at("R");
    EXPECT_EQ(r.kind(), Kind::Pi);
    EXPECT_TRUE(validate(r).pass);
    auto const fin = final_slice(res, "R");
    for (std::uint64_t x = 0; x < cfg.support; ++x) {
        for (std::uint64_t y = x + 1; y < cfg.support; ++y) {
            EXPECT_EQ(fin.related(x, y), x % 2 == 0 && y == x + 1) << x << "," << y;
        }
    }
}

TEST(Dark, OpponentsMustBeDualKindAtSameLevel)
{
    DarkConfig cfg;
    cfg.opponents = {set_trace(Kind::Sigma, Notation::fin(2), 200, 50)};
    EXPECT_THROW(run_dark(cfg), PreconditionError);
}

TEST(Mutual, EmptyMachinesLeaveIdentity)
{
    MutualConfig cfg;
    cfg.support = 16;
    cfg.stages = 20;
    auto const res = run_mutually_dark(cfg);
    EXPECT_EQ(final_slice(res, "U"), id_rel(16));
    EXPECT_EQ(final_slice(res, "V"), id_rel(16));
}

TEST(Mutual, QueryFreeEntryCollapsesOnOtherSide)
{
    MutualConfig cfg;
    cfg.support = 16;
    cfg.stages = 80;
    OracleMachine m;
    m.entries.push_back({{}, 5, 1});
    m.entries.push_back({{}, 7, 1});
    cfg.machines_u = {m};
    auto const res = run_mutually_dark(cfg);
    EXPECT_TRUE(final_slice(res, "V").related(5, 7));
    EXPECT_EQ(final_slice(res, "U"), id_rel(16));
    for (auto const& e : events_with(res, "collapsed")) {
        if (e.requirement.kind == "P") {
            EXPECT_NE(e.data["relation"].get<std::string>(), e.requirement.side);
        }
    }
}

TEST(Mutual, PCollapsesNeverTouchTheirOwnSide)
{
    MutualConfig cfg;
    cfg.support = 48;
    cfg.stages = 300;
    cfg.opponents = opponent_family(5, 4, Kind::Pi, cfg.level, pair_code(47, 47), 150);
    cfg.machines_u = oracle_family(6, 4, 6, 48, 30, 2, 50);
    cfg.machines_v = oracle_family(7, 4, 6, 48, 30, 2, 50);
    auto const res = run_mutually_dark(cfg);
    std::size_t p_collapses = 0;
    for (auto const& e : events_with(res, "collapsed")) {
        if (e.requirement.kind == "P") {
            ++p_collapses;
            EXPECT_NE(e.data["relation"].get<std::string>(), e.requirement.side);
        }
    }
    EXPECT_GT(p_collapses, 0u);
    EXPECT_TRUE(validate(res.traces.at("U")).pass);
    EXPECT_TRUE(validate(res.traces.at("V")).pass);
    EXPECT_TRUE(audit_parity(res.log, res.traces).pass);
}

TEST(Minimal, CollapsesWhenOpponentSaysNo)
{
    MinimalConfig cfg;
    cfg.base = id_rel(8);
    cfg.stages = 2;
    std::uint64_t const cells = pair_code(6, 7) + 1;
    cfg.opponents = {set_trace(Kind::Sigma, Notation::fin(2), cells, 10)};
    auto res = run_finitely_minimal(cfg);
    EXPECT_TRUE(final_slice(res, "R").related(0, 1));
    EXPECT_TRUE(audit_minimal(res, cfg).pass);

    cfg.opponents = {set_trace(Kind::Sigma, Notation::fin(2), cells, 10,
                               {Change{cell_of(0, 1), 3, true, Notation::fin(1)}})};
    res = run_finitely_minimal(cfg);
    EXPECT_EQ(final_slice(res, "R"), id_rel(8));
    EXPECT_EQ(events_with(res, "scanned").size(), 1u);
    EXPECT_TRUE(audit_minimal(res, cfg).pass);
}

TEST(Minimal, ContainsBaseAndRejectsExhaustedStream)
{
    MinimalConfig cfg;
    cfg.base = Partition::from_blocks(8, {{0, 4}, {1}, {2, 6}, {3}, {5}, {7}});
    cfg.stages = 3;
    std::uint64_t const cells = pair_code(6, 7) + 1;
    cfg.opponents = {set_trace(Kind::Sigma, Notation::fin(1), cells, 5),
                     set_trace(Kind::Sigma, Notation::fin(1), cells, 5)};
    auto const res = run_finitely_minimal(cfg);
    auto const r = final_slice(res, "R");
    for (auto const& b : cfg.base.blocks()) {
        for (auto x : b) {
            EXPECT_TRUE(r.related(x, b.front()));
        }
    }
    EXPECT_TRUE(audit_minimal(res, cfg).pass);

    cfg.stages = 5;
    cfg.opponents.resize(4, cfg.opponents[0]);
    EXPECT_THROW(run_finitely_minimal(cfg), PreconditionError);
}

TEST(Inversion, NeverEnumeratingGivesPairedClasses)
{
    auto const x = set_trace(Kind::Sigma, Notation::fin(1), 3, 10);
    auto const res = build_inversion_counterexample(x, 12);
    EXPECT_EQ(final_slice(res, "R").blocks(),
              (std::vector<std::vector<std::uint64_t>>{{0, 2}, {1, 3}, {4, 6}, {5, 7}, {8, 10}, {9, 11}}));
    EXPECT_TRUE(audit_inversion(res).pass);
}

TEST(Inversion, EnumeratingZeroSwapsPartners)
{
    auto const x = set_trace(Kind::Sigma, Notation::fin(1), 2, 10, {Change{0, 5, true, Notation::fin(0)}});
    auto const res = build_inversion_counterexample(x, 8);
    auto const& r = res.traces.at("R");
    EXPECT_TRUE(validate(r).pass);
    EXPECT_EQ(r.level(), Notation::fin(2));
    EXPECT_EQ(final_slice(res, "R").blocks(),
              (std::vector<std::vector<std::uint64_t>>{{0, 3}, {1, 2}, {4, 6}, {5, 7}}));
    // (a,c) separated once, (a,d) merged once.
    EXPECT_EQ(mind_changes(r, cell_of(0, 2)), 2u);
    EXPECT_EQ(mind_changes(r, cell_of(0, 3)), 1u);
    FiniteMap const f = res.log.final["reduction"].get<FiniteMap>();
    EXPECT_EQ(f, (FiniteMap{0, 1, 4, 5}));
    EXPECT_TRUE(audit_inversion(res).pass);
}

TEST(Inversion, RejectsBadInput)
{
    auto const x = set_trace(Kind::Sigma, Notation::fin(1), 2, 10);
    EXPECT_THROW(build_inversion_counterexample(x, 6), std::invalid_argument);
    auto const two = set_trace(Kind::Sigma, Notation::fin(2), 2, 10);
    EXPECT_THROW(build_inversion_counterexample(two, 8), std::invalid_argument);
    auto const bad = set_trace(Kind::Sigma, Notation::fin(1), 2, 10,
                               {Change{0, 2, true, Notation::fin(0)}, Change{0, 3, false, Notation::fin(0)}});
    EXPECT_THROW(build_inversion_counterexample(bad, 8), std::invalid_argument);
}

TEST(Onto, DivergentMachineTakesOtherwiseBranch)
{
    OntoConfig cfg;
    cfg.r = ApproxTrace(Kind::Sigma, Notation::fin(1), Domain::Relation, 4, 1, {});
    cfg.q = id_rel(4);
    cfg.machines = {ClockedMachine{}};
    cfg.stages = 2;
    auto const res = run_onto_extension(cfg);
    auto const s = final_slice(res, "S");
    EXPECT_TRUE(s.related(0, 1));
    EXPECT_TRUE(audit_onto(res, cfg).pass);
}

TEST(Onto, RelatedImagesTakeOtherwiseBranch)
{
    OntoConfig cfg;
    cfg.r = ApproxTrace(Kind::Sigma, Notation::fin(1), Domain::Relation, 4, 1, {});
    cfg.q = id_rel(4);
    ClockedMachine m;
    for (std::uint64_t x = 0; x < 8; ++x) {
        m.entries[x] = {3, 1};
    }
    cfg.machines = {m};
    cfg.stages = 2;
    auto const res = run_onto_extension(cfg);
    EXPECT_TRUE(final_slice(res, "S").related(0, 1));
    auto const c = events_with(res, "collapsed");
    ASSERT_EQ(c.size(), 1u);
    EXPECT_FALSE(c[0].data["guard"].get<bool>());
}

TEST(Onto, EvenImagesHitEveryClass)
{
    OntoConfig cfg;
    cfg.r = ApproxTrace(Kind::Sigma, Notation::fin(1), Domain::Relation, 6, 2,
                        {Change{cell_of(1, 2), 1, true, Notation::fin(0)}});
    cfg.q = Partition::from_blocks(6, {{0, 3}, {1}, {2}, {4, 5}});
    ClockedMachine m;
    for (std::uint64_t x = 0; x < 12; ++x) {
        m.entries[x] = {x, 1};
    }
    cfg.machines = {m, m, m, m};
    cfg.stages = 5;
    auto const res = run_onto_extension(cfg);
    EXPECT_TRUE(audit_onto(res, cfg).pass) << to_json(audit_onto(res, cfg)).dump();
    EXPECT_EQ(res.log.final["processed_q_classes"], 4);
    auto const s = final_slice(res, "S");
    for (std::uint64_t y = 0; y < s.support(); ++y) {
        bool hit = false;
        for (std::uint64_t x = 0; x < 6; ++x) {
            hit = hit || s.related(2 * x, y);
        }
        EXPECT_TRUE(hit) << y;
    }
    cfg.stages = 6;
    cfg.machines.push_back(m);
    EXPECT_THROW(run_onto_extension(cfg), PreconditionError);
}

TEST(NoSup, DivergentMachineGivesOutcomeTwo)
{
    NoSupConfig cfg;
    cfg.r = id_rel(4);
    cfg.s = id_rel(4);
    cfg.t = id_rel(4);
    cfg.machines = {ClockedMachine{}};
    cfg.stages = 1;
    auto const res = run_no_sup(cfg);
    auto const scanned = events_with(res, "scanned");
    ASSERT_EQ(scanned.size(), 1u);
    EXPECT_EQ(scanned[0].data["outcome"], "2");
    EXPECT_EQ(final_slice(res, "U"), id_rel(8));
}

TEST(NoSup, DifferentParityImagesMerge)
{
    NoSupConfig cfg;
    cfg.r = id_rel(4);
    cfg.s = id_rel(4);
    cfg.t = id_rel(4);
    ClockedMachine m;
    m.entries[0] = {0, 1};
    m.entries[1] = {1, 1};
    cfg.machines = {m};
    cfg.stages = 1;
    auto const res = run_no_sup(cfg);
    auto const c = events_with(res, "collapsed");
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c[0].data["outcome"], "1b");
    EXPECT_TRUE(final_slice(res, "U").related(0, 1));
    EXPECT_EQ(res.log.final["Z"], json::parse("[0,1]"));
    EXPECT_TRUE(audit_no_sup(res.log, cfg.r, cfg.s, res.traces.at("U")).pass);
}

TEST(NoSup, OddStagesMergeFreshClassesOfOppositeParity)
{
    NoSupConfig cfg;
    cfg.r = id_n(2, 6);
    cfg.s = id_rel(6);
    cfg.t = id_rel(6);
    cfg.machines = machine_family(3, 10, 12, 0.8, 12, 5);
    cfg.stages = 20;
    auto const res = run_no_sup(cfg);
    auto const u = final_slice(res, "U");
    for (auto const& b : u.blocks()) {
        std::size_t evens = 0;
        for (auto x : b) {
            evens += x % 2 == 0;
        }
        // R is Id_2 on the evens, so an even class may hold several points
        // but P-steps never join two evens from different R-classes.
        for (auto x : b) {
            for (auto y : b) {
                if (x % 2 == 0 && y % 2 == 0) {
                    EXPECT_TRUE(cfg.r.related(x / 2, y / 2));
                }
            }
        }
        (void)evens;
    }
    EXPECT_TRUE(audit_no_sup(res.log, cfg.r, cfg.s, res.traces.at("U")).pass);
}

TEST(Omega, EmptyMachinesParkIAfterAppointment)
{
    OmegaConfig cfg;
    cfg.support = 16;
    cfg.stages = 60;
    auto const res = run_omega_pair(cfg);
    EXPECT_EQ(final_slice(res, "U"), id_rel(16));
    EXPECT_EQ(final_slice(res, "V"), id_rel(16));
    EXPECT_TRUE(events_with(res, "diagonalized").empty());
    EXPECT_FALSE(events_with(res, "appointed").empty());
    for (auto const& r : res.log.final["requirements"]) {
        if (r["kind"] == "I" && r.contains("witness")) {
            EXPECT_EQ(r["status"], "waiting") << r.dump();
        }
    }
    EXPECT_EQ(res.traces.at("U").level(), Notation::omega());
}

TEST(Omega, IdentityReductionIsDiagonalized)
{
    OmegaConfig cfg;
    cfg.support = 16;
    cfg.stages = 60;
    ClockedMachine id;
    for (std::uint64_t x = 0; x < 64; ++x) {
        id.entries[x] = {x, 3};
    }
    cfg.reductions = {id};
    auto const res = run_omega_pair(cfg);
    auto const diag = events_with(res, "diagonalized");
    ASSERT_FALSE(diag.empty());
    auto const& d = diag.front();
    EXPECT_EQ(d.requirement.kind, "I");
    EXPECT_EQ(d.requirement.index, 0u);
    std::uint64_t const x = d.data["x"];
    EXPECT_EQ(d.data["y"], x);
    EXPECT_TRUE(d.data["collapsed"].get<bool>());
    std::string const w = d.requirement.side;
    std::string const o = w == "U" ? "V" : "U";
    EXPECT_TRUE(final_slice(res, w).related(0, x));
    EXPECT_FALSE(final_slice(res, o).related(0, x));
    auto const audit = audit_requirements(res.log, res.traces, cfg);
    EXPECT_TRUE(audit.pass) << to_json(audit).dump();
    EXPECT_TRUE(audit_change_bound(res.log, res.traces).pass);
}

TEST(Omega, HelperFunctions)
{
    EXPECT_EQ(omega_position('F', 'V', 0), 0u);
    EXPECT_EQ(omega_position('F', 'U', 0), 1u);
    EXPECT_EQ(omega_position('I', 'V', 1), 11u);
    EXPECT_EQ(capped_pow2(3), 8u);
    EXPECT_EQ(capped_pow2(200), std::uint64_t{1} << 62);
    // e_R(u) is an F position and exceeds u.
    for (std::uint64_t u = 0; u < 200; ++u) {
        std::uint64_t const e = omega_f_bound(u);
        EXPECT_GT(e, u);
        EXPECT_LE(e % 6, 1u);
        for (std::uint64_t k = u + 1; k < e; ++k) {
            EXPECT_GT(k % 6, 1u);
        }
    }
}

TEST(Positions, AreInjective)
{
    std::set<std::uint64_t> dark;
    std::set<std::uint64_t> mutual;
    std::set<std::uint64_t> omega;
    for (std::uint64_t e = 0; e < 20; ++e) {
        for (char k : {'F', 'Q', 'P'}) {
            EXPECT_TRUE(dark.insert(dark_position(k, e)).second);
            for (char s : {'U', 'V'}) {
                EXPECT_TRUE(mutual.insert(mutual_position(k, s, e)).second);
            }
        }
        for (char k : {'F', 'P', 'I'}) {
            for (char s : {'U', 'V'}) {
                EXPECT_TRUE(omega.insert(omega_position(k, s, e)).second);
            }
        }
    }
}

TEST(Replay, EveryScenarioIsDeterministic)
{
    std::vector<json> configs = {
        json::parse(R"({"scenario":"dark","level":"3","support":24,"stages":200,
                        "opponents":{"generate":{"count":4}},"machines":{"generate":{"count":4}}})"),
        json::parse(R"({"scenario":"mutually-dark","level":"2","support":24,"stages":200,
                        "opponents":{"generate":{"count":3}},"machines_u":{"generate":{"count":3}},
                        "machines_v":{"generate":{"count":3}}})"),
        json::parse(R"({"scenario":"omega-pair","support":20,"stages":200,
                        "machines_u":{"generate":{"count":3}},"machines_v":{"generate":{"count":3}},
                        "reductions":{"generate":{"count":3}}})"),
    };
    for (auto const& j : configs) {
        auto const rc = parse_config(j);
        auto const a = run(rc);
        auto const b = run(rc);
        EXPECT_EQ(result_to_json(rc, a).dump(), result_to_json(rc, b).dump());
        auto const back = result_from_json(json::parse(result_to_json(rc, a).dump()));
        EXPECT_EQ(back.log, a.log);
        EXPECT_EQ(back.traces, a.traces);
    }
}
