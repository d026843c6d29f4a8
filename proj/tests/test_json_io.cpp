#include "ershov/json_io.hpp"

#include <gtest/gtest.h>

using namespace ershov;
using nlohmann::json;

TEST(JsonIo, NotationRoundTrip)
{
    for (auto const& a : {Notation(), Notation::fin(3), Notation::omega(),
                          Notation({Term{2, 3}, Term{0, 1}})}) {
        EXPECT_EQ(notation_from_json(to_json(a)), a);
    }
    EXPECT_EQ(notation_from_json(json(5)), Notation::fin(5));
    EXPECT_THROW(notation_from_json(json::array()), std::invalid_argument);
}

TEST(JsonIo, KindAndDomain)
{
    EXPECT_EQ(kind_from_string("Sigma"), Kind::Sigma);
    EXPECT_EQ(kind_from_string("pi"), Kind::Pi);
    EXPECT_EQ(domain_from_string(to_string(Domain::Relation)), Domain::Relation);
    EXPECT_THROW(kind_from_string("delta"), std::invalid_argument);
    EXPECT_THROW(domain_from_string("graph"), std::invalid_argument);
}

TEST(JsonIo, PartitionRoundTrip)
{
    auto const p = Partition::from_blocks(5, {{0, 3}, {1}, {2, 4}});
    json const j = to_json(p);
    EXPECT_EQ(j["support"], 5);
    EXPECT_EQ(j["blocks"], json::parse("[[0,3],[2,4]]"));
    EXPECT_EQ(partition_from_json(j), p);
    EXPECT_EQ(partition_from_json(json::parse(R"({"support":4,"mod":2})")),
              Partition::from_blocks(4, {{0, 2}, {1, 3}}));
    EXPECT_EQ(partition_from_json(json::parse(R"({"support":3})")), Partition(3));
    EXPECT_THROW(partition_from_json(json::parse(R"({"support":3,"blocks":[[0,5]]})")),
                 std::invalid_argument);
    EXPECT_THROW(partition_from_json(json::parse(R"({"blocks":[]})")), std::invalid_argument);
    EXPECT_THROW(partition_from_json(json::parse(R"({"support":3,"mod":0})")), std::invalid_argument);
}

TEST(JsonIo, TraceRoundTripIsLossless)
{
    ApproxTrace const t(Kind::Pi, Notation::omega(), Domain::Relation, 6, 9,
                        {Change{cell_of(0, 1), 2, false, Notation::fin(4)},
                         Change{cell_of(2, 5), 5, false, Notation::fin(1)},
                         Change{cell_of(0, 1), 7, true, Notation::fin(0)}},
                        {1, 5, 9});
    json const j = to_json(t);
    EXPECT_EQ(trace_from_json(j), t);
    EXPECT_EQ(to_json(trace_from_json(json::parse(j.dump()))).dump(), j.dump());

    for (auto const& opp : opponent_family(3, 5, Kind::Sigma, Notation::fin(5), 30, 300)) {
        EXPECT_EQ(trace_from_json(json::parse(to_json(opp).dump())), opp);
    }
}

TEST(JsonIo, TraceRejectsMalformedInput)
{
    EXPECT_THROW(trace_from_json(json::parse(R"({"kind":"Sigma"})")), std::invalid_argument);
    EXPECT_THROW(trace_from_json(json::parse(
                     R"({"kind":"Sigma","level":"1","domain":"set","support":2,"budget":2,"changes":[[0,1]]})")),
                 std::invalid_argument);
}

TEST(JsonIo, MachinesRoundTrip)
{
    ClockedMachine m;
    m.entries[4] = {1, 3};
    m.entries[0] = {9, 1};
    EXPECT_EQ(machine_from_json(to_json(m)), m);
    for (auto const& cm : machine_family(2, 4, 10, 0.4, 6, 20)) {
        EXPECT_EQ(machine_from_json(json::parse(to_json(cm).dump())), cm);
    }
    for (auto const& om : oracle_family(2, 4, 5, 8, 12, 3, 20)) {
        EXPECT_EQ(oracle_machine_from_json(json::parse(to_json(om).dump())), om);
    }
    EXPECT_THROW(machine_from_json(json::parse(R"({"entries":[[1,2]]})")), std::invalid_argument);
    EXPECT_THROW(oracle_machine_from_json(json::parse(R"({"entries":[{"stage":1}]})")),
                 std::invalid_argument);
}
